"""Verification suites run by ``countqm verify``.

Each suite returns a list of :class:`Record`; suites never stop at the first
failure, so a report carries every witness.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field

from .families import (
    AmalgamFamilyParams,
    amalgam_family_symbols,
    commutator_certificate_check,
    consecutive_run_bound,
    cover_refute,
    family_separation_check,
    family_symbols,
    family_word,
    hnn_family_symbols,
    invert_symbols,
    symbol_pattern,
    wi_minus,
    wi_plus,
)
from .hnn import T_NEG, T_POS, HLetter, check_condition_I_II, t_pattern
from .quasimorphism import (
    DEFECT_BOUND,
    CountingQuasimorphism,
    DefectBoundExceeded,
    Exhaustive,
    RandomPairs,
    WordBall,
    ball_elements,
    defect_scan,
    random_reduced_word,
)


@dataclass
class Record:
    check: str
    anchor: str
    instance: str
    params: dict
    expected: object
    actual: object
    passed: bool
    witness: str = ""


@dataclass
class SuiteReport:
    records: list = field(default_factory=list)
    elapsed: float = 0.0
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list:
        return [r for r in self.records if not r.passed]

    def sorted(self) -> "SuiteReport":
        key = lambda r: (r.instance, r.check, json.dumps(r.params, sort_keys=True))  # noqa: E731
        return SuiteReport(sorted(self.records, key=key), self.elapsed, self.seed)

    def to_json(self, include_timing: bool = False) -> str:
        doc = {
            "passed": self.passed,
            "seed": self.seed,
            "records": [asdict(r) for r in self.records],
        }
        if include_timing:
            doc["elapsed"] = round(self.elapsed, 3)
        return json.dumps(doc, indent=2, default=str)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["check", "anchor", "instance", "params", "expected", "actual", "passed", "witness"])
        for r in self.records:
            wr.writerow([r.check, r.anchor, r.instance, json.dumps(r.params, sort_keys=True),
                         r.expected, r.actual, "pass" if r.passed else "FAIL", r.witness])
        return buf.getvalue()


def _rec(inst, check, anchor, params, expected, actual, witness="", passed=None) -> Record:
    ok = (expected == actual) if passed is None else passed
    return Record(check, anchor, inst.name, params, expected, actual, bool(ok), "" if ok else witness)


def _fmt(model, w) -> str:
    return model.format_word(getattr(w, "word", w))


# -- shared helpers


def short_pattern(inst):
    """A length-2 pattern with nontrivial counts on random words."""
    p = inst.family
    if isinstance(p, AmalgamFamilyParams):
        from .families import realize_amalgam

        return realize_amalgam(p, "1b")
    return (T_POS, HLetter("a", p.g))


def structured_word(inst, rng: random.Random, pieces: int = 4, junk: int = 4) -> tuple:
    """Random product of w_0^(+-1) and short reduced words, so counts are nonzero."""
    model = inst.model
    w0 = family_word(inst.family, 0)
    w0i = model.inverse_word(w0)
    out: tuple = ()
    for _ in range(rng.randint(1, pieces)):
        r = rng.random()
        if r < 0.4:
            out += w0
        elif r < 0.55:
            out += w0i
        else:
            out += random_reduced_word(model, rng.randint(0, junk), rng)
    return out


# -- amalgam suites


def suite_lemma31(inst, opts) -> list:
    model = inst.model
    r = opts["radius"]
    bad = []
    n = 0
    for k in range(r + 1):
        for w in itertools.product(model.letters(), repeat=k):
            n += 1
            if model.is_reduced(w) != (len(w) == model.geodesic_length(model.element(w))):
                bad.append(w)
    return [_rec(inst, "lemma31", "reduced iff geodesic", {"radius": r, "words": n},
                 0, len(bad), _fmt(model, bad[0]) if bad else "")]


def suite_oracle(inst, opts) -> list:
    """Gauge-orbit c_w against the brute-force definition."""
    model = inst.model
    r = opts["oracle_radius"]
    patterns = []
    for k in (2, 3, 4):
        for w in itertools.product(model.letters(), repeat=k):
            if model.is_reduced(w + w):
                patterns.append(w)
    elems = ball_elements(model, r)
    need = max((r * len(w)) // (len(w) - 1) for w in patterns) if patterns else 0
    ball = WordBall(model, need)
    bad, checked = [], 0
    for w in patterns:
        qm = CountingQuasimorphism(model, w)
        for g in elems:
            limit = (model.geodesic_length(g) * len(w)) // (len(w) - 1)
            if limit > ball.radius:
                continue
            checked += 1
            if qm.c(g) != ball.c(g, w):
                bad.append((w, g))
    wit = f"w={_fmt(model, bad[0][0])} g={_fmt(model, bad[0][1])}" if bad else ""
    return [_rec(inst, "oracle", "c_w by gauge DP equals its definition",
                 {"radius": r, "patterns": len(patterns), "cases": checked}, 0, len(bad), wit)]


def _patterns(inst):
    return [("short", short_pattern(inst)), ("w0", family_word(inst.family, 0))]


def suite_lipschitz(inst, opts) -> list:
    model = inst.model
    rng = random.Random(opts["seed"])
    recs = []
    for pid, w in _patterns(inst):
        qm = CountingQuasimorphism(model, w)
        worst_c = worst_h = 0
        wit = ""
        for _ in range(opts["lipschitz_samples"]):
            g = model.element(structured_word(inst, rng))
            if rng.random() < 0.5:
                s = model.element(random_reduced_word(model, rng.randint(0, 3), rng))
                g2 = model.mul(g, s)
            else:
                g2 = model.element(structured_word(inst, rng))
            d = model.geodesic_length(model.mul(model.inv(g), g2))
            vc = abs(qm.c(g) - qm.c(g2)) - 2 * d
            vh = abs(qm.h(g) - qm.h(g2)) - 4 * d
            if vc > worst_c or vh > worst_h:
                wit = f"g={_fmt(model, g)} g'={_fmt(model, g2)}"
            worst_c, worst_h = max(worst_c, vc), max(worst_h, vh)
        params = {"pattern": pid, "samples": opts["lipschitz_samples"], "seed": opts["seed"]}
        recs.append(_rec(inst, "lipschitz-c", "|c(g)-c(g')| <= 2 d(g,g')", params,
                         "<= 0", worst_c, wit, passed=worst_c <= 0))
        recs.append(_rec(inst, "lipschitz-h", "|h(g)-h(g')| <= 4 d(g,g')", params,
                         "<= 0", worst_h, wit, passed=worst_h <= 0))
    return recs


def suite_symmetry(inst, opts) -> list:
    model = inst.model
    recs = []
    rng = random.Random(opts["seed"])
    elems = ball_elements(model, min(opts["radius"], 3))
    elems += [model.element(structured_word(inst, rng)) for _ in range(100)]
    for pid, w in _patterns(inst):
        qm = CountingQuasimorphism(model, w)
        bad = [g for g in elems
               if qm.value(g).c_plus != qm.value(model.inv(g)).c_minus or qm.h(g) != -qm.h(model.inv(g))]
        recs.append(_rec(inst, "inversion", "c_w(g) = c_{w^-1}(g^-1), h_w(g^-1) = -h_w(g)",
                         {"pattern": pid, "elements": len(elems)}, 0, len(bad),
                         _fmt(model, bad[0]) if bad else ""))
    return recs


def suite_splitting(inst, opts) -> list:
    model = inst.model
    rng = random.Random(opts["seed"] + 1)
    recs = []
    for pid, w in _patterns(inst):
        qm = CountingQuasimorphism(model, w)
        worst, wit = 0, ""
        for _ in range(opts["lipschitz_samples"]):
            alpha = model.element(structured_word(inst, rng)).word
            k = rng.randint(0, len(alpha))
            v = abs(qm.h(alpha) - qm.h(alpha[:k]) - qm.h(alpha[k:]))
            if v > worst:
                worst, wit = v, f"alpha={_fmt(model, alpha)} split={k}"
        recs.append(_rec(inst, "splitting", "|h(a1 a2) - h(a1) - h(a2)| <= 10 for reduced a1 a2",
                         {"pattern": pid, "samples": opts["lipschitz_samples"], "seed": opts["seed"] + 1},
                         "<= 10", worst, wit, passed=worst <= 10))
    return recs


def suite_defect(inst, opts) -> list:
    model = inst.model
    w0 = family_word(inst.family, 0)
    qm = CountingQuasimorphism(model, w0)
    recs = []
    strategies = [Exhaustive(opts["defect_radius"])]
    if opts["samples"]:
        strategies.append(RandomPairs(opts["samples"], opts["max_len"], opts["seed"]))
    for strat in strategies:
        try:
            rep = defect_scan(model, qm, strat, "w0")
            recs.append(_rec(inst, "defect", f"|delta h_w| <= {DEFECT_BOUND}",
                             {"strategy": strat.describe()}, f"<= {DEFECT_BOUND}",
                             rep.observed_max, passed=rep.passed))
        except DefectBoundExceeded as exc:
            recs.append(_rec(inst, "defect", f"|delta h_w| <= {DEFECT_BOUND}",
                             {"strategy": strat.describe()}, f"<= {DEFECT_BOUND}", str(exc),
                             witness=str(exc), passed=False))
    # structured pairs built from family words exercise large h values
    rng = random.Random(opts["seed"] + 2)
    worst = 0
    for _ in range(200):
        x = model.element(structured_word(inst, rng))
        y = model.element(structured_word(inst, rng))
        worst = max(worst, abs(qm.delta(x, y)))
    recs.append(_rec(inst, "defect", f"|delta h_w| <= {DEFECT_BOUND}",
                     {"strategy": "structured(200)", "seed": opts["seed"] + 2},
                     f"<= {DEFECT_BOUND}", worst, passed=worst <= DEFECT_BOUND))
    return recs


def suite_lemma41(inst, opts) -> list:
    model, p = inst.model, inst.family
    recs = []
    for i in range(opts["max_index"] + 1):
        w = family_word(p, i)
        recs.append(_rec(inst, "lemma41", "|w_i| = 40 * 10^i", {"i": i}, 40 * 10**i, len(w)))
        recs.append(_rec(inst, "lemma41", "|w_i(1,+-)| = 8 * 10^i", {"i": i},
                         [8 * 10**i] * 2, [len(wi_plus(p, i)), len(wi_minus(p, i))]))
        for n in range(1, opts["max_n"] + 1):
            recs.append(_rec(inst, "lemma41", "w_i^n is reduced", {"i": i, "n": n},
                             True, model.is_reduced(w * n)))
    return recs


def suite_cover(inst, opts) -> list:
    recs = []
    for i in range(opts["max_index"] + 1):
        W = symbol_pattern(amalgam_family_symbols(i))
        Winv = symbol_pattern(invert_symbols(amalgam_family_symbols(i)))
        rep = cover_refute(W * 2, Winv)
        recs.append(_rec(inst, "lemma42", "w_i^2 cannot cover w_i^-1",
                         {"i": i, "offsets": len(rep.verdicts)}, "cannot cover", rep.verdict,
                         f"unrefuted offsets {rep.unrefuted()[:5]}"))
        recs.append(_rec(inst, "lemma42", "offset count 20*10^i + 1", {"i": i},
                         20 * 10**i + 1, len(rep.verdicts)))
    return recs


def _c_checks(inst, opts, check: str, use_h: bool) -> list:
    model, p = inst.model, inst.family
    recs = []
    hmax = min(opts["h_max_index"], opts["max_index"])
    qms = {}

    def qm(j):
        if j not in qms:
            qms[j] = CountingQuasimorphism(model, family_word(p, j))
        return qms[j]

    for i in range(hmax + 1):
        wi = family_word(p, i)
        for n in range(1, opts["max_n"] + 1):
            v = qm(i).value(wi * n)
            if use_h:
                recs.append(_rec(inst, check, "h_{w_i}(w_i^n) = n", {"i": i, "n": n}, n, v.h))
            else:
                recs.append(_rec(inst, check, "c_{w_i}(w_i^n) = n", {"i": i, "n": n}, n, v.c_plus))
                recs.append(_rec(inst, check, "c_{w_i^-1}(w_i^n) = 0", {"i": i, "n": n}, 0, v.c_minus))
            for j in range(i + 1, opts["max_index"] + 1):
                u = qm(j).value(wi * n)
                if use_h:
                    recs.append(_rec(inst, check, "h_{w_j}(w_i^n) = 0", {"i": i, "j": j, "n": n}, 0, u.h))
                else:
                    recs.append(_rec(inst, check, "c_{w_j}(w_i^n) = c_{w_j^-1}(w_i^n) = 0",
                                     {"i": i, "j": j, "n": n}, [0, 0], [u.c_plus, u.c_minus]))
    return recs


def suite_lemma43(inst, opts) -> list:
    return _c_checks(inst, opts, "lemma43", use_h=False)


def suite_prop2(inst, opts) -> list:
    return _c_checks(inst, opts, "prop2", use_h=True)


def suite_abelian(inst, opts) -> list:
    model, p = inst.model, inst.family
    ab = model.abelianization()
    recs = [_rec(inst, "abelian", "abelianization invariants", {}, "computed",
                 str(ab.invariants), passed=True)]
    for i in range(opts["max_index"] + 1):
        w = family_word(p, i)
        recs.append(_rec(inst, "abelian", "w_i lies in [G,G]", {"i": i}, True, ab.in_commutator(w)))
        recs.append(_rec(inst, "abelian", "commutator certificate", {"i": i}, True,
                         commutator_certificate_check(p, i)))
    return recs


# -- HNN suites


def suite_britton(inst, opts) -> list:
    model = inst.model
    rng = random.Random(opts["seed"])
    bad, n = [], opts["britton_samples"]
    made = 0
    while made < n:
        w = random_reduced_word(model, rng.randint(1, opts["max_len"]), rng)
        if not any(k == "t" for k, _ in w):
            continue
        made += 1
        if model.equals(w, ()):
            bad.append(w)
    return [_rec(inst, "lemma61", "reduced words with a stable letter are nontrivial",
                 {"samples": n, "seed": opts["seed"]}, 0, len(bad), _fmt(model, bad[0]) if bad else "")]


def suite_alignment(inst, opts) -> list:
    model = inst.model
    r = 5
    groups: dict = {}
    for k in range(r + 1):
        for w in itertools.product(model.letters(), repeat=k):
            if model.is_reduced(w):
                groups.setdefault(model.element(w), []).append(w)
    bad = []
    for words in groups.values():
        pats = {t_pattern(w) for w in words}
        if len(pats) > 1:
            bad.append(words)
    return [_rec(inst, "lemma62", "equal reduced words share their t-pattern",
                 {"max_len": r, "elements": len(groups)}, 0, len(bad),
                 " vs ".join(_fmt(model, w) for w in bad[0][:2]) if bad else "")]


def suite_geodesic(inst, opts) -> list:
    """Orbit DP length against breadth-first distance in the Cayley graph."""
    model = inst.model
    r = opts["radius"]
    dist = {model.identity: 0}
    frontier = [model.identity]
    gens = [model.element((x,)) for x in model.letters()]
    for k in range(1, r + 1):
        nxt = []
        for g in frontier:
            for s in gens:
                h = model.mul(g, s)
                if h not in dist:
                    dist[h] = k
                    nxt.append(h)
        frontier = nxt
    bad = [g for g, d in dist.items() if model.geodesic_length(g) != d]
    return [_rec(inst, "geodesic", "orbit length equals Cayley-graph distance",
                 {"radius": r, "elements": len(dist)}, 0, len(bad), _fmt(model, bad[0]) if bad else "")]


def condition_words(model, max_syllables: int = 4, max_exp: int = 2):
    """Every Condition I / II word with the given syllable and exponent caps."""
    A = model.A
    after_pos = [a for a in range(1, A.order) if not model.in_C(a)]
    after_neg = [a for a in range(1, A.order) if not model.in_phiC(a)]
    for n_syl in range(1, max_syllables + 1):
        for first in (1, -1):
            signs = [first if k % 2 == 0 else -first for k in range(n_syl)]
            letter_sets = [after_pos if s > 0 else after_neg for s in signs]
            for exps in itertools.product(range(1, max_exp + 1), repeat=n_syl):
                for letters in itertools.product(*letter_sets):
                    w: tuple = ()
                    for s, e, a in zip(signs, exps, letters):
                        w += (T_POS if s > 0 else T_NEG,) * e + (HLetter("a", a),)
                    yield w


def suite_lemma71(inst, opts) -> list:
    model = inst.model
    bad, n, cond_bad = [], 0, []
    for w in condition_words(model):
        n += 1
        if check_condition_I_II(model, w) == "neither":
            cond_bad.append(w)
        if model.geodesic_length(model.element(w)) != len(w):
            bad.append(w)
    return [
        _rec(inst, "lemma71", "Condition I/II words are geodesics",
             {"max_syllables": 4, "max_exp": 2, "words": n}, 0, len(bad),
             _fmt(model, bad[0]) if bad else ""),
        _rec(inst, "lemma71", "generated words pass the condition checker",
             {"words": n}, 0, len(cond_bad), _fmt(model, cond_bad[0]) if cond_bad else ""),
    ]


def suite_lemma72(inst, opts) -> list:
    model, p = inst.model, inst.family
    recs = _c_checks(inst, opts, "lemma72", use_h=False)
    W0 = symbol_pattern(hnn_family_symbols(0))
    recs.append(_rec(inst, "lemma72", "t-pattern of w_0", {}, "+-+-++--+++---", t_pattern(family_word(p, 0))))
    recs.append(_rec(inst, "lemma72", "symbolic and realized t-patterns agree", {}, W0,
                     t_pattern(family_word(p, 0))))
    for i in range(opts["max_index"] + 1):
        Wi = symbol_pattern(family_symbols(p, i))
        recs.append(_rec(inst, "lemma72", "longest stable run of W_i is 3*10^i", {"i": i},
                         3 * 10**i, consecutive_run_bound(Wi)))
        for n in range(1, opts["max_n"] + 1):
            recs.append(_rec(inst, "lemma72", "w_i^n satisfies Condition I", {"i": i, "n": n},
                             "I", check_condition_I_II(model, family_word(p, i) * n)))
        for j in range(i + 1, opts["max_index"] + 1):
            recs.append(_rec(inst, "lemma72", "W_j is not a subword of W_i^n", {"i": i, "j": j},
                             True, family_separation_check(i, j, opts["max_n"])))
        recs.append(_rec(inst, "lemma72", "w_i equals its commutator product", {"i": i},
                         True, commutator_certificate_check(p, i)))
    return recs


def suite_prop4(inst, opts) -> list:
    return _c_checks(inst, opts, "prop4", use_h=True)


AMALGAM_SUITES = {
    "lemma31": suite_lemma31,
    "oracle": suite_oracle,
    "lemma33": suite_lipschitz,
    "lemma35": suite_symmetry,
    "lemma37": suite_splitting,
    "prop1": suite_defect,
    "lemma41": suite_lemma41,
    "lemma42": suite_cover,
    "lemma43": suite_lemma43,
    "prop2": suite_prop2,
    "abelian": suite_abelian,
}

HNN_SUITES = {
    "lemma61": suite_britton,
    "lemma62": suite_alignment,
    "geodesic": suite_geodesic,
    "oracle": suite_oracle,
    "lemma65": suite_lipschitz,
    "lemma66": suite_splitting,
    "inversion": suite_symmetry,
    "prop3": suite_defect,
    "lemma71": suite_lemma71,
    "lemma72": suite_lemma72,
    "prop4": suite_prop4,
    "abelian": suite_abelian,
}


def suites_for(kind: str) -> dict:
    return AMALGAM_SUITES if kind == "amalgam" else HNN_SUITES


def run_suites(inst, names=None, overrides: dict | None = None) -> SuiteReport:
    table = suites_for(inst.kind)
    names = list(table) if not names or names == ["all"] else names
    unknown = [n for n in names if n not in table]
    if unknown:
        raise KeyError(f"unknown suite(s) {unknown} for {inst.kind}; choose from {sorted(table)}")
    opts = {**inst.caps, **{k: v for k, v in (overrides or {}).items() if v is not None}}
    t0 = time.perf_counter()
    report = SuiteReport(seed=opts["seed"])
    for name in names:
        report.records.extend(table[name](inst, opts))
    report.elapsed = time.perf_counter() - t0
    return report.sorted()
