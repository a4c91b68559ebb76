"""The twelve acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed in the terminal
summary (see ``conftest.py``) and also to stdout when run with ``-s``.
"""

import itertools
import random
import time

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from countqm.families import cover_refute, family_word, amalgam_family_symbols, invert_symbols, symbol_pattern
from countqm.hnn import T_NEG, T_POS, HLetter, check_condition_I_II
from countqm.instances import load_instance
from countqm.quasimorphism import (
    CountingQuasimorphism,
    Exhaustive,
    RandomPairs,
    WordBall,
    ball_elements,
    defect_scan,
    random_reduced_word,
)
from countqm.suites import suite_lipschitz, suite_splitting

RESULTS: dict[int, str] = {}


def verdict(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def insts():
    return {name: load_instance(name) for name in ("psl2z", "sl2z", "klein-hnn")}


def h_table(inst, pairs_diag, pairs_cross):
    """Return (diagonal mismatches, cross mismatches) for h values on family powers."""
    qms = {}

    def qm(j):
        if j not in qms:
            qms[j] = CountingQuasimorphism(inst.model, family_word(inst.family, j))
        return qms[j]

    bad_diag = [(i, n, v) for i, n in pairs_diag
                if (v := qm(i).h(family_word(inst.family, i) * n)) != n]
    bad_cross = [(i, j, n, v) for i, j, n in pairs_cross
                 if (v := qm(j).h(family_word(inst.family, i) * n)) != 0]
    return bad_diag, bad_cross


def _prop2(inst):
    t0 = time.perf_counter()
    diag = [(i, n) for i in (0, 1) for n in range(1, 5)]
    cross = [(i, j, n) for j in range(3) for i in range(j) for n in (1, 2)]
    bd, bc = h_table(inst, diag, cross)
    dt = time.perf_counter() - t0
    return not bd and not bc and dt <= 60, f"{len(diag)} diagonal, {len(cross)} cross values, {dt:.1f}s, bad={bd + bc}"


def test_criterion_01_h_values_sl2z(insts):
    ok, detail = _prop2(insts["sl2z"])
    verdict(1, ok, "h_{w_i}(w_i^n) = n and cross terms 0, SL2(Z): " + detail)


def test_criterion_02_h_values_psl2z(insts):
    ok, detail = _prop2(insts["psl2z"])
    verdict(2, ok, "h_{w_i}(w_i^n) = n and cross terms 0, PSL2(Z): " + detail)


def test_criterion_03_inverse_counts_vanish(insts):
    bad = []
    for name in ("psl2z", "sl2z"):
        inst = insts[name]
        for i in (0, 1):
            w = family_word(inst.family, i)
            qm = CountingQuasimorphism(inst.model, w)
            for n in range(1, 5):
                if qm.c_inverse(w * n) != 0:
                    bad.append((name, i, n))
    verdict(3, not bad, f"c_{{w_i^-1}}(w_i^n) = 0 for i <= 1, n <= 4 on both amalgams; bad={bad}")


def test_criterion_04_defect_bound(insts):
    t0 = time.perf_counter()
    psl = insts["psl2z"]
    reports = [defect_scan(psl.model, family_word(psl.family, 0), Exhaustive(3), "w0", fail_fast=False)]
    for name in ("psl2z", "sl2z"):
        inst = insts[name]
        reports.append(defect_scan(inst.model, family_word(inst.family, 0),
                                   RandomPairs(10_000, 50, 42), "w0", fail_fast=False))
    dt = time.perf_counter() - t0
    worst = max(r.observed_max for r in reports)
    counts = [r.n_samples for r in reports]
    ok = worst <= 78 and dt <= 600 and counts[1:] == [10_000, 10_000]
    verdict(4, ok, f"max |delta h_w0| = {worst} <= 78 over {sum(counts)} pairs, {dt:.0f}s")


def test_criterion_05_reduced_iff_geodesic(insts):
    p = insts["psl2z"].model
    n = bad = 0
    for k in range(6):
        for w in itertools.product(p.letters(), repeat=k):
            n += 1
            bad += p.is_reduced(w) != (len(w) == p.geodesic_length(p.element(w)))
    verdict(5, bad == 0, f"reduced iff geodesic on all {n} words of length <= 5 in PSL2(Z); bad={bad}")


def test_criterion_06_lipschitz_and_splitting(insts):
    bad = []
    for name in ("psl2z", "sl2z"):
        inst = insts[name]
        opts = dict(inst.caps, lipschitz_samples=1000)
        for rec in suite_lipschitz(inst, opts) + suite_splitting(inst, opts):
            if not rec.passed:
                bad.append((name, rec.check, rec.params["pattern"], rec.actual, rec.witness))
    verdict(6, not bad, f"Lipschitz (2d, 4d) and splitting (<= 10) bounds on 1000 samples each; bad={bad}")


def _admissible(model, lengths):
    for k in lengths:
        for w in itertools.product(model.letters(), repeat=k):
            if model.is_reduced(w + w):
                yield w


def test_criterion_07_oracle_equivalence(insts):
    t0 = time.perf_counter()
    total = bad = 0
    for name, radius in (("psl2z", 4), ("klein-hnn", 3)):
        model = insts[name].model
        elems = ball_elements(model, radius)
        ball = WordBall(model, 2 * radius)  # |g| |w| / (|w| - 1) is largest at |w| = 2
        for w in _admissible(model, (2, 3, 4)):
            qm = CountingQuasimorphism(model, w)
            for g in elems:
                total += 1
                bad += qm.c(g) != ball.c(g, w)
    dt = time.perf_counter() - t0
    verdict(7, bad == 0 and dt <= 600, f"gauge DP = exhaustive definition on {total} (g, w) cases, {dt:.1f}s; bad={bad}")


def test_criterion_08_britton(insts):
    p = insts["klein-hnn"].model
    rng = random.Random(42)
    words = []
    while len(words) < 500:
        w = random_reduced_word(p, rng.randint(1, 40), rng)
        if any(k == "t" for k, _ in w):
            words.append(w)
    trivial = sum(p.equals(w, ()) for w in words)
    groups = {}
    for k in range(6):
        for w in itertools.product(p.letters(), repeat=k):
            if p.is_reduced(w):
                groups.setdefault(p.element(w), set()).add("".join("+" if v > 0 else "-" for x, v in w if x == "t"))
    split = sum(len(s) > 1 for s in groups.values())
    verdict(8, trivial == 0 and split == 0,
            f"500 reduced words with t are nontrivial ({trivial} trivial); equal reduced words of length <= 5 share t-patterns ({split} splits)")


def test_criterion_09_h_values_klein(insts):
    t0 = time.perf_counter()
    inst = insts["klein-hnn"]
    diag = [(i, n) for i in (0, 1) for n in (1, 2, 3)]
    cross = [(0, 1, n) for n in (1, 2, 3)]
    bd, bc = h_table(inst, diag, cross)
    dt = time.perf_counter() - t0
    verdict(9, not bd and not bc and dt <= 120, f"HNN h_{{w_i}}(w_i^n) = n, cross 0, {dt:.1f}s; bad={bd + bc}")


def test_criterion_10_covering(insts):
    t0 = time.perf_counter()
    out = []
    ok = True
    for i in (0, 1):
        sym = amalgam_family_symbols(i)
        rep = cover_refute(symbol_pattern(sym * 2), symbol_pattern(invert_symbols(sym)))
        expected = 20 * 10**i * 2 - 20 * 10**i + 1
        ok &= rep.cannot_cover and len(rep.verdicts) == expected and all(v.refuted for v in rep.verdicts)
        out.append(f"i={i}: {len(rep.verdicts)} offsets {rep.verdict}")
    dt = time.perf_counter() - t0
    verdict(10, ok and dt <= 1, "; ".join(out) + f", {dt:.3f}s")


def _hand_snf(rel):
    D = smith_normal_form(sympy.Matrix(rel), domain=sympy.ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] not in (0, 1, -1))


def test_criterion_11_abelianization(insts):
    # presentation-level relation lattices: Z6 + Z4 / (3, -2) and Z3 + Z2
    hand = {"sl2z": _hand_snf([[6, 0], [0, 4], [3, -2]]), "psl2z": _hand_snf([[3, 0], [0, 2]])}
    got = {n: list(insts[n].model.abelianization().invariants.nontrivial) for n in hand}
    images = all(insts[n].model.abelianization().in_commutator(family_word(insts[n].family, i))
                 for n in insts for i in range(3))
    ok = hand == {"sl2z": [12], "psl2z": [6]} and got == hand and images
    verdict(11, ok, f"SL2(Z)^ab = Z{got['sl2z']}, PSL2(Z)^ab = Z{got['psl2z']}, family words in [G,G]: {images}")


def _condition_words(p):
    after_pos = [a for a in range(1, p.A.order) if a not in p.incl.image()]
    after_neg = [a for a in range(1, p.A.order) if a not in p.phi.image()]
    for k in range(1, 5):
        for first in (1, -1):
            signs = [first * (-1) ** s for s in range(k)]
            for exps in itertools.product((1, 2), repeat=k):
                pools = [after_pos if s > 0 else after_neg for s in signs]
                for letters in itertools.product(*pools):
                    w = ()
                    for s, e, a in zip(signs, exps, letters):
                        w += (T_POS if s > 0 else T_NEG,) * e + (HLetter("a", a),)
                    yield w


def test_criterion_12_condition_words_geodesic(insts):
    p = insts["klein-hnn"].model
    n = bad = mislabeled = 0
    for w in _condition_words(p):
        n += 1
        mislabeled += check_condition_I_II(p, w) == "neither"
        bad += p.geodesic_length(p.element(w)) != len(w)
    verdict(12, bad == 0 and mislabeled == 0 and n > 0,
            f"{n} Condition I/II words (<= 4 syllables, |n_i| <= 2) are geodesics; bad={bad}, mislabeled={mislabeled}")
