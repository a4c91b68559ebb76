"""Command-line entry point: ``countqm verify|defect|eval|family|cover``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for bad
configs, bad words or bad arguments.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .amalgam import WordSyntaxError
from .families import (
    FamilyIndexError,
    FamilyParamsError,
    HnnFamilyParams,
    cover_refute,
    family_symbols,
    family_word,
    invert_symbols,
    symbol_pattern,
)
from .hnn import check_condition_I_II, t_pattern
from .instances import BUILTINS, ConfigError, load_instance
from .quasimorphism import (
    CountingQuasimorphism,
    DefectBoundExceeded,
    Exhaustive,
    PatternError,
    RandomPairs,
    defect_scan,
)
from .suites import run_suites
from .validation import FAMILY_REF as _REF, resolve_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

class UsageError(ValueError):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _instance(args):
    if args.config is None and args.instance is None:
        args.instance = "psl2z"
    return load_instance(args.instance, args.config)


# -- operand parsing for eval / defect


def resolve_pattern(inst, text: str) -> str:
    """A symbol pattern: ``W<i>^n`` / ``w<i>^n``, a raw symbol string, or a literal word."""
    text = text.strip()
    m = _REF.fullmatch(text)
    if m:
        sym = family_symbols(inst.family, int(m.group(2)))
        n = int(m.group(3) or 1)
        if n < 0:
            sym, n = invert_symbols(sym), -n
        return symbol_pattern(sym * n)
    if re.fullmatch(r"[1!2@]*", text) or re.fullmatch(r"[+\-]+", text):
        return text
    word = inst.model.parse_word(text)
    if isinstance(inst.family, HnnFamilyParams):
        return t_pattern(word)
    return symbol_pattern(word, inst.family)


def split_operands(rest: str, count: int) -> list[str]:
    """Split ``rest`` into ``count`` operands: on ';' if present, else at family references."""
    if count == 1:
        return [rest]
    if ";" in rest:
        parts = [p.strip() for p in rest.split(";")]
        if len(parts) != count:
            raise UsageError(f"expected {count} operands separated by ';', got {len(parts)}")
        return parts
    toks = rest.split()
    if count == 2 and toks:
        if _REF.fullmatch(toks[0]):
            return [toks[0], " ".join(toks[1:])]
        if _REF.fullmatch(toks[-1]):
            return [" ".join(toks[:-1]), toks[-1]]
        if len(toks) == 2:
            return toks
    raise UsageError("ambiguous operands; separate them with ';'")


def evaluate(inst, expr: str) -> str:
    model = inst.model
    expr = expr.strip()
    cmd, _, rest = expr.partition(" ")
    if cmd == "reduce":
        return model.format_word(model.reduce(resolve_word(inst, rest)))
    if cmd == "eq":
        u, v = split_operands(rest, 2)
        return str(model.equals(resolve_word(inst, u), resolve_word(inst, v))).lower()
    if cmd == "len":
        return str(model.geodesic_length(model.element(resolve_word(inst, rest))))
    if cmd in ("cw", "hw"):
        w, g = split_operands(rest, 2)
        qm = CountingQuasimorphism(model, resolve_word(inst, w))
        g = resolve_word(inst, g)
        return str(qm.c(g) if cmd == "cw" else qm.h(g))
    if cmd == "pattern":
        return resolve_pattern(inst, rest)
    if cmd == "cover":
        text, probe = split_operands(rest, 2)
        return cover_refute(resolve_pattern(inst, text), resolve_pattern(inst, probe)).verdict
    if cmd == "condition":
        return check_condition_I_II(model, resolve_word(inst, rest))
    if cmd == "abelian":
        ab = model.abelianization()
        if not rest.strip():
            return str(ab.invariants)
        w = resolve_word(inst, rest)
        return f"{list(ab.image(w))} in_commutator={str(ab.in_commutator(w)).lower()}"
    raise UsageError(
        f"unknown eval command {cmd!r}; use reduce, eq, len, cw, hw, pattern, cover, condition or abelian"
    )


# -- subcommands


def cmd_verify(args) -> int:
    overrides = {
        "max_index": args.max_i,
        "h_max_index": args.max_i,
        "max_n": args.max_n,
        "radius": args.radius,
        "seed": args.seed,
        "samples": args.samples,
    }
    if args.all and args.instance is None and args.config is None:
        insts = [load_instance(name) for name in BUILTINS]
    else:
        insts = [_instance(args)]
    names = None if args.all else (sum((s.split(",") for s in args.suite), []) if args.suite else None)
    ok = True
    chunks = []
    for inst in insts:
        report = run_suites(inst, names, overrides)
        ok &= report.passed
        chunks.append(report)
    if args.format == "csv":
        text = chunks[0].to_csv() + "".join(r.to_csv().split("\n", 1)[1] for r in chunks[1:])
    else:
        docs = [json.loads(r.to_json(include_timing=args.timing)) for r in chunks]
        doc = docs[0] if len(docs) == 1 else {"passed": ok, "reports": docs}
        text = json.dumps(doc, indent=2)
    _emit(text, args.out)
    for r in chunks:
        for rec in r.failures():
            print(f"FAIL {rec.instance} {rec.check} {rec.params}: expected {rec.expected}, "
                  f"got {rec.actual}; witness {rec.witness}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_defect(args) -> int:
    inst = _instance(args)
    w = resolve_word(inst, args.word)
    qm = CountingQuasimorphism(inst.model, w)
    seed = inst.caps["seed"] if args.seed is None else args.seed
    if args.random is not None:
        strategy = RandomPairs(args.random, args.max_len, seed)
    else:
        r = args.exhaustive_radius if args.exhaustive_radius is not None else inst.caps["radius"]
        strategy = Exhaustive(r)
    report = defect_scan(inst.model, qm, strategy, args.word, fail_fast=False)
    _emit(report.to_csv() if args.format == "csv" else json.dumps(report.to_dict(), indent=2), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_eval(args) -> int:
    inst = _instance(args)
    _emit(evaluate(inst, " ".join(args.expression)), args.out)
    return EXIT_OK


def cmd_family(args) -> int:
    inst = _instance(args)
    model = inst.model
    w = family_word(inst.family, args.i)
    sym = family_symbols(inst.family, args.i)
    info = {
        "instance": inst.name,
        "i": args.i,
        "length": len(w),
        "word": model.format_word(w),
        "pattern": symbol_pattern(sym),
        "reduced_powers": [model.is_reduced(w * n) for n in range(1, 4)],
        "in_commutator": model.abelianization().in_commutator(w),
    }
    if inst.kind == "hnn":
        info["condition"] = check_condition_I_II(model, w)
    if args.format == "csv":
        text = "key,value\n" + "".join(f"{k},{json.dumps(v)}\n" for k, v in info.items())
    else:
        text = json.dumps(info, indent=2)
    _emit(text, args.out)
    return EXIT_OK


def cmd_cover(args) -> int:
    inst = _instance(args)
    custom = args.text is not None or args.probe is not None
    if custom:
        if args.text is None or args.probe is None:
            raise UsageError("--text and --probe go together")
        text, probe = resolve_pattern(inst, args.text), resolve_pattern(inst, args.probe)
    else:
        text = resolve_pattern(inst, f"W{args.i}^2")
        probe = resolve_pattern(inst, f"W{args.i}^-1")
    report = cover_refute(text, probe)
    if args.format == "csv":
        out = report.to_csv()
    else:
        out = json.dumps({
            "text": text, "probe": probe, "verdict": report.verdict,
            "offsets": len(report.verdicts), "unrefuted": report.unrefuted(),
        }, indent=2)
    _emit(out, args.out)
    return EXIT_OK if custom or report.cannot_cover else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", choices=sorted(BUILTINS), help="built-in instance")
    common.add_argument("--config", help="instance config file (JSON)")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="countqm", description="Counting quasimorphisms on amalgams and HNN extensions.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", help="suite name(s); repeat or comma-separate")
    v.add_argument("--all", action="store_true", help="every suite (every built-in without --instance)")
    v.add_argument("--max-i", type=int)
    v.add_argument("--max-n", type=int)
    v.add_argument("--radius", type=int)
    v.add_argument("--samples", type=int, help="random defect pairs")
    v.add_argument("--timing", action="store_true", help="include wall-clock time in JSON")
    v.add_argument("--format", choices=["csv", "json"], default="json")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("defect", parents=[common], help="scan |delta h_w| over pairs")
    d.add_argument("--word", default="w0", help="family reference (w0, w1) or literal word")
    g = d.add_mutually_exclusive_group()
    g.add_argument("--exhaustive-radius", type=int)
    g.add_argument("--random", type=int, metavar="COUNT")
    d.add_argument("--max-len", type=int, default=50)
    d.add_argument("--format", choices=["csv", "json"], default="csv")
    d.set_defaults(func=cmd_defect)

    e = sub.add_parser("eval", parents=[common], help="evaluate one expression")
    e.add_argument("expression", nargs="+")
    e.set_defaults(func=cmd_eval)

    f = sub.add_parser("family", parents=[common], help="describe a family word")
    f.add_argument("--i", type=int, default=0)
    f.add_argument("--format", choices=["csv", "json"], default="json")
    f.set_defaults(func=cmd_family)

    c = sub.add_parser("cover", parents=[common], help="covering refutation report")
    c.add_argument("--i", type=int, default=0)
    c.add_argument("--text")
    c.add_argument("--probe")
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.set_defaults(func=cmd_cover)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FamilyParamsError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
    except WordSyntaxError as exc:
        print(f"parse error at token {exc.position}: {exc}", file=sys.stderr)
    except PatternError as exc:
        print(f"pattern error: {exc}", file=sys.stderr)
    except (UsageError, FamilyIndexError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except DefectBoundExceeded as exc:  # only with fail_fast
        print(f"defect bound exceeded: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
