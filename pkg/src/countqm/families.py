"""The two word families, their symbol patterns, and the covering checker.

Family words are built symbolically first and realized afterwards, because
in small groups the letters can collide (in Z3, a1^-1 = a2 when a1 = 1,
a2 = 2) while the symbols never do.

Amalgam symbols: ``1 ! 2 @`` for a1, a1^-1, a2, a2^-1 and ``b B`` for b, b^-1.
HNN symbols: ``t T`` for t, t^-1 and ``g G h H`` likewise.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .amalgam import ALetter, AmalgamPresentation
from .groups import Subgroup, double_cosets
from .hnn import T_NEG, T_POS, HLetter, HnnPresentation

AMALGAM_SYMBOLS = frozenset("1!2@bB")
HNN_SYMBOLS = frozenset("tTgGhH")
_INVERT = str.maketrans("1!2@bBtTgGhH", "!1@2BbTtGgHh")

# Symbol pairs that can never face each other when a2 is outside C a1 C.
ILLEGAL_PAIRS = frozenset({("1", "2"), ("2", "1"), ("!", "@"), ("@", "!")})

DEFAULT_MAX_INDEX = 2
DEFAULT_MAX_LENGTH = 4000


class FamilyParamsError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class FamilyIndexError(ValueError):
    pass


@dataclass(frozen=True)
class AmalgamFamilyParams:
    presentation: AmalgamPresentation = field(repr=False)
    a1: int
    a2: int
    b: int
    base: int = 10
    max_index: int = DEFAULT_MAX_INDEX


@dataclass(frozen=True)
class HnnFamilyParams:
    presentation: HnnPresentation = field(repr=False)
    g: int
    h: int
    base: int = 10
    max_index: int = DEFAULT_MAX_INDEX


def validate_amalgam_params(params: AmalgamFamilyParams) -> AmalgamFamilyParams:
    """Check the hypotheses needed for the family; raise with every violation."""
    p = params.presentation
    A = p.A
    CA = p.iotaA.image()
    CB = p.iotaB.image()
    problems = []
    n_double = len(double_cosets(A, CA, CA))
    if n_double < 3:
        problems.append(f"|C\\A/C| = {n_double} < 3")
    if CB.index() < 2:
        problems.append(f"|B/C| = {CB.index()} < 2")
    for name, a in (("a1", params.a1), ("a2", params.a2)):
        if not 0 <= a < A.order:
            problems.append(f"{name} = {a} is not an element of A")
        elif a in CA:
            problems.append(f"{name} = {a} lies in the image of C in A")
    if not 0 <= params.b < p.B.order:
        problems.append(f"b = {params.b} is not an element of B")
    elif params.b in CB:
        problems.append(f"b = {params.b} lies in the image of C in B")
    if 0 <= params.a1 < A.order and 0 <= params.a2 < A.order:
        for c1 in CA.elements:
            for c2 in CA.elements:
                if A.prod(c1, params.a1, c2) == params.a2:
                    problems.append(
                        f"a2 lies in C a1 C: {c1} * {params.a1} * {c2} = {params.a2}"
                    )
                    break
            else:
                continue
            break
    if params.base < 10:
        problems.append(f"base {params.base} < 10 breaks the length separation")
    if problems:
        raise FamilyParamsError(problems)
    return params


def validate_hnn_params(params: HnnFamilyParams) -> HnnFamilyParams:
    p = params.presentation
    problems = []
    for name, x, test, where in (
        ("g", params.g, p.in_C, "C"),
        ("h", params.h, p.in_phiC, "phi(C)"),
    ):
        if not 0 <= x < p.A.order:
            problems.append(f"{name} = {x} is not an element of A")
        elif test(x):
            problems.append(f"{name} = {x} lies in {where}")
    if params.base < 2:
        problems.append(f"base {params.base} < 2")
    if problems:
        raise FamilyParamsError(problems)
    return params


def _check_index(params, i: int) -> int:
    if i < 0 or i > params.max_index:
        raise FamilyIndexError(f"family index {i} outside 0..{params.max_index}")
    return params.base**i


# -- symbolic words


def amalgam_family_symbols(i: int, base: int = 10) -> str:
    p = base**i
    return (
        "1b" * p + "!B" * p + "2b" * p + "@B" * p
        + "1b" * (4 * p) + "!B" * (4 * p) + "2b" * (4 * p) + "@B" * (4 * p)
    )


def hnn_family_symbols(i: int, base: int = 10) -> str:
    p = base**i
    out = []
    for k, a, h in ((1, "g", "h"), (1, "G", "H"), (2, "g", "h"), (3, "G", "H")):
        out.append("t" * (k * p) + a + "T" * (k * p) + h)
    return "".join(out)


def invert_symbols(s: str) -> str:
    return s[::-1].translate(_INVERT)


def realize_amalgam(params: AmalgamFamilyParams, symbols: str) -> tuple[ALetter, ...]:
    A, B = params.presentation.A, params.presentation.B
    table = {
        "1": ALetter("A", params.a1),
        "!": ALetter("A", A.inv[params.a1]),
        "2": ALetter("A", params.a2),
        "@": ALetter("A", A.inv[params.a2]),
        "b": ALetter("B", params.b),
        "B": ALetter("B", B.inv[params.b]),
    }
    try:
        return tuple(table[s] for s in symbols)
    except KeyError as exc:
        raise ValueError(f"symbol {exc.args[0]!r} outside the amalgam family alphabet") from None


def realize_hnn(params: HnnFamilyParams, symbols: str) -> tuple[HLetter, ...]:
    inv = params.presentation.A.inv
    table = {
        "t": T_POS,
        "T": T_NEG,
        "g": HLetter("a", params.g),
        "G": HLetter("a", inv[params.g]),
        "h": HLetter("a", params.h),
        "H": HLetter("a", inv[params.h]),
    }
    try:
        return tuple(table[s] for s in symbols)
    except KeyError as exc:
        raise ValueError(f"symbol {exc.args[0]!r} outside the HNN family alphabet") from None


def build_wi_amalgam(params: AmalgamFamilyParams, i: int) -> tuple[ALetter, ...]:
    _check_index(params, i)
    return realize_amalgam(params, amalgam_family_symbols(i, params.base))


def wi_plus(params: AmalgamFamilyParams, i: int) -> tuple[ALetter, ...]:
    """The block (a1 b)^(4 base^i)."""
    p = _check_index(params, i)
    return realize_amalgam(params, "1b" * (4 * p))


def wi_minus(params: AmalgamFamilyParams, i: int) -> tuple[ALetter, ...]:
    """The block (a1^-1 b^-1)^(4 base^i)."""
    p = _check_index(params, i)
    return realize_amalgam(params, "!B" * (4 * p))


def build_wi_hnn(params: HnnFamilyParams, i: int) -> tuple[HLetter, ...]:
    _check_index(params, i)
    return realize_hnn(params, hnn_family_symbols(i, params.base))


def family_word(params, i: int) -> tuple:
    if isinstance(params, AmalgamFamilyParams):
        return build_wi_amalgam(params, i)
    return build_wi_hnn(params, i)


def family_symbols(params, i: int) -> str:
    _check_index(params, i)
    if isinstance(params, AmalgamFamilyParams):
        return amalgam_family_symbols(i, params.base)
    return hnn_family_symbols(i, params.base)


# -- symbol patterns


def symbol_pattern(word, params=None) -> str:
    """Syllable-class string of a family word.

    Amalgam words give a string over ``1 ! 2 @`` (b letters dropped); HNN
    words give the stable-letter pattern over ``+ -``. ``word`` is either a
    symbolic string or a realized word together with its ``params``.
    """
    if isinstance(word, str):
        chars = set(word)
        if chars <= AMALGAM_SYMBOLS:
            return "".join(c for c in word if c in "1!2@")
        if chars <= HNN_SYMBOLS:
            return "".join("+" if c == "t" else "-" for c in word if c in "tT")
        raise ValueError(f"symbols {sorted(chars - AMALGAM_SYMBOLS - HNN_SYMBOLS)} outside both alphabets")
    if isinstance(params, HnnFamilyParams):
        return "".join("+" if v > 0 else "-" for k, v in word if k == "t")
    if not isinstance(params, AmalgamFamilyParams):
        raise TypeError("realized words need their family params")
    A, B = params.presentation.A, params.presentation.B
    lookup: dict[int, str] = {}
    for sym, val in (("1", params.a1), ("!", A.inv[params.a1]), ("2", params.a2), ("@", A.inv[params.a2])):
        if val in lookup and lookup[val] != sym:
            raise ValueError(
                f"A-letter {val} stands for both {lookup[val]!r} and {sym!r}; pass the symbolic word"
            )
        lookup[val] = sym
    bvals = {params.b, B.inv[params.b]}
    out = []
    for side, v in word:
        if side == "A":
            if v not in lookup:
                raise ValueError(f"letter A:{v} outside the family alphabet")
            out.append(lookup[v])
        elif v not in bvals:
            raise ValueError(f"letter B:{v} outside the family alphabet")
    return "".join(out)


def render_pattern(pattern: str, sep: str = "") -> str:
    return sep.join(pattern)


# -- covering refutation


@dataclass(frozen=True)
class OffsetVerdict:
    offset: int
    refuting_index: int | None  # position inside the probe
    text_sym: str | None
    probe_sym: str | None

    @property
    def refuted(self) -> bool:
        return self.refuting_index is not None


@dataclass(frozen=True)
class CoverReport:
    text: str
    probe: str
    verdicts: tuple[OffsetVerdict, ...]

    @property
    def cannot_cover(self) -> bool:
        return all(v.refuted for v in self.verdicts)

    @property
    def verdict(self) -> str:
        return "cannot cover" if self.cannot_cover else "may cover"

    def unrefuted(self) -> list[int]:
        return [v.offset for v in self.verdicts if not v.refuted]

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["offset", "refuting_index", "text_sym", "probe_sym"])
        for v in self.verdicts:
            wr.writerow([v.offset, "" if v.refuting_index is None else v.refuting_index,
                         v.text_sym or "", v.probe_sym or ""])
        return buf.getvalue()


def cover_refute(text: str, probe: str) -> CoverReport:
    """Try every alignment of ``probe`` under ``text`` and look for an illegal facing pair.

    Only pairs that are illegal in every group satisfying the family
    hypotheses are used, so a refutation is always sound.
    """
    if len(probe) > len(text):
        raise ValueError("probe longer than text")
    verdicts = []
    for off in range(len(text) - len(probe) + 1):
        hit = None
        for k, q in enumerate(probe):
            if (text[off + k], q) in ILLEGAL_PAIRS:
                hit = OffsetVerdict(off, k, text[off + k], q)
                break
        verdicts.append(hit or OffsetVerdict(off, None, None, None))
    return CoverReport(text, probe, tuple(verdicts))


def consecutive_run_bound(pattern: str) -> int:
    best = run = 0
    prev = None
    for c in pattern:
        run = run + 1 if c == prev else 1
        prev = c
        best = max(best, run)
    return best


def family_separation_check(i: int, j: int, n_max: int = 3, base: int = 10) -> bool:
    """Longest stable run of W_j is 3 base^j and exceeds that of every W_i^n."""
    if not i < j:
        raise ValueError("need i < j")
    wj = symbol_pattern(hnn_family_symbols(j, base))
    wi = symbol_pattern(hnn_family_symbols(i, base))
    run_j = consecutive_run_bound(wj)
    run_i = max(consecutive_run_bound(wi * n) for n in range(1, n_max + 1))
    return run_j == 3 * base**j and run_i == 3 * base**i and run_j > run_i


# -- commutator certificates


def commutator(model, x: tuple, y: tuple) -> tuple:
    """[x, y] = x y x^-1 y^-1 as a word."""
    return x + y + model.inverse_word(x) + model.inverse_word(y)


def hnn_commutator_product(params: HnnFamilyParams, i: int) -> tuple:
    """[T,g][gh,[T,g^-1]][T,g^-1][g,h][T^2,g][gh,[T^3,g^-1]][T^3,g^-1][g,h] with T = t^(base^i)."""
    p = params.presentation
    N = _check_index(params, i)
    g = (HLetter("a", params.g),)
    gi = p.inverse_word(g)
    h = (HLetter("a", params.h),)
    T1, T2, T3 = (T_POS,) * N, (T_POS,) * (2 * N), (T_POS,) * (3 * N)
    com = lambda x, y: commutator(p, x, y)  # noqa: E731
    return (
        com(T1, g) + com(g + h, com(T1, gi)) + com(T1, gi) + com(g, h)
        + com(T2, g) + com(g + h, com(T3, gi)) + com(T3, gi) + com(g, h)
    )


def commutator_certificate_check(params, i: int) -> bool:
    """Family word lies in [G, G]: zero abelianized image, plus the explicit
    commutator identity for the HNN family and the four commutator-type
    blocks (a_k b)^p (a_k^-1 b^-1)^p for the amalgam family."""
    p = params.presentation
    ab = p.abelianization()
    w = family_word(params, i)
    if not ab.in_commutator(w):
        return False
    if isinstance(params, HnnFamilyParams):
        return p.equals(w, hnn_commutator_product(params, i))
    P = params.base**i
    for k in (1, 4):
        for sym in ("1", "2"):
            inv = sym.translate(_INVERT)
            block = realize_amalgam(params, (sym + "b") * (k * P) + (inv + "B") * (k * P))
            if not ab.in_commutator(block):
                return False
    return True
