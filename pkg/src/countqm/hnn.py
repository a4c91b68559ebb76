"""HNN extensions A *_C phi = <A, t | c = t^-1 phi(c) t> over {t} u A minus 1.

Stable-letter powers are stored as unit letters, so t^3 is three ``t``s.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .amalgam import WordSyntaxError
from .groups import Embedding, FiniteGroup, Subgroup, check_embedding, subgroup
from .orbit import GaugeOrbit
from .snf import AbelianQuotient, table_relations


class HLetter(NamedTuple):
    kind: str  # "t" (value +1 / -1) or "a" (value = nonidentity element of A)
    value: int

    def __str__(self) -> str:
        if self.kind == "t":
            return "t" if self.value > 0 else "T"
        return f"a:{self.value}"


T_POS = HLetter("t", 1)
T_NEG = HLetter("t", -1)


class MalformedSyllables(ValueError):
    pass


@dataclass(frozen=True)
class HElement:
    """Britton-reduced form a_0 t^e1 a_1 ... t^ek a_k in canonical gauge.

    ``slots`` holds a_0..a_k (0 = identity, omitted from the word).
    """

    slots: tuple[int, ...]
    signs: tuple[int, ...]

    @property
    def word(self) -> tuple[HLetter, ...]:
        return _interleave(self.slots, self.signs)

    def __str__(self) -> str:
        return " ".join(map(str, self.word))


def _interleave(slots, signs) -> tuple[HLetter, ...]:
    out = []
    for i, a in enumerate(slots):
        if a:
            out.append(HLetter("a", a))
        if i < len(signs):
            out.append(T_POS if signs[i] > 0 else T_NEG)
    return tuple(out)


class HnnPresentation:
    """HNN extension of a finite group A along phi: C -> A, C a subgroup of A."""

    kind = "hnn"

    def __init__(self, A: FiniteGroup, C, phi, name: str = ""):
        self.A = A
        if not isinstance(C, Subgroup):
            C = subgroup(A, C)
        self.C_sub = C
        self.C, self.incl = C.as_group()
        if isinstance(phi, Embedding):
            self.phi = phi
        else:
            phi = dict(phi)
            phi.setdefault(0, 0)
            missing = [x for x in C.elements if x not in phi]
            if missing:
                raise ValueError(f"phi undefined on subgroup elements {missing}")
            self.phi = check_embedding(self.C, A, [phi[self.incl(c)] for c in self.C.elements()])
        self.name = name
        self._pre_incl = self.incl.preimage()
        self._pre_phi = self.phi.preimage()
        self._ab = None

    def __repr__(self) -> str:
        return f"HnnPresentation({self.name or ''} A={self.A.name}, |C|={self.C.order})"

    def in_C(self, a: int) -> bool:
        return a in self._pre_incl

    def in_phiC(self, a: int) -> bool:
        return a in self._pre_phi

    def letters(self) -> list[HLetter]:
        return [T_POS, T_NEG] + [HLetter("a", a) for a in range(1, self.A.order)]

    # -- words

    def check_word(self, w: Iterable) -> tuple[HLetter, ...]:
        out = []
        for i, x in enumerate(w):
            kind, value = x
            if kind == "t" and value in (1, -1):
                out.append(HLetter("t", value))
            elif kind == "a" and isinstance(value, int) and 0 < value < self.A.order:
                out.append(HLetter("a", value))
            else:
                raise WordSyntaxError(f"invalid letter {x!r}", i)
        return tuple(out)

    def parse_word(self, text: str) -> tuple[HLetter, ...]:
        out = []
        for i, tok in enumerate(text.split()):
            if tok == "t":
                out.append(T_POS)
            elif tok == "T":
                out.append(T_NEG)
            else:
                m = re.fullmatch(r"a:(\d+)", tok)
                if not m:
                    raise WordSyntaxError(f"bad token {tok!r}; expected t, T or a:<index>", i)
                out.append(("a", int(m.group(1))))
        return self.check_word(out)

    @staticmethod
    def format_word(w: Sequence[HLetter]) -> str:
        return " ".join(str(HLetter(*x)) for x in w)

    def inverse_word(self, w: Sequence[HLetter]) -> tuple[HLetter, ...]:
        inv = self.A.inv
        return tuple(
            HLetter("t", -v) if k == "t" else HLetter("a", inv[v]) for k, v in reversed(w)
        )

    # -- Britton reduction

    def _pinch(self, outer: int, a: int) -> int | None:
        """Value of t^outer a t^-outer when it collapses into A, else None."""
        if outer > 0 and a in self._pre_incl:
            return self.phi(self._pre_incl[a])
        if outer < 0 and a in self._pre_phi:
            return self.incl(self._pre_phi[a])
        return None

    def _push_a(self, stack: list, a: int) -> None:
        if stack and stack[-1].kind == "a":
            a = self.A.mult[stack.pop().value][a]
        if a:
            stack.append(HLetter("a", a))

    def _push_t(self, stack: list, e: int) -> None:
        if stack and stack[-1] == HLetter("t", -e):
            stack.pop()
            return
        if len(stack) >= 2 and stack[-1].kind == "a" and stack[-2] == HLetter("t", -e):
            r = self._pinch(-e, stack[-1].value)
            if r is not None:
                del stack[-2:]
                self._push_a(stack, r)
                return
        stack.append(HLetter("t", e))

    def britton_reduce(self, w: Sequence[HLetter]) -> tuple[HLetter, ...]:
        """Collapse pinches t a T (a in C) and T a t (a in phi(C)) and merge A-letters."""
        stack: list[HLetter] = []
        for k, v in w:
            if k == "t":
                self._push_t(stack, v)
            else:
                self._push_a(stack, v)
        return tuple(stack)

    reduce = britton_reduce

    def is_reduced(self, w: Sequence[HLetter]) -> bool:
        """No adjacent A-letters, no t T / T t, no pinch."""
        w = tuple(w)
        for i in range(len(w) - 1):
            x, y = w[i], w[i + 1]
            if x.kind == "a" and y.kind == "a":
                return False
            if x.kind == "t" and y.kind == "t" and x.value == -y.value:
                return False
        for i in range(len(w) - 2):
            x, a, y = w[i], w[i + 1], w[i + 2]
            if x.kind == "t" and y.kind == "t" and a.kind == "a" and x.value == -y.value:
                if self._pinch(x.value, a.value) is not None:
                    return False
        return True

    # -- elements

    @staticmethod
    def _slots(w: Sequence[HLetter], A: FiniteGroup) -> tuple[tuple[int, ...], tuple[int, ...]]:
        slots, signs = [0], []
        for k, v in w:
            if k == "t":
                signs.append(v)
                slots.append(0)
            else:
                slots[-1] = A.mult[slots[-1]][v]
        return tuple(slots), tuple(signs)

    def gauge_orbit(self, g) -> "HGaugeOrbit":
        if not isinstance(g, HElement):
            g = self.element(g)
        return HGaugeOrbit(self, g.slots, g.signs)

    def element(self, w: Sequence[HLetter]) -> HElement:
        slots, signs = self._slots(self.britton_reduce(w), self.A)
        orbit = HGaugeOrbit(self, slots, signs)
        gauges = (0, *orbit.canonical_gauges(), 0)
        canon = tuple(orbit.slot(i, gauges[i], gauges[i + 1]) for i in range(len(slots)))
        return HElement(canon, signs)

    def equals(self, u: Sequence[HLetter], v: Sequence[HLetter]) -> bool:
        """u = v in G, decided by Britton: u v^-1 reduces to the empty word."""
        return not self.britton_reduce(tuple(u) + self.inverse_word(v))

    identity = HElement((0,), ())

    def mul(self, g: HElement, h: HElement) -> HElement:
        return self.element(g.word + h.word)

    def inv(self, g: HElement) -> HElement:
        return self.element(self.inverse_word(g.word))

    def geodesic_length(self, g) -> int:
        return self.gauge_orbit(g).min_length()

    def enumerate_geodesics(self, g, cap: int = 1 << 16) -> list[tuple[HLetter, ...]]:
        """Shortest members of the gauge orbit; these are the geodesics of ``g``."""
        orbit = self.gauge_orbit(g)
        n = orbit.min_length()
        return sorted({w for w in orbit.members(cap) if len(w) == n})

    def abelianization(self) -> "HnnAbelianization":
        if self._ab is None:
            self._ab = HnnAbelianization(self)
        return self._ab


def t_pattern(w: Sequence) -> str:
    return "".join("+" if v > 0 else "-" for k, v in w if k == "t")


class HGaugeOrbit(GaugeOrbit):
    """Words a_0' t^e1 a_1' ... with gauge v_j in C at the j-th stable letter.

    A gauge v at a ``t`` turns (x, y) into (x phi(v), v^-1 y); at a ``T`` into
    (x v, phi(v)^-1 y). Identity slots are dropped from the member word, so
    members may have different lengths and need not be reduced.
    """

    def __init__(self, p: HnnPresentation, slots: Sequence[int], signs: Sequence[int]):
        self.p = p
        self.slots = tuple(slots)
        self.signs = tuple(signs)
        self.n_segments = len(self.slots)
        self.gauge_order = p.C.order
        A, incl, phi = p.A, p.incl, p.phi
        k = len(self.signs)
        # left[i][v], right[i][v]: multipliers applied to slot i
        self._left = [[0] * p.C.order for _ in range(k + 1)]
        self._right = [[0] * p.C.order for _ in range(k + 1)]
        for v in p.C.elements():
            for j, e in enumerate(self.signs, start=1):
                self._right[j - 1][v] = phi(v) if e > 0 else incl(v)
                self._left[j][v] = A.inv[incl(v)] if e > 0 else A.inv[phi(v)]

    def slot(self, i: int, left: int, right: int) -> int:
        m = self.p.A.mult
        return m[m[self._left[i][left]][self.slots[i]]][self._right[i][right]]

    def segment(self, i: int, left: int, right: int) -> tuple:
        a = self.slot(i, left, right)
        head = (HLetter("a", a),) if a else ()
        if i < len(self.signs):
            return head + (T_POS if self.signs[i] > 0 else T_NEG,)
        return head


def syllables(w: Sequence[HLetter]) -> list[tuple[int, int]]:
    """Split t^n1 a_1 ... t^nI a_I into [(n_i, a_i)]; raise if not of that shape."""
    out = []
    i, n = 0, len(w)
    if n == 0:
        raise MalformedSyllables("empty word has no syllables")
    while i < n:
        if w[i].kind != "t":
            raise MalformedSyllables(f"expected a stable letter at position {i}, got {w[i]}")
        e, run = w[i].value, 0
        while i < n and w[i].kind == "t":
            if w[i].value != e:
                raise MalformedSyllables(f"mixed-sign stable run ending at position {i}")
            run += e
            i += 1
        if i >= n or w[i].kind != "a":
            raise MalformedSyllables("word must end with an A-letter after each stable run")
        out.append((run, w[i].value))
        i += 1
        if i < n and w[i].kind == "a":
            raise MalformedSyllables(f"adjacent A-letters at position {i}")
    return out


def check_condition_I_II(p: HnnPresentation, w: Sequence[HLetter]) -> str:
    """'I', 'II' or 'neither' for a word in syllable form.

    Condition I: exponents +,-,+,... with letters after positive runs outside C
    and after negative runs outside phi(C). Condition II is the same with the
    first exponent negative. Either makes the word a geodesic.
    """
    syl = syllables(w)
    for first, label in ((1, "I"), (-1, "II")):
        ok = True
        for idx, (n, a) in enumerate(syl):
            sign = first if idx % 2 == 0 else -first
            if n * sign <= 0:
                ok = False
                break
            if (sign > 0 and p.in_C(a)) or (sign < 0 and p.in_phiC(a)):
                ok = False
                break
        if ok:
            return label
    return "neither"


class HnnAbelianization:
    """G^ab on A^ab + Z t, with c identified with phi(c)."""

    def __init__(self, p: HnnPresentation):
        self.p = p
        n = p.A.order + 1
        self.t_col = p.A.order
        rel = table_relations(p.A, 0, n)
        for c in p.C.elements():
            row = [0] * n
            row[p.incl(c)] += 1
            row[p.phi(c)] -= 1
            if any(row):
                rel.append(row)
        self.ncols = n
        self.relations = rel
        self.quotient = AbelianQuotient(rel, n)
        self.invariants = self.quotient.invariants

    def vector(self, w) -> list[int]:
        if isinstance(w, HElement):
            w = w.word
        vec = [0] * self.ncols
        for k, v in w:
            if k == "t":
                vec[self.t_col] += v
            else:
                vec[v] += 1
        return vec

    def image(self, w) -> tuple[int, ...]:
        return self.quotient.image(self.vector(w))

    def in_commutator(self, w) -> bool:
        return self.quotient.is_trivial(self.vector(w))
