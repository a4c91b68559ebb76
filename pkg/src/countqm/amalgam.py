"""Amalgamated free products A *_C B over the generators (A u B) minus 1."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .groups import Embedding, FiniteGroup, check_embedding
from .orbit import GaugeOrbit
from .snf import AbelianQuotient, table_relations


class ALetter(NamedTuple):
    side: str  # "A" or "B"
    value: int

    def __str__(self) -> str:
        return f"{self.side}:{self.value}"


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int = -1):
        super().__init__(message if position < 0 else f"{message} (at token {position})")
        self.position = position


@dataclass(frozen=True)
class AElement:
    """Canonical reduced word of an element; equal elements share it."""

    word: tuple[ALetter, ...]

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return " ".join(map(str, self.word))


_OTHER = {"A": "B", "B": "A"}


class AmalgamPresentation:
    """G = A *_C B with C embedded in both factors.

    Instances are immutable after construction and safe to share.
    """

    kind = "amalgam"

    def __init__(self, A: FiniteGroup, B: FiniteGroup, C: FiniteGroup, iotaA, iotaB, name: str = ""):
        self.A, self.B, self.C = A, B, C
        self.iotaA: Embedding = iotaA if isinstance(iotaA, Embedding) else check_embedding(C, A, iotaA)
        self.iotaB: Embedding = iotaB if isinstance(iotaB, Embedding) else check_embedding(C, B, iotaB)
        self.name = name
        self._group = {"A": A, "B": B}
        self._iota = {"A": self.iotaA, "B": self.iotaB}
        self._pre = {"A": self.iotaA.preimage(), "B": self.iotaB.preimage()}
        self._ab = None

    def __repr__(self) -> str:
        return f"AmalgamPresentation({self.name or ''} A={self.A.name}, B={self.B.name}, |C|={self.C.order})"

    # -- predicates and letters

    def group(self, side: str) -> FiniteGroup:
        return self._group[side]

    def in_C(self, side: str, value: int) -> bool:
        return value in self._pre[side]

    def in_CA(self, a: int) -> bool:
        return a in self._pre["A"]

    def in_CB(self, b: int) -> bool:
        return b in self._pre["B"]

    def transfer(self, letter: ALetter) -> ALetter:
        """Rewrite a C-letter as the equal letter on the other side."""
        c = self._pre[letter.side][letter.value]
        other = _OTHER[letter.side]
        return ALetter(other, self._iota[other](c))

    def letters(self) -> list[ALetter]:
        return [ALetter("A", a) for a in range(1, self.A.order)] + [
            ALetter("B", b) for b in range(1, self.B.order)
        ]

    def check_word(self, w: Iterable) -> tuple[ALetter, ...]:
        out = []
        for i, x in enumerate(w):
            side, value = x
            if side not in self._group:
                raise WordSyntaxError(f"unknown side {side!r}", i)
            if not (isinstance(value, int) and 0 < value < self._group[side].order):
                raise WordSyntaxError(f"letter {side}:{value} is not a nonidentity element", i)
            out.append(ALetter(side, value))
        return tuple(out)

    def parse_word(self, text: str) -> tuple[ALetter, ...]:
        out = []
        for i, tok in enumerate(text.split()):
            m = re.fullmatch(r"([ABab]):(\d+)", tok)
            if not m:
                raise WordSyntaxError(f"bad token {tok!r}; expected A:<index> or B:<index>", i)
            out.append((m.group(1).upper(), int(m.group(2))))
        return self.check_word(out)

    @staticmethod
    def format_word(w: Sequence[ALetter]) -> str:
        return " ".join(f"{s}:{v}" for s, v in w)

    def inverse_word(self, w: Sequence[ALetter]) -> tuple[ALetter, ...]:
        return tuple(ALetter(s, self._group[s].inv[v]) for s, v in reversed(w))

    # -- reduction

    def is_reduced(self, w: Sequence[ALetter]) -> bool:
        if len(w) <= 1:
            return True
        if any(w[i].side == w[i + 1].side for i in range(len(w) - 1)):
            return False
        return not any(self.in_C(s, v) for s, v in w)

    def _push(self, stack: list, x: ALetter) -> None:
        while True:
            if x.value == 0:
                return
            if not stack:
                stack.append(x)
                return
            top = stack[-1]
            if top.side == x.side:
                stack.pop()
                x = ALetter(x.side, self._group[x.side].mult[top.value][x.value])
            elif self.in_C(*x):
                stack.pop()
                y = self.transfer(x)
                x = ALetter(top.side, self._group[top.side].mult[top.value][y.value])
            elif self.in_C(*top):
                # only reachable when top is the sole letter
                stack.pop()
                y = self.transfer(top)
                x = ALetter(x.side, self._group[x.side].mult[y.value][x.value])
            else:
                stack.append(x)
                return

    def reduce(self, w: Sequence[ALetter]) -> tuple[ALetter, ...]:
        """Reduced word for the same element.

        Adjacent same-side letters are multiplied and C-letters are pushed into
        a neighbour; the stack invariant is that its contents are reduced.
        """
        stack: list[ALetter] = []
        for x in w:
            self._push(stack, ALetter(*x))
        return tuple(stack)

    # -- elements

    def gauge_orbit(self, g) -> "AGaugeOrbit":
        word = g.word if isinstance(g, AElement) else self.reduce(g)
        return AGaugeOrbit(self, word)

    def element(self, w: Sequence[ALetter]) -> AElement:
        r = self.reduce(w)
        if len(r) == 1:
            if r[0].side == "B" and self.in_C(*r[0]):
                r = (self.transfer(r[0]),)
            return AElement(r)
        orbit = AGaugeOrbit(self, r)
        return AElement(orbit.word(orbit.canonical_gauges()))

    def equals(self, u: Sequence[ALetter], v: Sequence[ALetter]) -> bool:
        return self.element(u) == self.element(v)

    identity = AElement(())

    def mul(self, g: AElement, h: AElement) -> AElement:
        return self.element(g.word + h.word)

    def inv(self, g: AElement) -> AElement:
        return self.element(self.inverse_word(g.word))

    def geodesic_length(self, g) -> int:
        if not isinstance(g, AElement):
            g = self.element(g)
        return len(g.word)

    def enumerate_geodesics(self, g, cap: int = 1 << 16) -> list[tuple[ALetter, ...]]:
        """All reduced words equal to ``g`` (these are exactly its geodesics)."""
        if not isinstance(g, AElement):
            g = self.element(g)
        words = list(self.gauge_orbit(g).members(cap))
        if len(g.word) == 1 and self.in_C(*g.word[0]):
            words.append((self.transfer(g.word[0]),))
        return words

    # -- abelianization

    def abelianization(self) -> "Abelianization":
        if self._ab is None:
            self._ab = Abelianization(self)
        return self._ab


class AGaugeOrbit(GaugeOrbit):
    """Reduced words u_0^-1 x_0 u_1, u_1^-1 x_1 u_2, ... with u_0 = u_n = 1."""

    def __init__(self, p: AmalgamPresentation, word: Sequence[ALetter]):
        self.p = p
        self.base = tuple(word)
        self.n_segments = len(self.base)
        self.gauge_order = p.C.order

    def slot(self, i: int, left: int, right: int) -> int:
        side, x = self.base[i]
        G = self.p.group(side)
        iota = self.p._iota[side]
        return G.mult[G.mult[G.inv[iota(left)]][x]][iota(right)]

    def segment(self, i: int, left: int, right: int) -> tuple:
        return (ALetter(self.base[i].side, self.slot(i, left, right)),)


class Abelianization:
    """G^ab for an amalgam: A^ab + B^ab with iota_A(c) identified with iota_B(c)."""

    def __init__(self, p: AmalgamPresentation):
        self.p = p
        nA, nB = p.A.order, p.B.order
        self._offset = {"A": 0, "B": nA}
        n = nA + nB
        rel = table_relations(p.A, 0, n) + table_relations(p.B, nA, n)
        for c in p.C.elements():
            row = [0] * n
            row[p.iotaA(c)] += 1
            row[nA + p.iotaB(c)] -= 1
            if any(row):
                rel.append(row)
        self.ncols = n
        self.relations = rel
        self.quotient = AbelianQuotient(rel, n)
        self.invariants = self.quotient.invariants

    def vector(self, w) -> list[int]:
        if isinstance(w, AElement):
            w = w.word
        vec = [0] * self.ncols
        for side, v in w:
            vec[self._offset[side] + v] += 1
        return vec

    def image(self, w) -> tuple[int, ...]:
        return self.quotient.image(self.vector(w))

    def in_commutator(self, w) -> bool:
        return self.quotient.is_trivial(self.vector(w))
