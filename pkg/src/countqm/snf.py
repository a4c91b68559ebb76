"""Exact Smith normal form over the integers.

Python ints are arbitrary precision, so no overflow handling is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors d_1 | d_2 | ... of Z^n / L; 0 stands for a free Z."""

    factors: tuple[int, ...]

    def __post_init__(self):
        nz = [d for d in self.factors if d != 0]
        if any(d < 0 for d in self.factors):
            raise ValueError("invariant factors must be non-negative")
        if any(b % a for a, b in zip(nz, nz[1:])):
            raise ValueError(f"factors {self.factors} violate the divisibility chain")
        if self.factors and 0 in self.factors:
            first_zero = self.factors.index(0)
            if any(self.factors[first_zero:]):
                raise ValueError("zero factors must come last")

    @property
    def nontrivial(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d != 1)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.factors if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)

    def __str__(self) -> str:
        parts = [f"Z{d}" if d else "Z" for d in self.nontrivial]
        return " + ".join(parts) if parts else "0"


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def smith_decomposition(rel: Sequence[Sequence[int]], ncols: int):
    """Return ``(diag, V)`` with ``U @ rel @ V = D`` for some unimodular U.

    ``diag`` has length ``ncols`` (zero-padded) and satisfies the
    divisibility chain; ``V`` is the unimodular column transform, needed to
    push vectors into the quotient ``Z^ncols / rowspan(rel)``.
    """
    M = [[int(v) for v in row] for row in rel]
    for row in M:
        if len(row) != ncols:
            raise ValueError(f"relation row of length {len(row)}, expected {ncols}")
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    m = len(M)

    def col_op(dst, src, k):
        # column dst += k * column src
        for row in M:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    def col_swap(i, j):
        _swap_cols(M, i, j)
        _swap_cols(V, i, j)

    t = 0
    while t < min(m, ncols):
        pivot = None
        for i in range(t, m):
            for j in range(t, ncols):
                if M[i][j] and (pivot is None or abs(M[i][j]) < abs(M[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        _swap_rows(M, t, pivot[0])
        col_swap(t, pivot[1])
        while True:
            done = True
            p = M[t][t]
            for i in range(t + 1, m):
                q = M[i][t] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                if M[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = M[t][j] // p
                if q:
                    col_op(j, t, -q)
                if M[t][j]:
                    done = False
            if done:
                # pivot must divide the rest of the submatrix
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, ncols) if M[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                M[t] = [a + b for a, b in zip(M[t], M[bad[0]])]
                continue
            # move the smallest nonzero entry of row/col t into the pivot
            best = (abs(p), "r", t)
            for i in range(t + 1, m):
                if M[i][t] and abs(M[i][t]) < best[0]:
                    best = (abs(M[i][t]), "r", i)
            for j in range(t + 1, ncols):
                if M[t][j] and abs(M[t][j]) < best[0]:
                    best = (abs(M[t][j]), "c", j)
            if best[1] == "r" and best[2] != t:
                _swap_rows(M, t, best[2])
            elif best[1] == "c":
                col_swap(t, best[2])
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
        t += 1
    diag = [M[i][i] if i < m else 0 for i in range(ncols)]
    return diag, V


def smith_invariants(rel: Sequence[Sequence[int]], ncols: int) -> AbelianInvariants:
    """Invariant factors of ``Z^ncols`` modulo the row span of ``rel``."""
    diag, _ = smith_decomposition(rel, ncols)
    return AbelianInvariants(_normalize(diag))


def _normalize(diag) -> tuple[int, ...]:
    nz = [d for d in diag if d]
    return tuple(nz) + (0,) * (len(diag) - len(nz))


class AbelianQuotient:
    """``Z^n / rowspan(rel)`` with a map sending vectors to canonical coordinates.

    Coordinates are reduced modulo each invariant factor (free factors kept
    as-is, trivial factors dropped), so a vector is in the relation lattice
    iff its image is all zeros.
    """

    def __init__(self, rel: Sequence[Sequence[int]], ncols: int):
        self.ncols = ncols
        diag, V = smith_decomposition(rel, ncols)
        self._diag = diag
        self._V = V
        self.invariants = AbelianInvariants(_normalize(diag))
        self._keep = [j for j, d in enumerate(diag) if d != 1]

    def image(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)}, expected {self.ncols}")
        out = []
        for j in self._keep:
            s = sum(v * self._V[i][j] for i, v in enumerate(vec) if v)
            d = self._diag[j]
            out.append(s % d if d else s)
        return tuple(out)

    def is_trivial(self, vec: Sequence[int]) -> bool:
        return not any(self.image(vec))


def table_relations(G, offset: int, ncols: int) -> list[list[int]]:
    """Relations e_x + e_y - e_xy for a finite group living in columns offset.."""
    rows = []
    seen = set()
    for x in G.elements():
        for y in G.elements():
            row = [0] * ncols
            row[offset + x] += 1
            row[offset + y] += 1
            row[offset + G.mult[x][y]] -= 1
            key = tuple(row)
            if any(row) and key not in seen:
                seen.add(key)
                rows.append(row)
    return rows
