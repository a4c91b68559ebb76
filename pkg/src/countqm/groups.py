"""Finite groups given by multiplication tables.

Elements are dense indices ``0..order-1`` and the identity is always ``0``.
Everything above this module speaks indices only.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class GroupValidationError(ValueError):
    """A table, subgroup or map failed validation.

    ``witness`` holds the offending elements (a triple for associativity,
    a pair for homomorphism / injectivity failures).
    """

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    name: str = ""

    identity = 0

    def mul(self, x: int, y: int) -> int:
        return self.mult[x][y]

    def prod(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = self.mult[r][x]
        return r

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        m = self.mult
        return all(m[x][y] == m[y][x] for x in self.elements() for y in range(x))

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mult[y][x]
            k += 1
        return k

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or 'table'}, order={self.order})"


def _check_index(G: FiniteGroup, x: int) -> int:
    if not isinstance(x, int) or not 0 <= x < G.order:
        raise GroupValidationError(f"element index {x!r} out of range for order {G.order}", (x,))
    return x


def group_from_table(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Validate a Cayley table and wrap it.

    Row/column 0 must be the identity. Associativity is checked on every
    triple, so keep tables small.
    """
    n = len(table)
    if n == 0:
        raise GroupValidationError("empty table")
    mult = tuple(tuple(int(v) for v in row) for row in table)
    for i, row in enumerate(mult):
        if len(row) != n:
            raise GroupValidationError(f"row {i} has length {len(row)}, expected {n}", (i,))
        for v in row:
            if not 0 <= v < n:
                raise GroupValidationError(f"entry {v} in row {i} out of range", (i, v))
    for x in range(n):
        if mult[0][x] != x or mult[x][0] != x:
            raise GroupValidationError(f"0 is not an identity: fails at {x}", (0, x))
    inv = []
    for x in range(n):
        ys = [y for y in range(n) if mult[x][y] == 0]
        if len(ys) != 1 or mult[ys[0]][x] != 0:
            raise GroupValidationError(f"element {x} has no two-sided inverse", (x,))
        inv.append(ys[0])
    for x, y, z in itertools.product(range(n), repeat=3):
        if mult[mult[x][y]][z] != mult[x][mult[y][z]]:
            raise GroupValidationError(f"not associative on ({x}, {y}, {z})", (x, y, z))
    return FiniteGroup(n, mult, tuple(inv), name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupValidationError(f"cyclic order must be positive, got {n}")
    mult = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FiniteGroup(n, mult, inv, f"Z{n}")


def direct_product(*factors: FiniteGroup) -> FiniteGroup:
    """Direct product; index is mixed radix with the last factor fastest."""
    if not factors:
        return cyclic(1)
    sizes = [F.order for F in factors]
    coords = list(itertools.product(*(range(s) for s in sizes)))
    index = {c: i for i, c in enumerate(coords)}
    mult = tuple(
        tuple(index[tuple(F.mult[a][b] for F, a, b in zip(factors, cx, cy))] for cy in coords)
        for cx in coords
    )
    inv = tuple(index[tuple(F.inv[a] for F, a in zip(factors, cx))] for cx in coords)
    name = "x".join(F.name or "?" for F in factors)
    return FiniteGroup(len(coords), mult, inv, name)


# -- group-spec grammar: cyclic:n | product:[spec,...] | table:[[...],...]


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "[{(":
            depth += 1
        elif ch in "]})":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail:
        parts.append(tail)
    return parts


def build_group(spec) -> FiniteGroup:
    """Build a group from ``cyclic:n``, ``product:[...]``, ``table:[[...]]``.

    ``spec`` may also be an already-parsed form: a dict like
    ``{"cyclic": 6}``, ``{"product": [...]}``, ``{"table": [[...]]}``,
    or a bare list-of-lists table.
    """
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, Mapping):
        if "cyclic" in spec:
            return cyclic(int(spec["cyclic"]))
        if "product" in spec:
            return direct_product(*(build_group(s) for s in spec["product"]))
        if "table" in spec:
            return group_from_table(spec["table"])
        raise GroupValidationError(f"unknown group spec {spec!r}")
    if isinstance(spec, (list, tuple)):
        return group_from_table(spec)
    if not isinstance(spec, str):
        raise GroupValidationError(f"unknown group spec {spec!r}")
    s = spec.strip()
    m = re.fullmatch(r"cyclic\s*:\s*(\d+)", s)
    if m:
        return cyclic(int(m.group(1)))
    m = re.fullmatch(r"product\s*:\s*\[(.*)\]", s, re.S)
    if m:
        return direct_product(*(build_group(p) for p in _split_top(m.group(1))))
    m = re.fullmatch(r"table\s*:\s*(\[.*\])", s, re.S)
    if m:
        try:
            table = json.loads(m.group(1))
        except json.JSONDecodeError as exc:
            raise GroupValidationError(f"bad table literal: {exc}") from None
        return group_from_table(table)
    raise GroupValidationError(f"cannot parse group spec {spec!r}")


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    elements: tuple[int, ...]

    members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.elements))

    def __contains__(self, x: int) -> bool:
        return x in self.members

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self) -> int:
        return self.parent.order // self.order

    def as_group(self) -> tuple[FiniteGroup, "Embedding"]:
        """The subgroup as an abstract group plus its inclusion map."""
        elts = self.elements  # sorted, so 0 comes first
        pos = {x: i for i, x in enumerate(elts)}
        P = self.parent
        mult = tuple(tuple(pos[P.mult[x][y]] for y in elts) for x in elts)
        inv = tuple(pos[P.inv[x]] for x in elts)
        H = FiniteGroup(len(elts), mult, inv, f"sub({P.name})")
        return H, Embedding(H, P, elts)


def subgroup_closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    seen = {0}
    frontier = [_check_index(G, g) for g in gens]
    while frontier:
        x = frontier.pop()
        if x in seen:
            continue
        seen.add(x)
        frontier.extend(G.mult[x][y] for y in list(seen))
        frontier.extend(G.mult[y][x] for y in list(seen))
    return Subgroup(G, tuple(sorted(seen)))


def subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Validate an explicit element list as a subgroup."""
    elts = sorted({_check_index(G, x) for x in elements} | {0})
    s = set(elts)
    for x in elts:
        if G.inv[x] not in s:
            raise GroupValidationError(f"{x} in subgroup but its inverse is not", (x,))
        for y in elts:
            if G.mult[x][y] not in s:
                raise GroupValidationError(f"subgroup not closed: {x}*{y}", (x, y))
    return Subgroup(G, tuple(elts))


def double_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup) -> list[tuple[int, ...]]:
    """Partition of G into classes H g K, each sorted, ordered by least member.

    ``len(result)`` is |H\\G/K|.
    """
    for S in (H, K):
        if S.parent is not G:
            for x in S.elements:
                _check_index(G, x)
    assigned: set[int] = set()
    classes = []
    for g in G.elements():
        if g in assigned:
            continue
        cls = sorted({G.mult[G.mult[h][g]][k] for h in H.elements for k in K.elements})
        assigned.update(cls)
        classes.append(tuple(cls))
    return classes


def cosets(G: FiniteGroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets gH."""
    trivial = Subgroup(G, (0,))
    return double_cosets(G, trivial, H)


@dataclass(frozen=True)
class Embedding:
    source: FiniteGroup = field(repr=False)
    target: FiniteGroup = field(repr=False)
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self) -> Subgroup:
        return Subgroup(self.target, tuple(sorted(set(self.map))))

    def preimage(self) -> dict[int, int]:
        return {y: x for x, y in enumerate(self.map)}


def check_embedding(source: FiniteGroup, target: FiniteGroup, mapping) -> Embedding:
    """Validate an injective homomorphism ``source -> target``.

    ``mapping`` is a sequence indexed by source element, or a dict; a dict
    may omit the identity.
    """
    if isinstance(mapping, Mapping):
        m = {int(k): int(v) for k, v in mapping.items()}
        m.setdefault(0, 0)
        missing = [x for x in source.elements() if x not in m]
        if missing:
            raise GroupValidationError(f"map undefined on {missing}", tuple(missing))
        table = tuple(m[x] for x in source.elements())
    else:
        table = tuple(int(v) for v in mapping)
        if len(table) != source.order:
            raise GroupValidationError(f"map has {len(table)} entries, source order {source.order}")
    for y in table:
        _check_index(target, y)
    for x in source.elements():
        for y in source.elements():
            if table[source.mult[x][y]] != target.mult[table[x]][table[y]]:
                raise GroupValidationError(
                    f"not a homomorphism: f({x}*{y}) != f({x})*f({y})", (x, y)
                )
    seen: dict[int, int] = {}
    for x, y in enumerate(table):
        if y in seen:
            raise GroupValidationError(
                f"not injective: {seen[y]} and {x} both map to {y}", (seen[y], x)
            )
        seen[y] = x
    return Embedding(source, target, table)


def parse_map(spec) -> dict[int, int]:
    """``map:{1->3, 2->0}`` or a plain dict into ``{src: tgt}``."""
    if isinstance(spec, Mapping):
        return {int(k): int(v) for k, v in spec.items()}
    if isinstance(spec, (list, tuple)):
        return {i: int(v) for i, v in enumerate(spec)}
    s = str(spec).strip()
    m = re.fullmatch(r"(?:map\s*:\s*)?\{(.*)\}", s, re.S)
    if not m:
        raise GroupValidationError(f"cannot parse map {spec!r}")
    out = {}
    for part in _split_top(m.group(1)):
        kv = re.fullmatch(r"\s*(\d+)\s*(?:->|→|:)\s*(\d+)\s*", part)
        if not kv:
            raise GroupValidationError(f"bad map entry {part!r}")
        out[int(kv.group(1))] = int(kv.group(2))
    return out
