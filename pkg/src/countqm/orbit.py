"""Gauge orbits: chains of words sharing one group element.

An orbit is a sequence of segments ``0..n-1``. Between segment ``i-1`` and
segment ``i`` sits junction ``i`` carrying a gauge value from the finite
subgroup C (as an index of the abstract group C). Junctions ``0`` and ``n``
are pinned to the identity. Segment ``i`` emits a short tuple of letters
determined by the gauges on its two sides, and the member word is the
concatenation of all segments.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .matching import PatternAutomaton


class OrbitTooLarge(RuntimeError):
    pass


class GaugeOrbit:
    n_segments: int
    gauge_order: int

    def slot(self, i: int, left: int, right: int) -> int:
        """Group value of segment ``i`` under the given junction gauges."""
        raise NotImplementedError

    def segment(self, i: int, left: int, right: int) -> tuple:
        raise NotImplementedError

    @property
    def n_junctions(self) -> int:
        return max(self.n_segments - 1, 0)

    @property
    def size(self) -> int:
        return self.gauge_order**self.n_junctions

    def _choices(self, j: int) -> range:
        if j <= 0 or j >= self.n_segments:
            return range(1)
        return range(self.gauge_order)

    def word(self, gauges: tuple[int, ...]) -> tuple:
        g = (0, *gauges, 0)
        out: list = []
        for i in range(self.n_segments):
            out.extend(self.segment(i, g[i], g[i + 1]))
        return tuple(out)

    def members(self, cap: int | None = None) -> Iterator[tuple]:
        """Every member word, one per gauge assignment."""
        if cap is not None and self.size > cap:
            raise OrbitTooLarge(
                f"orbit has {self.size} members (cap {cap}); use the dynamic-programming path"
            )
        for gauges in itertools.product(range(self.gauge_order), repeat=self.n_junctions):
            yield self.word(gauges)

    def canonical_gauges(self) -> tuple[int, ...]:
        """Left to right, pick the gauge that makes each slot's index least."""
        chosen = []
        left = 0
        for j in range(1, self.n_segments):
            right = min(self._choices(j), key=lambda r: self.slot(j - 1, left, r))
            chosen.append(right)
            left = right
        return tuple(chosen)

    def min_length(self) -> int:
        best = {0: 0}
        for i in range(self.n_segments):
            new: dict[int, int] = {}
            for left, cost in best.items():
                for right in self._choices(i + 1):
                    c = cost + len(self.segment(i, left, right))
                    if c < new.get(right, c + 1):
                        new[right] = c
            best = new
        return min(best.values())

    def min_excess(self, automaton: PatternAutomaton) -> int:
        """min over members of ``len(word) - disjoint_count(word)``.

        State is (junction gauge, matcher state); counting resets the matcher
        on every accept, which is the leftmost-greedy disjoint count.
        """
        accept = automaton.accept
        step = automaton.step
        states = {(0, 0): 0}
        for i in range(self.n_segments):
            seg_cache: dict = {}
            new: dict = {}
            for (left, q), cost in states.items():
                for right in self._choices(i + 1):
                    key = (left, right)
                    letters = seg_cache.get(key)
                    if letters is None:
                        letters = seg_cache[key] = self.segment(i, left, right)
                    c, qq = cost, q
                    for x in letters:
                        qq = step(qq, x)
                        if qq == accept:
                            qq = 0
                        else:
                            c += 1
                    nk = (right, qq)
                    old = new.get(nk)
                    if old is None or c < old:
                        new[nk] = c
            states = new
        return min(states.values())
