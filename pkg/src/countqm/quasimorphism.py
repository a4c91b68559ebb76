"""Counting functions c_w, quasimorphisms h_w = c_w - c_{w^-1}, and defect scans.

Works for either group model (amalgam or HNN). The model provides
``element``, ``gauge_orbit``, ``geodesic_length``, ``is_reduced``,
``inverse_word``, ``letters`` and ``mul``.
"""

from __future__ import annotations

import csv
import io
import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .matching import PatternAutomaton, count_nonoverlap

DEFECT_BOUND = 78


class PatternError(ValueError):
    """The pattern cannot be used with the gauge-orbit evaluator."""


class SearchSpaceTooLarge(RuntimeError):
    pass


class DefectBoundExceeded(AssertionError):
    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


def _as_element(model, g):
    if isinstance(g, (tuple, list)):
        return model.element(g)
    return g


def reduction_defect(model, w: Sequence) -> int | None:
    """Index of the first letter at which ``w`` stops being reduced, or None."""
    w = tuple(w)
    if model.is_reduced(w):
        return None
    for k in range(2, len(w) + 1):
        if not model.is_reduced(w[:k]):
            return k - 1
    return len(w) - 1


@dataclass(frozen=True)
class Pattern:
    word: tuple
    inverse: tuple
    square_reduced: bool

    def __len__(self) -> int:
        return len(self.word)


def make_pattern(model, w: Sequence, require_square_reduced: bool = True) -> Pattern:
    w = model.check_word(w)
    if len(w) < 2:
        raise PatternError(f"pattern must have length at least 2, got {len(w)}")
    bad = reduction_defect(model, w + w)
    if bad is not None and require_square_reduced:
        ww = w + w
        lo = max(bad - 2, 0)
        where = model.format_word(ww[lo : bad + 1])
        raise PatternError(
            f"pattern square not reduced: defect at position {bad} of w^2 ({where!r})"
        )
    return Pattern(w, model.inverse_word(w), bad is None)


@dataclass(frozen=True)
class QmValue:
    c_plus: int
    c_minus: int

    @property
    def h(self) -> int:
        return self.c_plus - self.c_minus


class CountingQuasimorphism:
    """h_w for a fixed model and pattern, with per-element caching.

    c_w(g) = |g| - min over gauge-orbit members of (length - disjoint count).
    Because w^2 is reduced a reduced realizer exists, and every reduced word
    for g lies in the orbit, so the minimum over the orbit is the infimum.
    """

    def __init__(self, model, w: Sequence, cache: bool = True):
        self.model = model
        self.pattern = w if isinstance(w, Pattern) else make_pattern(model, w)
        if not self.pattern.square_reduced:
            raise PatternError("pattern square not reduced")
        self._aut = PatternAutomaton(self.pattern.word)
        self._aut_inv = PatternAutomaton(self.pattern.inverse)
        self._cache: dict | None = {} if cache else None

    def _c(self, g, aut: PatternAutomaton) -> int:
        orbit = self.model.gauge_orbit(g)
        return orbit.min_length() - orbit.min_excess(aut)

    def c(self, g) -> int:
        return self._c(_as_element(self.model, g), self._aut)

    def c_inverse(self, g) -> int:
        return self._c(_as_element(self.model, g), self._aut_inv)

    def value(self, g) -> QmValue:
        g = _as_element(self.model, g)
        if self._cache is not None and g in self._cache:
            return self._cache[g]
        v = QmValue(self._c(g, self._aut), self._c(g, self._aut_inv))
        if self._cache is not None:
            self._cache[g] = v
        return v

    def h(self, g) -> int:
        return self.value(g).h

    __call__ = h

    def delta(self, x, y) -> int:
        x, y = _as_element(self.model, x), _as_element(self.model, y)
        return self.h(x) + self.h(y) - self.h(self.model.mul(x, y))


def c_w(model, g, w) -> int:
    return CountingQuasimorphism(model, w, cache=False).c(g)


def h_w(model, g, w) -> int:
    return CountingQuasimorphism(model, w, cache=False).h(g)


def delta_h(model, w, x, y) -> int:
    return CountingQuasimorphism(model, w).delta(x, y)


# -- brute-force oracle


class WordBall:
    """Every word of length <= radius, bucketed by the element it represents."""

    def __init__(self, model, radius: int, node_cap: int = 2_000_000):
        letters = model.letters()
        total = sum(len(letters) ** k for k in range(radius + 1))
        if total > node_cap:
            raise SearchSpaceTooLarge(
                f"{total} words up to length {radius} exceed the cap of {node_cap}"
            )
        self.model = model
        self.radius = radius
        self.buckets: dict = {}
        for k in range(radius + 1):
            for word in itertools.product(letters, repeat=k):
                self.buckets.setdefault(model.element(word), []).append(word)

    def length(self, g) -> int:
        return min(len(u) for u in self.buckets[g])

    def c(self, g, w: Sequence) -> int:
        """c_w(g) straight from the definition over all words in the ball.

        A word u longer than |g| |w| / (|w| - 1) has u - |u|_w > |g|, so it can
        never beat a geodesic; the ball must reach that length.
        """
        w = tuple(w)
        n = self.length(g)
        limit = (n * len(w)) // (len(w) - 1)
        if limit > self.radius:
            raise SearchSpaceTooLarge(f"need words up to length {limit}, ball has {self.radius}")
        best = min(len(u) - count_nonoverlap(u, w) for u in self.buckets[g] if len(u) <= limit)
        return n - best


def oracle_c_w(model, g, w, node_cap: int = 2_000_000) -> int:
    """c_w(g) by exhaustive search over all words; tiny instances only."""
    w = model.check_word(w)
    if len(w) < 2:
        raise PatternError("oracle needs |w| >= 2")
    g = _as_element(model, g)
    letters = model.letters()
    # find |g| by growing radius, then extend to the realizer bound
    n = 0
    while True:
        if sum(len(letters) ** k for k in range(n + 1)) > node_cap:
            raise SearchSpaceTooLarge("element too long for exhaustive search")
        if any(model.element(u) == g for u in itertools.product(letters, repeat=n)):
            break
        n += 1
    limit = (n * len(w)) // (len(w) - 1)
    return WordBall(model, limit, node_cap).c(g, w)


# -- defect scans


@dataclass(frozen=True)
class Exhaustive:
    radius: int

    def describe(self) -> str:
        return f"exhaustive(radius={self.radius})"


@dataclass(frozen=True)
class RandomPairs:
    count: int
    max_len: int
    seed: int

    def describe(self) -> str:
        return f"random(count={self.count}, max_len={self.max_len}, seed={self.seed})"


@dataclass
class DefectReport:
    pattern_id: str
    strategy: str
    bound: int = DEFECT_BOUND
    seed: int | None = None
    observed_max: int = 0
    histogram: Counter = field(default_factory=Counter)
    samples: list = field(default_factory=list)  # (x_len, y_len, delta_abs)

    @property
    def passed(self) -> bool:
        return self.observed_max <= self.bound

    @property
    def n_samples(self) -> int:
        return sum(self.histogram.values())

    def add(self, x_len: int, y_len: int, delta: int) -> None:
        d = abs(delta)
        self.samples.append((x_len, y_len, d))
        self.histogram[d] += 1
        self.observed_max = max(self.observed_max, d)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["x_len", "y_len", "delta_abs"])
        wr.writerows(self.samples)
        wr.writerow(["observed_max", "bound", "samples", "seed"])
        wr.writerow([self.observed_max, self.bound, self.n_samples, "" if self.seed is None else self.seed])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern_id,
            "strategy": self.strategy,
            "observed_max": self.observed_max,
            "bound": self.bound,
            "samples": self.n_samples,
            "seed": self.seed,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "passed": self.passed,
        }


def ball_elements(model, radius: int) -> list:
    """Elements of word length <= radius, in breadth-first order."""
    seen = {model.identity: 0}
    frontier = [model.identity]
    gens = [model.element((x,)) for x in model.letters()]
    for r in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for s in gens:
                h = model.mul(g, s)
                if h not in seen:
                    seen[h] = r
                    nxt.append(h)
        frontier = nxt
    return list(seen)


def random_reduced_word(model, length: int, rng: random.Random) -> tuple:
    """A uniformly-stepped reduced word of exactly ``length`` letters."""
    letters = model.letters()
    word: tuple = ()
    while len(word) < length:
        tail = word[-2:]
        cands = [x for x in letters if model.is_reduced(tail + (x,))]
        if not word and length >= 2:
            cands = [x for x in cands if any(model.is_reduced((x, y)) for y in letters)]
        word += (rng.choice(cands),)
    return word


def defect_scan(model, w, strategy, pattern_id: str = "w", bound: int = DEFECT_BOUND,
                fail_fast: bool = True) -> DefectReport:
    """Evaluate |delta h_w(x, y)| over a family of pairs.

    Raises :class:`DefectBoundExceeded` with the witness pair on the first
    sample above ``bound`` when ``fail_fast`` is set.
    """
    qm = w if isinstance(w, CountingQuasimorphism) else CountingQuasimorphism(model, w)
    if isinstance(strategy, Exhaustive):
        elems = ball_elements(model, strategy.radius)
        pairs = itertools.product(elems, repeat=2)
        report = DefectReport(pattern_id, strategy.describe(), bound)
    elif isinstance(strategy, RandomPairs):
        rng = random.Random(strategy.seed)
        words = []
        for _ in range(strategy.count):
            lx = rng.randint(0, strategy.max_len)
            x = random_reduced_word(model, lx, rng)
            ly = rng.randint(0, strategy.max_len)
            y = random_reduced_word(model, ly, rng)
            words.append((x, y))
        pairs = ((model.element(x), model.element(y)) for x, y in words)
        report = DefectReport(pattern_id, strategy.describe(), bound, seed=strategy.seed)
    else:
        raise TypeError(f"unknown strategy {strategy!r}")
    for x, y in pairs:
        d = qm.delta(x, y)
        report.add(model.geodesic_length(x), model.geodesic_length(y), d)
        if fail_fast and abs(d) > bound:
            raise DefectBoundExceeded(
                f"|delta h| = {abs(d)} > {bound} at x = {x}, y = {y}", (x, y)
            )
    return report
