"""Non-overlapping occurrence counting for a single pattern."""

from __future__ import annotations

from typing import Hashable, Sequence


def count_nonoverlap(text: Sequence, pat: Sequence) -> int:
    """Maximum number of pairwise disjoint occurrences of ``pat`` in ``text``.

    Leftmost greedy: take the earliest occurrence, skip past it, repeat.
    For one pattern this is optimal (exchange argument on the earliest end).
    """
    m = len(pat)
    if m == 0:
        raise ValueError("pattern must be non-empty")
    text, pat = tuple(text), tuple(pat)
    n = len(text)
    count = i = 0
    while i + m <= n:
        if text[i : i + m] == pat:
            count += 1
            i += m
        else:
            i += 1
    return count


class PatternAutomaton:
    """KMP matcher over arbitrary hashable letters.

    States are matched-prefix lengths ``0..len(pat)-1``. ``step`` returns the
    next state, with ``len(pat)`` meaning a full match; callers that count
    disjoint occurrences reset to 0 after an accept.
    """

    def __init__(self, pat: Sequence[Hashable]):
        pat = tuple(pat)
        if not pat:
            raise ValueError("pattern must be non-empty")
        self.pat = pat
        self.accept = len(pat)
        fail = [0] * (len(pat) + 1)
        k = 0
        for i in range(1, len(pat)):
            while k and pat[i] != pat[k]:
                k = fail[k]
            if pat[i] == pat[k]:
                k += 1
            fail[i + 1] = k
        self.fail = fail
        self._memo: dict = {}

    def step(self, q: int, letter) -> int:
        key = (q, letter)
        r = self._memo.get(key)
        if r is None:
            k = q
            pat = self.pat
            while k and pat[k] != letter:
                k = self.fail[k]
            r = k + 1 if pat[k] == letter else 0
            self._memo[key] = r
        return r

    def count(self, text: Sequence) -> int:
        q = c = 0
        for x in text:
            q = self.step(q, x)
            if q == self.accept:
                c += 1
                q = 0
        return c
