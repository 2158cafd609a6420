"""
Permutation algebra: one-line words, pattern containment, co-rank, sums and
skew blocks.

Permutations are words over ``1..n`` in one-line notation.  Positions and
values are 1-based everywhere they cross the public surface (``Occurrence``
indices, right-to-left minima, ``dominates`` arguments).  The canonical text
form is the values separated by single spaces, which stays unambiguous once
``n >= 10``.

>>> p = parse("3 1 6 2 5 4")
>>> right_to_left_minima(p)
[(2, 1), (4, 2), (6, 4)]
>>> str(skew_sum(parse("1 2"), parse("1")))
'2 3 1'
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "PermutationError", "DuplicateValue", "ValueOutOfRange", "NonNumericToken",
    "Permutation", "Occurrence", "CorankProfile",
    "parse", "standardize", "count_occurrences", "occurrences", "avoids",
    "exactly_one", "right_to_left_minima", "corank_profile", "direct_sum",
    "skew_sum", "dominates", "skew_blocks", "reverse", "complement", "monotone",
    "is_decreasing", "count_ending_at_last",
]


class PermutationError(ValueError):
    """Raised when a word is not a permutation of 1..n."""


class DuplicateValue(PermutationError):
    pass


class ValueOutOfRange(PermutationError):
    pass


class NonNumericToken(PermutationError):
    pass


class Permutation(tuple):
    """A permutation of ``1..n`` in one-line notation; also used as a pattern.

    Behaves as an immutable tuple of ints (hashable, lexicographically
    ordered).  ``str`` gives the canonical space-separated text form.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()) -> Permutation:
        word = tuple(entries)
        n = len(word)
        seen = bytearray(n + 1)
        for v in word:
            if not isinstance(v, int) or isinstance(v, bool):
                raise NonNumericToken(f"entry {v!r} is not an integer")
            if not 1 <= v <= n:
                raise ValueOutOfRange(f"value {v} outside 1..{n}")
            if seen[v]:
                raise DuplicateValue(f"value {v} appears more than once")
            seen[v] = 1
        return tuple.__new__(cls, word)

    @classmethod
    def _trusted(cls, word: Iterable[int]) -> Permutation:
        # skips validation; callers guarantee a permutation of 1..n
        return tuple.__new__(cls, word)

    @property
    def n(self) -> int:
        return len(self)

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def dotted(self) -> str:
        """Values joined by dots, as used in fixture CSV files."""
        return ".".join(map(str, self))

    @classmethod
    def from_dotted(cls, text: str) -> Permutation:
        return parse(text.replace(".", " "))


class Occurrence(tuple):
    """Strictly increasing 1-based positions witnessing one copy of a pattern."""

    __slots__ = ()

    def __new__(cls, indices: Iterable[int]) -> Occurrence:
        idx = tuple(indices)
        if any(i < 1 for i in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices {idx} are not strictly increasing positive positions")
        return tuple.__new__(cls, idx)

    def __repr__(self) -> str:
        return f"Occurrence{tuple(self)!r}"


@dataclass(frozen=True)
class CorankProfile:
    """Co-rank of every position of ``host``: the length of the longest
    decreasing subsequence starting there."""

    host: Permutation
    coranks: tuple[int, ...]

    def max(self) -> int:
        return max(self.coranks, default=0)

    def positions_with(self, value: int) -> list[int]:
        """1-based positions whose co-rank equals ``value``."""
        return [i + 1 for i, c in enumerate(self.coranks) if c == value]

    def by_value(self) -> dict[int, int]:
        """Map each entry value of the host to its co-rank."""
        return dict(zip(self.host, self.coranks))


def parse(text: str) -> Permutation:
    """Parse the canonical text form.

    >>> parse("")
    Permutation('')
    >>> parse("1 1 2")
    Traceback (most recent call last):
    ...
    onecopy.core.DuplicateValue: value 1 appears more than once
    """
    values = []
    for token in text.split():
        try:
            values.append(int(token))
        except ValueError:
            raise NonNumericToken(f"token {token!r} is not a decimal integer") from None
    return Permutation(values)


def standardize(values: Sequence[int]) -> Permutation:
    """Renumber distinct values to ``1..m`` keeping their relative order."""
    rank = {v: r for r, v in enumerate(sorted(values), 1)}
    if len(rank) != len(values):
        raise DuplicateValue("cannot standardize a word with repeated values")
    return Permutation._trusted(rank[v] for v in values)


def is_decreasing(q: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(q, q[1:]))


def _is_increasing(q: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(q, q[1:]))


_INF = float("inf")


@functools.lru_cache(maxsize=None)
def _windows(q: tuple[int, ...], backward: bool) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """For each pattern position, the already-placed positions holding the
    nearest smaller and nearest larger pattern value (-1 if none).

    Placement order is left to right, or right to left when ``backward``.
    """
    k = len(q)
    order = range(k - 1, -1, -1) if backward else range(k)
    lo, hi = [-1] * k, [-1] * k
    placed: list[int] = []
    for t in order:
        below = [s for s in placed if q[s] < q[t]]
        above = [s for s in placed if q[s] > q[t]]
        if below:
            lo[t] = max(below, key=q.__getitem__)
        if above:
            hi[t] = min(above, key=q.__getitem__)
        placed.append(t)
    return tuple(lo), tuple(hi)


class _Saturated(Exception):
    pass


def _count_monotone(w: Sequence[int], k: int, decreasing: bool, cap: int | None) -> int:
    # ends[j][l-1] = number of monotone subsequences of length l ending at j
    ends: list[list[int]] = []
    total = 0
    for j, x in enumerate(w):
        row = [1] + [0] * (k - 1)
        for i in range(j):
            if (w[i] > x) if decreasing else (w[i] < x):
                prev = ends[i]
                for length in range(1, k):
                    row[length] += prev[length - 1]
        ends.append(row)
        total += row[k - 1]
        if cap is not None and total >= cap:
            return cap
    return total


def _count_dfs(w: Sequence[int], q: tuple[int, ...], cap: int | None,
               collect: list | None = None) -> int:
    n, k = len(w), len(q)
    lo, hi = _windows(q, False)
    chosen_val = [0] * k
    chosen_pos = [0] * k
    count = 0

    def rec(t: int, start: int) -> None:
        nonlocal count
        lo_v = chosen_val[lo[t]] if lo[t] >= 0 else -_INF
        hi_v = chosen_val[hi[t]] if hi[t] >= 0 else _INF
        last = t == k - 1
        for j in range(start, n - k + t + 1):
            v = w[j]
            if lo_v < v < hi_v:
                if last:
                    count += 1
                    if collect is not None:
                        chosen_pos[t] = j
                        collect.append(Occurrence(i + 1 for i in chosen_pos))
                    if cap is not None and count >= cap:
                        raise _Saturated
                else:
                    chosen_val[t] = v
                    chosen_pos[t] = j
                    rec(t + 1, j + 1)

    try:
        rec(0, 0)
    except _Saturated:
        pass
    return count


def count_occurrences(p: Sequence[int], q: Sequence[int], cap: int | None = None) -> int:
    """Number of copies of pattern ``q`` in ``p``.

    With ``cap`` the search stops as soon as ``cap`` copies are found and
    returns ``cap``.  Monotone patterns are counted by dynamic programming over
    decreasing (or increasing) chains; other patterns by a depth-first search
    whose candidates are restricted to the value window fixed by the entries
    already placed.

    >>> count_occurrences(parse("2 5 1 4 7 3 8 6"), parse("3 2 1"))
    1
    """
    q = tuple(q)
    if not q:
        raise ValueError("pattern must be nonempty")
    if cap is not None and cap < 1:
        raise ValueError("cap must be at least 1")
    if len(q) > len(p):
        return 0
    if is_decreasing(q):
        return _count_monotone(p, len(q), True, cap)
    if _is_increasing(q):
        return _count_monotone(p, len(q), False, cap)
    return _count_dfs(p, q, cap)


def occurrences(p: Sequence[int], q: Sequence[int]) -> list[Occurrence]:
    """All copies of ``q`` in ``p``, lexicographic by index set."""
    q = tuple(q)
    if not q:
        raise ValueError("pattern must be nonempty")
    found: list[Occurrence] = []
    if len(q) <= len(p):
        _count_dfs(p, q, None, found)
    return found


def avoids(p: Sequence[int], q: Sequence[int]) -> bool:
    return count_occurrences(p, q, cap=1) == 0


def exactly_one(p: Sequence[int], q: Sequence[int]) -> bool:
    return count_occurrences(p, q, cap=2) == 1


def count_ending_at_last(w: Sequence[int], q: tuple[int, ...], cap: int | None = None) -> int:
    """Copies of ``q`` in the word ``w`` that use its last entry.

    Used to extend prefix counts one entry at a time during enumeration.
    """
    n, k = len(w), len(q)
    if k > n:
        return 0
    if k == 1:
        return 1
    lo, hi = _windows(q, True)
    chosen = [0] * k
    chosen[k - 1] = w[n - 1]
    count = 0

    def rec(t: int, stop: int) -> None:
        nonlocal count
        lo_v = chosen[lo[t]] if lo[t] >= 0 else -_INF
        hi_v = chosen[hi[t]] if hi[t] >= 0 else _INF
        for j in range(stop - 1, t - 1, -1):
            v = w[j]
            if lo_v < v < hi_v:
                if t == 0:
                    count += 1
                    if cap is not None and count >= cap:
                        raise _Saturated
                else:
                    chosen[t] = v
                    rec(t - 1, j)

    # the last pattern entry is pinned to the last host entry
    try:
        rec(k - 2, n - 1)
    except _Saturated:
        pass
    return count


def right_to_left_minima(p: Sequence[int]) -> list[tuple[int, int]]:
    """``(position, value)`` pairs of the entries smaller than everything to
    their right, in increasing position order."""
    out = []
    low = _INF
    for i in range(len(p) - 1, -1, -1):
        if p[i] < low:
            low = p[i]
            out.append((i + 1, p[i]))
    out.reverse()
    return out


def corank_profile(p: Sequence[int]) -> CorankProfile:
    """Co-ranks computed right to left.

    >>> corank_profile(parse("3 6 1 2 5 4")).by_value()
    {3: 2, 6: 3, 1: 1, 2: 1, 5: 2, 4: 1}
    """
    n = len(p)
    ranks = [1] * n
    for i in range(n - 2, -1, -1):
        x = p[i]
        best = 0
        for j in range(i + 1, n):
            if p[j] < x and ranks[j] > best:
                best = ranks[j]
        ranks[i] = best + 1
    host = p if isinstance(p, Permutation) else standardize(p)
    return CorankProfile(host, tuple(ranks))


def direct_sum(a: Sequence[int], b: Sequence[int]) -> Permutation:
    m = len(a)
    return Permutation._trusted((*a, *(v + m for v in b)))


def skew_sum(a: Sequence[int], b: Sequence[int]) -> Permutation:
    m = len(b)
    return Permutation._trusted((*(v + m for v in a), *b))


def dominates(p: Sequence[int], i: int, indices: Iterable[int]) -> bool:
    """True iff the point at 1-based position ``i`` lies northwest of every
    point at the given positions (vacuously true for none)."""
    x = p[i - 1]
    return all(i < j and x > p[j - 1] for j in indices)


def skew_blocks(q: Sequence[int]) -> list[Permutation]:
    """Maximal skew-indecomposable factors, left to right, each standardized.

    >>> [str(b) for b in skew_blocks(parse("3 5 4 1 2"))]
    ['1 3 2', '1 2']
    """
    if not q:
        raise ValueError("pattern must be nonempty")
    n = len(q)
    suffix_max = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_max[i] = max(q[i], suffix_max[i + 1])
    blocks, start, low = [], 0, _INF
    for i in range(n):
        low = min(low, q[i])
        if i == n - 1 or low > suffix_max[i + 1]:
            blocks.append(standardize(q[start:i + 1]))
            start = i + 1
    return blocks


def reverse(p: Sequence[int]) -> Permutation:
    return Permutation._trusted(reversed(tuple(p)))


def complement(p: Sequence[int]) -> Permutation:
    n = len(p)
    return Permutation._trusted(n + 1 - v for v in p)


def monotone(k: int, decreasing: bool = True) -> Permutation:
    """``k (k-1) ... 1`` when decreasing, else ``1 2 ... k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return Permutation._trusted(range(k, 0, -1) if decreasing else range(1, k + 1))
