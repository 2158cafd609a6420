"""Independent reference implementations, written straight from the
definitions and sharing no code with the package's search routines."""
from __future__ import annotations

import itertools


def order_isomorphic(a, b) -> bool:
    return len(a) == len(b) and all(
        (a[i] < a[j]) == (b[i] < b[j]) for i in range(len(a)) for j in range(i + 1, len(a)))


def subset_occurrences(p, q) -> list[tuple[int, ...]]:
    """All 1-based index sets of ``p`` order-isomorphic to ``q``, lexicographic."""
    return [tuple(i + 1 for i in idx)
            for idx in itertools.combinations(range(len(p)), len(q))
            if order_isomorphic([p[i] for i in idx], q)]


def subset_count(p, q) -> int:
    return len(subset_occurrences(p, q))


def all_perms(n):
    return itertools.permutations(range(1, n + 1))


def filter_count(n, q, copies) -> int:
    return sum(1 for p in all_perms(n) if subset_count(p, q) == copies)


def longest_decreasing_from(p, i) -> int:
    """Longest decreasing subsequence starting at 0-based ``i``, by trying
    every subset of the later positions."""
    rest = range(i + 1, len(p))
    best = 1
    for m in range(1, len(p) - i):
        for idx in itertools.combinations(rest, m):
            seq = [p[i]] + [p[j] for j in idx]
            if all(x > y for x, y in zip(seq, seq[1:])):
                best = max(best, m + 1)
    return best


def rl_minima(p):
    return [(i + 1, p[i]) for i in range(len(p)) if all(p[i] < p[j] for j in range(i + 1, len(p)))]


def skew_block_count(p) -> int:
    n = len(p)
    cuts = sum(1 for i in range(1, n) if min(p[:i]) > max(p[i:]))
    return cuts + 1 if n else 0


def catalan_by_recurrence(n: int) -> int:
    c = [1]
    for m in range(1, n + 1):
        c.append(sum(c[i] * c[m - 1 - i] for i in range(m)))
    return c[n]
