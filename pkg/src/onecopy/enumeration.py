"""
Enumeration and exact counting of pattern avoiders and one-copy permutations.

Permutations are generated position by position in lexicographic order.  A
prefix is abandoned as soon as it holds more copies of the pattern than
allowed; since copies in a prefix survive every extension, this visits only
the tree of admissible prefixes.  The search splits into independent subtrees
by first entry, which is how work is spread over processes: counts add,
streams are concatenated in first-entry order, so results do not depend on
the number of workers.
"""
from __future__ import annotations

import csv
import functools
import io
import itertools
import math
import os
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import (
    Permutation, count_ending_at_last, count_occurrences, direct_sum, is_decreasing,
    skew_blocks,
)
from .maps import PatternPrecondition

__all__ = [
    "NonInteger", "CountRow", "CountTable", "enumerate_avoiders", "enumerate_exactly_one",
    "count_avoiders", "count_exactly_one", "count_by_skew_blocks", "catalan", "noonan",
    "direct_sum_embedding", "count_monotone", "brute_force_count", "brute_force_tally",
    "clear_memo",
]


class NonInteger(ArithmeticError):
    pass


def _search(n: int, q: tuple[int, ...], target: int, first: int | None,
            emit=None) -> int:
    """Count (and optionally emit) length-n permutations with exactly
    ``target`` copies of ``q``, restricted to first entry ``first``."""
    k = len(q)
    used = [False] * (n + 2)
    w: list[int] = []
    firsts = range(1, n + 1) if first is None else (first,)

    if is_decreasing(q):
        # rows_by_value[v][l] = copies (capped at 2) of the decreasing pattern of
        # length l+1 that end at the placed entry of value v
        rows_by_value: list[list[int] | None] = [None] * (n + 2)

        def extend(x: int, occ: int) -> int:
            row = [1] + [0] * (k - 1)
            for v in range(x + 1, n + 1):
                prev = rows_by_value[v]
                if prev is not None:
                    for length in range(1, k):
                        row[length] += prev[length - 1]
            rows_by_value[x] = [c if c < 2 else 2 for c in row]
            return row[k - 1]

        def retract(x: int) -> None:
            rows_by_value[x] = None
    else:
        def extend(x: int, occ: int) -> int:
            return count_ending_at_last(w, q, target - occ + 1)

        def retract(x: int) -> None:
            pass

    def rec(depth: int, occ: int) -> int:
        if depth == n:
            if occ != target:
                return 0
            if emit is not None:
                emit(Permutation._trusted(w))
            return 1
        total = 0
        for x in (firsts if depth == 0 else range(1, n + 1)):
            if used[x]:
                continue
            w.append(x)
            add = extend(x, occ)
            if occ + add <= target:
                used[x] = True
                total += rec(depth + 1, occ + add)
                used[x] = False
            retract(x)
            w.pop()
        return total

    if n == 0:
        if target == 0 and emit is not None:
            emit(Permutation())
        return 1 if target == 0 else 0
    return rec(0, 0)


def _subtree_count(args: tuple[int, tuple[int, ...], int, int]) -> int:
    n, q, target, first = args
    return _search(n, q, target, first)


def _subtree_list(args: tuple[int, tuple[int, ...], int, int]) -> list[Permutation]:
    n, q, target, first = args
    out: list[Permutation] = []
    _search(n, q, target, first, out.append)
    return out


def _default_workers() -> int:
    return os.cpu_count() or 1


def _check_pattern(q: Sequence[int]) -> tuple[int, ...]:
    q = tuple(Permutation(q))
    if not q:
        raise ValueError("pattern must be nonempty")
    return q


def _stream(n: int, q: Sequence[int], target: int, workers: int) -> Iterator[Permutation]:
    q = _check_pattern(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield from _empty_stream(target)
        return
    tasks = [(n, q, target, first) for first in range(1, n + 1)]
    if workers <= 1:
        for task in tasks:
            yield from _subtree_list(task)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk in pool.map(_subtree_list, tasks):
            yield from chunk


def _empty_stream(target: int) -> list[Permutation]:
    return [Permutation()] if target == 0 else []


def enumerate_avoiders(n: int, q: Sequence[int], workers: int = 1) -> Iterator[Permutation]:
    """Length-n permutations avoiding ``q``, in lexicographic order."""
    return _stream(n, q, 0, workers)


def enumerate_exactly_one(n: int, q: Sequence[int], workers: int = 1) -> Iterator[Permutation]:
    """Length-n permutations containing exactly one copy of ``q``, in
    lexicographic order."""
    return _stream(n, q, 1, workers)


_memo: dict[tuple[int, str, str], int] = {}
_memo_lock = threading.Lock()


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


def _count(n: int, q: Sequence[int], target: int, workers: int) -> int:
    q = _check_pattern(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    key = (n, ".".join(map(str, q)), "avoid" if target == 0 else "one")
    with _memo_lock:
        if key in _memo:
            return _memo[key]
    if len(q) > n:
        result = math.factorial(n) if target == 0 else 0
    elif workers <= 1 or n <= 2:
        result = _search(n, q, target, None)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            tasks = [(n, q, target, first) for first in range(1, n + 1)]
            result = sum(pool.map(_subtree_count, tasks))
    with _memo_lock:
        _memo.setdefault(key, result)
    return result


def count_avoiders(n: int, q: Sequence[int], workers: int = 1) -> int:
    """Number of length-n permutations avoiding ``q``.

    >>> count_avoiders(8, (3, 2, 1))
    1430
    """
    return _count(n, q, 0, workers)


def count_exactly_one(n: int, q: Sequence[int], workers: int = 1) -> int:
    """Number of length-n permutations with exactly one copy of ``q``."""
    return _count(n, q, 1, workers)


def count_by_skew_blocks(n: int, q: Sequence[int], workers: int = 1) -> list[int]:
    """Entry ``j`` counts the q-avoiders of length n with exactly ``j`` skew
    blocks (entry 0 is 1 for n = 0 and 0 otherwise)."""
    counts = [0] * (n + 1)
    for p in enumerate_avoiders(n, q, workers):
        counts[len(skew_blocks(p)) if p else 0] += 1
    return counts


def _naive_count(p: Sequence[int], q: tuple[int, ...], cap: int) -> int:
    k = len(q)
    found = 0
    for idx in itertools.combinations(range(len(p)), k):
        sub = [p[i] for i in idx]
        if all((sub[r] < sub[s]) == (q[r] < q[s]) for r in range(k) for s in range(r + 1, k)):
            found += 1
            if found >= cap:
                break
    return found


def brute_force_count(n: int, q: Sequence[int], copies: int) -> int:
    """Filter all n! permutations by scanning every index subset; the
    reference the pruned search is checked against."""
    q = _check_pattern(q)
    return sum(1 for p in itertools.permutations(range(1, n + 1))
               if _naive_count(p, q, copies + 1) == copies)


def brute_force_tally(n: int, max_len: int) -> dict[Permutation, tuple[int, int]]:
    """For every pattern of length ``1..max_len``: how many length-n
    permutations avoid it and how many hold exactly one copy.

    Each permutation is scanned once; every index subset of size at most
    ``max_len`` is standardized and tallied.
    """
    patterns = [Permutation._trusted(q) for m in range(1, max_len + 1)
                for q in itertools.permutations(range(1, m + 1))]
    avoid = dict.fromkeys(patterns, 0)
    one = dict.fromkeys(patterns, 0)
    subsets = [c for m in range(1, min(max_len, n) + 1)
               for c in itertools.combinations(range(n), m)]
    for p in itertools.permutations(range(1, n + 1)):
        seen: dict[tuple[int, ...], int] = {}
        for idx in subsets:
            sub = [p[i] for i in idx]
            order = sorted(sub)
            key = tuple(order.index(v) + 1 for v in sub)
            seen[key] = seen.get(key, 0) + 1
        for q in patterns:
            c = seen.get(q, 0)
            if c == 0:
                avoid[q] += 1
            elif c == 1:
                one[q] += 1
    return {q: (avoid[q], one[q]) for q in patterns}


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.comb(2 * n, n) // (n + 1)


def noonan(n: int) -> int:
    """Exact count of length-n permutations with one copy of 321:
    ``3/n * C(2n, n+3)``."""
    if n < 1:
        raise ValueError("n must be positive")
    num = 3 * math.comb(2 * n, n + 3)
    if num % n:
        raise NonInteger(f"3*C({2 * n},{n + 3}) = {num} is not divisible by {n}")
    return num // n


def direct_sum_embedding(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """``p (+) q``, which holds exactly one copy of ``q`` when ``p`` avoids it
    and ``q`` starts with its largest entry."""
    p, q = Permutation(p), Permutation(q)
    if q and count_occurrences(p, q, cap=1):
        raise PatternPrecondition(f"{p} contains {q}")
    result = direct_sum(p, q)
    if count_occurrences(result, q, cap=2) != 1:
        raise PatternPrecondition(f"{p} (+) {q} does not contain exactly one copy of {q}")
    return result


def count_monotone(n: int, k: int, copies: int) -> int:
    """Count length-n permutations with exactly ``copies`` (0 or 1) copies
    of ``k ... 21``, without enumerating them.

    Permutations are built right to left.  For each chain length ``l < k``
    the state keeps, over the already placed entries sorted by value, the
    running totals (capped at 2) of decreasing ``l``-chains starting at those
    entries.  A new entry slotted above ``j`` placed entries starts as many
    ``l+1``-chains as the running ``l``-total at ``j``.
    """
    if copies not in (0, 1):
        raise ValueError("copies must be 0 or 1")
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return 1 if (n == 0 and copies == 0) or (n == 1 and copies == 1) else 0

    @functools.lru_cache(maxsize=None)
    def ways(state: tuple[tuple[int, ...], ...], found: int, left: int) -> int:
        if left == 0:
            return 1 if found == copies else 0
        m = len(state[0]) - 1
        total = 0
        for j in range(m + 1):
            # starts[l-1] = chains of length l starting at the new entry
            starts = [1] + [state[l - 1][j] for l in range(1, k)]
            extra = starts[k - 1]
            if found + extra > copies:
                continue
            nxt = []
            for l in range(1, k):
                totals = state[l - 1]
                s = starts[l - 1]
                nxt.append(totals[:j + 1] + tuple(min(2, t + s) for t in totals[j:]))
            total += ways(tuple(nxt), found + extra, left - 1)
        return total

    return ways(tuple((0,) for _ in range(1, k)), 0, n)


@dataclass(frozen=True)
class CountRow:
    n: int
    pattern: Permutation
    constraint: str
    count: int


class CountTable:
    """Rows ``(n, pattern, constraint, count)``, unique per key.

    ``constraint`` is ``avoid``, ``one`` or ``skew:j``.  The CSV form has
    header ``n,pattern,constraint,count`` with the pattern's values joined by
    dots.
    """

    header = ("n", "pattern", "constraint", "count")

    def __init__(self, rows: Iterable[CountRow] = ()):
        self._rows: dict[tuple[int, Permutation, str], CountRow] = {}
        for row in rows:
            self.add(row)

    def add(self, row: CountRow) -> None:
        if row.count < 0:
            raise ValueError("counts are nonnegative")
        key = (row.n, row.pattern, row.constraint)
        old = self._rows.get(key)
        if old is not None and old.count != row.count:
            raise ValueError(f"conflicting counts for {key}: {old.count} vs {row.count}")
        self._rows[key] = row

    @property
    def rows(self) -> list[CountRow]:
        return list(self._rows.values())

    def __len__(self) -> int:
        return len(self._rows)

    def lookup(self, n: int, pattern: Sequence[int], constraint: str) -> int:
        return self._rows[(n, Permutation(pattern), constraint)].count

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for r in self.rows:
            writer.writerow((r.n, r.pattern.dotted(), r.constraint, r.count))
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> CountTable:
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != cls.header:
            raise ValueError(f"expected header {','.join(cls.header)}")
        rows = []
        for rec in reader:
            constraint = rec["constraint"]
            if constraint not in ("avoid", "one") and not constraint.startswith("skew:"):
                raise ValueError(f"unknown constraint {constraint!r}")
            rows.append(CountRow(int(rec["n"]), Permutation.from_dotted(rec["pattern"]),
                                 constraint, int(rec["count"])))
        return cls(rows)

    @classmethod
    def build(cls, ns: Iterable[int], patterns: Iterable[Sequence[int]],
              constraints: Iterable[str], workers: int = 1) -> CountTable:
        """Compute every requested row, in nested (pattern, constraint, n) order."""
        table = cls()
        constraints = list(constraints)
        ns = list(ns)
        for q in patterns:
            q = Permutation(q)
            for constraint in constraints:
                for n in ns:
                    if constraint == "avoid":
                        table.add(CountRow(n, q, constraint, count_avoiders(n, q, workers)))
                    elif constraint == "one":
                        table.add(CountRow(n, q, constraint, count_exactly_one(n, q, workers)))
                    elif constraint.startswith("skew:"):
                        j = int(constraint[5:])
                        by_j = count_by_skew_blocks(n, q, workers)
                        table.add(CountRow(n, q, constraint, by_j[j] if j < len(by_j) else 0))
                    else:
                        raise ValueError(f"unknown constraint {constraint!r}")
        return table
