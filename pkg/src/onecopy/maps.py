"""
Constructive maps between pattern classes.

``g`` is the reverse Simion-Schmidt bijection from 321-avoiders to
231-avoiders.  ``f`` sends a permutation with exactly one copy of 321 to a
231-avoider two entries longer.  ``F_general`` lifts ``f`` to permutations
with exactly one copy of ``321 (-) rho``: the entries dominating a copy of
``rho`` (the blue entries) carry a single 321 copy, ``f`` is applied to them
in place, and the remaining red entries are shifted to make room.  ``F_k`` is
the monotone case ``rho = (k-3)...21``.

The workers operate on words of distinct integers rather than on
permutations of ``1..n``; ``g`` and ``f`` only compare values, so the blue
subsequence of a larger host can be transformed without renumbering.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

from .core import (
    Permutation, corank_profile, count_occurrences, exactly_one,
    monotone, right_to_left_minima, skew_sum,
)

__all__ = [
    "PatternPrecondition", "StructureViolation", "UniqueCopyDecomposition",
    "ColoredPartition", "FTrace", "g", "g_inverse", "decompose_unique_321", "f",
    "predict_rl_minima", "blue_red_partition_monotone", "build_h", "F_k",
    "blue_red_partition_general", "trace_F", "F_general", "F_general_inverse",
]

P321 = Permutation._trusted((3, 2, 1))
P231 = Permutation._trusted((2, 3, 1))


class PatternPrecondition(ValueError):
    """The input lies outside the domain of the map."""


class StructureViolation(RuntimeError):
    """An intermediate object lacks the structure the construction relies on."""


def _g(w: Sequence[int]) -> list[int]:
    n = len(w)
    out: list[int | None] = [None] * n
    for pos, v in right_to_left_minima(w):
        out[pos - 1] = v
    fixed = {x for x in out if x is not None}
    pool = sorted(v for v in w if v not in fixed)
    low = float("inf")
    for i in range(n - 1, -1, -1):
        if out[i] is not None:
            low = min(low, out[i])
            continue
        # smallest remaining value that does not become a new right-to-left minimum
        j = bisect_right(pool, low)
        if j == len(pool):
            raise StructureViolation(f"no admissible value for slot {i + 1} of {tuple(w)}")
        out[i] = pool.pop(j)
    return out  # type: ignore[return-value]


def _g_inverse(w: Sequence[int]) -> list[int]:
    out: list[int | None] = [None] * len(w)
    for pos, v in right_to_left_minima(w):
        out[pos - 1] = v
    rest = iter(sorted(v for v, o in zip(w, out) if o is None))
    return [next(rest) if o is None else o for o in out]


def g(p: Sequence[int]) -> Permutation:
    """Reverse Simion-Schmidt map from 321-avoiders onto 231-avoiders.

    Right-to-left minima keep their positions and values; the other slots
    are filled right to left, each with the smallest unused value that does
    not create a new right-to-left minimum.

    >>> str(g(Permutation([3, 1, 4, 6, 2, 7, 5])))
    '7 1 4 3 2 6 5'
    """
    p = Permutation(p)
    if count_occurrences(p, P321, cap=1):
        raise PatternPrecondition(f"{p} contains 321")
    return Permutation._trusted(_g(p))


def g_inverse(p: Sequence[int]) -> Permutation:
    p = Permutation(p)
    if count_occurrences(p, P231, cap=1):
        raise PatternPrecondition(f"{p} contains 231")
    return Permutation._trusted(_g_inverse(p))


@dataclass(frozen=True)
class UniqueCopyDecomposition:
    """``host = pi1 c pi2 b pi3 a pi4`` around the only 321 copy ``c b a``.

    ``host`` is a word of distinct values (a permutation, or the blue
    subsequence of a larger permutation).  Positions are 1-based into
    ``host``.
    """

    host: tuple[int, ...]
    c_pos: int
    b_pos: int
    a_pos: int

    @property
    def c(self) -> int:
        return self.host[self.c_pos - 1]

    @property
    def b(self) -> int:
        return self.host[self.b_pos - 1]

    @property
    def a(self) -> int:
        return self.host[self.a_pos - 1]

    @property
    def pi1(self) -> tuple[int, ...]:
        return self.host[:self.c_pos - 1]

    @property
    def pi2(self) -> tuple[int, ...]:
        return self.host[self.c_pos:self.b_pos - 1]

    @property
    def pi3(self) -> tuple[int, ...]:
        return self.host[self.b_pos:self.a_pos - 1]

    @property
    def pi4(self) -> tuple[int, ...]:
        return self.host[self.a_pos:]

    def block_positions(self) -> dict[str, range]:
        """1-based host positions of each block."""
        return {
            "pi1": range(1, self.c_pos),
            "pi2": range(self.c_pos + 1, self.b_pos),
            "pi3": range(self.b_pos + 1, self.a_pos),
            "pi4": range(self.a_pos + 1, len(self.host) + 1),
        }

    @property
    def sigma1(self) -> tuple[int, ...]:
        return (*self.pi1, self.b, *self.pi2, self.a)

    @property
    def sigma2(self) -> tuple[int, ...]:
        return (self.c, *self.pi3, self.b, *self.pi4)

    def reassemble(self) -> tuple[int, ...]:
        return (*self.pi1, self.c, *self.pi2, self.b, *self.pi3, self.a, *self.pi4)


def _decompose(w: Sequence[int]) -> UniqueCopyDecomposition:
    # the lone 321 copy: b is the only entry with a larger entry to its left
    # and a smaller entry to its right
    w = tuple(w)
    n = len(w)
    found = []
    prefix_max = 0
    suffix_min = [float("inf")] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_min[i] = min(w[i], suffix_min[i + 1])
    for i, x in enumerate(w):
        if prefix_max > x > suffix_min[i + 1]:
            found.append(i)
        prefix_max = max(prefix_max, x)
    if len(found) != 1:
        raise PatternPrecondition(f"{w} does not contain exactly one copy of 321")
    j = found[0]
    b = w[j]
    bigger_left = [i for i in range(j) if w[i] > b]
    smaller_right = [i for i in range(j + 1, n) if w[i] < b]
    if len(bigger_left) != 1 or len(smaller_right) != 1:
        raise PatternPrecondition(f"{w} does not contain exactly one copy of 321")
    return UniqueCopyDecomposition(w, bigger_left[0] + 1, j + 1, smaller_right[0] + 1)


def decompose_unique_321(p: Sequence[int]) -> UniqueCopyDecomposition:
    """Split a one-copy-of-321 word around its copy ``c b a``.

    Accepts any word of distinct integers, so the blue subsequence of a
    larger host can be decomposed with its original values.

    >>> d = decompose_unique_321(Permutation([2, 5, 1, 4, 7, 3, 8, 6]))
    >>> (d.pi1, d.pi2, d.pi3, d.pi4), (d.c, d.b, d.a)
    (((2,), (1,), (7,), (8, 6)), (5, 4, 3))
    """
    d = _decompose(p)
    if count_occurrences(p, P321, cap=2) != 1:
        raise PatternPrecondition(f"{tuple(p)} does not contain exactly one copy of 321")
    return d


def _f(d: UniqueCopyDecomposition, top: int) -> list[int]:
    sigma2_shifted = [v + 1 for v in d.sigma2]
    return [*_g(d.sigma1), top, *_g(sigma2_shifted)]


def f(p: Sequence[int]) -> Permutation:
    """Injection from one-copy-of-321 permutations of length n into
    231-avoiders of length n+2.

    >>> str(f(Permutation([2, 5, 1, 4, 7, 3, 8, 6])))
    '4 2 1 3 10 9 6 5 8 7'
    """
    p = Permutation(p)
    d = decompose_unique_321(p)
    return Permutation(_f(d, len(p) + 2))


def predict_rl_minima(d: UniqueCopyDecomposition) -> list[tuple[int, int]]:
    """Right-to-left minima of ``f(host)`` read off the decomposition alone,
    as ``(position, value)`` pairs in increasing position order."""
    out = [(pos, v) for pos, v in right_to_left_minima(d.host) if pos < d.b_pos]
    out.append((d.b_pos, d.a))
    out.append((d.a_pos + 2, d.b + 1))
    tail = right_to_left_minima(d.pi4)
    out.extend((d.a_pos + pos + 2, v + 1) for pos, v in tail)
    return out


@dataclass(frozen=True)
class ColoredPartition:
    """Blue/red split of the positions (1-based) of ``host``."""

    host: tuple[int, ...]
    blue: frozenset[int]
    red: frozenset[int]

    def blue_values(self) -> tuple[int, ...]:
        return tuple(self.host[i - 1] for i in sorted(self.blue))

    def red_values(self) -> tuple[int, ...]:
        return tuple(self.host[i - 1] for i in sorted(self.red))

    def northwest_violations(self) -> list[tuple[int, int]]:
        """``(red, blue)`` position pairs with the red entry northwest of the blue one."""
        return [(r, s) for r in sorted(self.red) for s in sorted(self.blue)
                if r < s and self.host[r - 1] > self.host[s - 1]]


def _partition(host: Sequence[int], blue: Sequence[int]) -> ColoredPartition:
    blue_set = frozenset(blue)
    red_set = frozenset(range(1, len(host) + 1)) - blue_set
    part = ColoredPartition(tuple(host), blue_set, red_set)
    copies = count_occurrences(part.blue_values(), P321, cap=2)
    if copies != 1:
        raise StructureViolation(
            f"blue subsequence {part.blue_values()} of {tuple(host)} has {copies} copies of 321"
            + (" (or more)" if copies == 2 else ""))
    return part


def blue_red_partition_monotone(p: Sequence[int], k: int) -> ColoredPartition:
    """Blue entries are those of co-rank ``k``, ``k-1`` or ``k-2``."""
    p = Permutation(p)
    if k < 3:
        raise ValueError("k must be at least 3")
    if not exactly_one(p, monotone(k)):
        raise PatternPrecondition(f"{p} does not contain exactly one copy of {monotone(k)}")
    ranks = corank_profile(p).coranks
    return _partition(p, [i + 1 for i, c in enumerate(ranks) if c >= k - 2])


def _dominating_positions(w: Sequence[int], rho: tuple[int, ...]) -> list[int]:
    if not rho:
        return list(range(1, len(w) + 1))
    out = []
    for i, x in enumerate(w):
        below = [v for v in w[i + 1:] if v < x]
        if len(below) >= len(rho) and count_occurrences(below, rho, cap=1):
            out.append(i + 1)
    return out


def blue_red_partition_general(p: Sequence[int], rho: Sequence[int]) -> ColoredPartition:
    """Blue entries are those dominating at least one copy of ``rho``; every
    entry dominates the empty pattern."""
    p, rho = Permutation(p), Permutation(rho)
    q = skew_sum(P321, rho)
    if not exactly_one(p, q):
        raise PatternPrecondition(f"{p} does not contain exactly one copy of {q}")
    return _partition(p, _dominating_positions(p, tuple(rho)))


def build_h(d: UniqueCopyDecomposition, n: int) -> tuple[int, ...]:
    """``pi1 b pi2 a (n+2) (c+1) pi3' (b+1) pi4'`` where primes add 1."""
    return (*d.pi1, d.b, *d.pi2, d.a, n + 2, d.c + 1,
            *(v + 1 for v in d.pi3), d.b + 1, *(v + 1 for v in d.pi4))


@dataclass(frozen=True)
class FTrace:
    """Every stage of the lifted construction for one input.

    ``colors`` labels the positions of ``intermediate`` and ``image`` with
    ``"blue"``, ``"red"`` or ``"top"`` (the new maximum ``n+2``).
    """

    host: Permutation
    rho: Permutation
    partition: ColoredPartition
    decomposition: UniqueCopyDecomposition
    intermediate: tuple[int, ...]
    image: Permutation
    colors: tuple[str, ...]

    def image_partition(self) -> ColoredPartition:
        blue = frozenset(i + 1 for i, c in enumerate(self.colors) if c == "blue")
        red = frozenset(i + 1 for i, c in enumerate(self.colors) if c == "red")
        return ColoredPartition(tuple(self.image), blue, red)


def trace_F(p: Sequence[int], rho: Sequence[int]) -> FTrace:
    """Run the lifted construction step by step.

    First the blue subsequence is replaced by ``h`` of it and red entries
    above ``b`` are raised by one, giving ``intermediate``; then ``g`` is
    applied in place to the blue entries on each side of ``n+2``.
    """
    p, rho = Permutation(p), Permutation(rho)
    part = blue_red_partition_general(p, rho)
    d = _decompose(part.blue_values())
    n, b = len(p), d.b
    blue_rank = {pos: t for t, pos in enumerate(sorted(part.blue), 1)}

    inter: list[int] = []
    colors: list[str] = []
    for pos, v in enumerate(p, 1):
        t = blue_rank.get(pos)
        if t is None:
            inter.append(v + 1 if v > b else v)
            colors.append("red")
        elif t == d.c_pos:
            inter.append(b)
            colors.append("blue")
        elif t == d.b_pos:
            inter.extend((d.a, n + 2, d.c + 1))
            colors.extend(("blue", "top", "blue"))
        elif t == d.a_pos:
            inter.append(b + 1)
            colors.append("blue")
        else:
            inter.append(v if t < d.b_pos else v + 1)
            colors.append("blue")

    top = colors.index("top")
    left = [i for i in range(top) if colors[i] == "blue"]
    right = [i for i in range(top + 1, len(colors)) if colors[i] == "blue"]
    if tuple(inter[i] for i in left + [top] + right) != build_h(d, n):
        raise StructureViolation(f"intermediate word of {p} disagrees with h")
    out = list(inter)
    for slots in (left, right):
        for i, v in zip(slots, _g([inter[i] for i in slots])):
            out[i] = v
    try:
        image = Permutation(out)
    except ValueError as exc:
        raise StructureViolation(f"image of {p} is not a permutation: {out}") from exc
    return FTrace(p, rho, part, d, tuple(inter), image, tuple(colors))


def F_general(p: Sequence[int], rho: Sequence[int]) -> Permutation:
    """Injection from one-copy-of-``321 (-) rho`` permutations of length n
    into ``231 (-) rho``-avoiders of length n+2.  An empty ``rho`` gives ``f``."""
    if len(rho) == 0:
        return f(p)
    return trace_F(p, rho).image


def F_k(p: Sequence[int], k: int) -> Permutation:
    """Injection from one-copy-of-``k...21`` permutations into
    ``(k-1)k(k-2)...1``-avoiders two entries longer.

    >>> str(F_k(Permutation([4, 8, 1, 5, 9, 3, 2, 7, 6]), 4))
    '5 4 1 3 11 10 9 6 2 8 7'
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    if k == 3:
        return f(p)
    return F_general(p, monotone(k - 3))


def F_general_inverse(image: Sequence[int], rho: Sequence[int]) -> Permutation:
    """Recover the preimage of ``F_general`` from the image alone.

    The top entry ``n+2`` is the maximum; blue entries are the other entries
    dominating a copy of ``rho``; ``g`` is undone on each side of the top.
    """
    image, rho = Permutation(image), Permutation(rho)
    size = len(image)
    if size < 5:
        raise PatternPrecondition(f"{image} is too short to be an image")
    top = image.index(size)
    blue = set(_dominating_positions(image, tuple(rho))) - {top + 1}
    left = [i for i in range(top) if i + 1 in blue]
    right = [i for i in range(top + 1, size) if i + 1 in blue]
    if not left or not right:
        raise StructureViolation(f"{image} has no blue entries on one side of its maximum")
    sigma1 = _g_inverse([image[i] for i in left])
    sigma2 = [v - 1 for v in _g_inverse([image[i] for i in right])]
    b = max(sigma1)
    if min(sigma2) != b:
        raise StructureViolation(f"{image}: the two halves do not share b")
    i1, j2 = sigma1.index(b), sigma2.index(b)
    a, c = sigma1[-1], sigma2[0]
    blue_values = [*sigma1[:i1], c, *sigma1[i1 + 1:-1], b, *sigma2[1:j2], a, *sigma2[j2 + 1:]]

    # the slots of a, n+2 and c+1 collapse back to the single slot of b
    skip = {top, right[0]}
    blue_slots = set(left + right[1:])
    it = iter(blue_values)
    out = []
    for i, v in enumerate(image):
        if i in skip:
            continue
        if i in blue_slots:
            out.append(next(it))
        else:
            out.append(v - 1 if v > b else v)
    try:
        return Permutation(out)
    except ValueError as exc:
        raise StructureViolation(f"{image} does not decode to a permutation") from exc
