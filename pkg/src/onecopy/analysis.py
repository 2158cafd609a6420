"""
Finite, desk-scale checks of growth statements about pattern classes.

Exact quantities stay exact (``int`` and ``Fraction``); floats appear only in
``regev_normalized`` and ``growth_estimate``, whose formulas are given in
their docstrings.  Asymptotic constants are never estimated or asserted.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .core import Permutation, monotone
from .enumeration import (
    catalan, count_avoiders, count_exactly_one, count_monotone, noonan,
)

__all__ = [
    "TooFewRows", "CheckFailure", "SeriesRow", "CheckResult", "ratio_series",
    "ratio_321", "regev_normalized", "monotone_count", "sandwich_check",
    "growth_estimate", "endpoint_condition",
]

P321 = (3, 2, 1)


class TooFewRows(ValueError):
    pass


class CheckFailure(AssertionError):
    """A finite inequality or identity failed; ``witness`` holds the values."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class SeriesRow:
    n: int
    value: int | Fraction
    normalized: float | None = None
    formula: str = ""


@dataclass
class CheckResult:
    """One line of a verification report."""

    check: str
    params: dict
    status: str
    witness: Any = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> str:
        record = {"check": self.check, "params": self.params,
                  "status": self.status, "witness": self.witness}
        return json.dumps(record, sort_keys=True, default=str)

    def as_dict(self) -> dict:
        return asdict(self)


def ratio_321(n: int) -> Fraction:
    """Closed form of S_n(321,1)/S_n(321): ``3(n-1)(n-2) / ((n+2)(n+3))``."""
    return Fraction(3 * (n - 1) * (n - 2), (n + 2) * (n + 3))


def ratio_series(q: Sequence[int], n_max: int, method: str = "auto",
                 workers: int = 1) -> list[SeriesRow]:
    """Rows ``(n, S_n(q,1)/S_n(q))`` for ``1 <= n <= n_max`` as exact rationals.

    ``method="closed"`` (the default for 321 under ``"auto"``) uses the
    Catalan and one-copy closed forms and so reaches far beyond enumeration.
    """
    q = Permutation(q)
    if method == "auto":
        method = "closed" if tuple(q) == P321 else "enumerate"
    if method == "closed" and tuple(q) != P321:
        raise ValueError("closed forms are only known here for 321")
    rows = []
    for n in range(1, n_max + 1):
        if method == "closed":
            one, none = noonan(n), catalan(n)
            formula = "noonan(n)/catalan(n)"
        else:
            one, none = count_exactly_one(n, q, workers), count_avoiders(n, q, workers)
            formula = "enumerated S_n(q,1)/S_n(q)"
        rows.append(SeriesRow(n, Fraction(one, none), formula=formula))
    return rows


def regev_normalized(k: int, n: int, s_n: int) -> float:
    """``s_n * n**((k*k - 2*k)/2) / (k-1)**(2n)`` in floating point.

    The exact ratio ``s_n / (k-1)**(2n)`` is formed first so large counts do
    not overflow.
    """
    if k < 2 or n < 1:
        raise ValueError("need k >= 2 and n >= 1")
    exponent = Fraction(k * k - 2 * k, 2)
    return float(Fraction(s_n, (k - 1) ** (2 * n))) * n ** float(exponent)


def monotone_count(k: int, n: int, copies: int, source: str = "auto",
                   workers: int = 1) -> int:
    """S_n(k...21) (``copies=0``) or S_n(k...21,1) (``copies=1``).

    ``source`` picks the route: ``closed`` (k = 3 only), ``dp`` (chain-count
    recursion) or ``enumerate`` (pruned search).  ``auto`` prefers closed
    forms, then the recursion.
    """
    if n < 0:
        return 0
    if source == "auto":
        source = "closed" if k == 3 else "dp"
    if source == "closed":
        if k != 3:
            raise ValueError("closed forms are only used for k = 3")
        return catalan(n) if copies == 0 else (noonan(n) if n else 0)
    if source == "dp":
        return count_monotone(n, k, copies)
    if source == "enumerate":
        pattern = monotone(k)
        return count_avoiders(n, pattern, workers) if copies == 0 else \
            count_exactly_one(n, pattern, workers)
    raise ValueError(f"unknown source {source!r}")


def sandwich_check(k: int, n: int, source: str = "auto", workers: int = 1) -> CheckResult:
    """Check ``S_{n-k}(k...21) <= S_n(k...21,1) <= S_{n+2}(k...21)``.

    Raises ``CheckFailure`` carrying the triple if either inequality fails.
    """
    if k < 3 or n < k:
        raise ValueError("need k >= 3 and n >= k")
    low = monotone_count(k, n - k, 0, source, workers)
    mid = monotone_count(k, n, 1, source, workers)
    high = monotone_count(k, n + 2, 0, source, workers)
    triple = [low, mid, high]
    if not low <= mid <= high:
        raise CheckFailure(f"sandwich fails for k={k}, n={n}: {triple}", triple)
    return CheckResult("sandwich", {"k": k, "n": n, "source": source}, "pass", triple)


def growth_estimate(series: Sequence[SeriesRow]) -> float:
    """Exponential order estimated as the last consecutive ratio
    ``value(n_last) / value(n_last - 1)``."""
    if len(series) < 3:
        raise TooFewRows(f"need at least 3 rows, got {len(series)}")
    rows = sorted(series, key=lambda r: r.n)
    prev, last = rows[-2].value, rows[-1].value
    if prev == 0:
        raise ZeroDivisionError("second-to-last row is zero")
    return float(Fraction(last) / Fraction(prev))


def endpoint_condition(q: Sequence[int]) -> bool:
    """True unless the first and last entries of ``q`` are its extremes."""
    if len(q) == 0:
        raise ValueError("pattern must be nonempty")
    return {q[0], q[-1]} != {1, len(q)}


def exact_ratio_is_increasing(rows: Sequence[SeriesRow]) -> bool:
    values = [r.value for r in sorted(rows, key=lambda r: r.n)]
    return all(a < b for a, b in zip(values, values[1:]))


def consecutive_ratios(values: Sequence[float]) -> list[float]:
    return [b / a for a, b in zip(values, values[1:]) if a]


def is_finite_positive(values: Sequence[float]) -> bool:
    return all(math.isfinite(v) and v > 0 for v in values)
