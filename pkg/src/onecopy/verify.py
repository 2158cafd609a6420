"""
Named verification suites.  Each suite runs one family of finite checks and
returns ``CheckResult`` records; ``run`` dispatches by name.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterator

from .analysis import (
    CheckFailure, CheckResult, consecutive_ratios, endpoint_condition,
    exact_ratio_is_increasing, growth_estimate, is_finite_positive, monotone_count,
    ratio_321, ratio_series, regev_normalized, sandwich_check, SeriesRow,
)
from .core import (
    Permutation, avoids, count_occurrences, monotone, right_to_left_minima,
    skew_blocks, skew_sum,
)
from .enumeration import (
    brute_force_tally, catalan, count_avoiders, count_by_skew_blocks,
    count_exactly_one, enumerate_avoiders, enumerate_exactly_one, noonan,
)
from .maps import (
    F_general, F_general_inverse, F_k, decompose_unique_321, f, g, g_inverse,
    predict_rl_minima, trace_F,
)

__all__ = ["SUITES", "run", "injection_check", "skew_ineq_patterns", "wilf_pair"]

P321 = Permutation((3, 2, 1))
P231 = Permutation((2, 3, 1))


def _result(check: str, params: dict, ok: bool, witness=None) -> CheckResult:
    return CheckResult(check, params, "pass" if ok else "fail", witness)


def wilf_pair(k: int) -> tuple[Permutation, Permutation]:
    """``k...21`` and ``(k-1) k (k-2) ... 1``."""
    dec = monotone(k)
    swapped = Permutation((k - 1, k, *range(k - 2, 0, -1)))
    return dec, swapped


def g_bijection(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    for n in range(0, min(max_n, 10) + 1):
        images = set()
        bad = None
        for p in enumerate_avoiders(n, P321, workers):
            img = g(p)
            if (not avoids(img, P231) or right_to_left_minima(img) != right_to_left_minima(p)
                    or g_inverse(img) != p):
                bad = str(p)
                break
            images.add(img)
        ok = bad is None and len(images) == catalan(n)
        yield _result("g-bijection", {"n": n}, ok, bad or len(images))


def injection_check(domain, mapping: Callable, codomain_avoids: Permutation,
                    inverse: Callable | None = None, trace: Callable | None = None) -> dict:
    """Apply ``mapping`` over ``domain``; report collisions, codomain misses,
    northwest violations and failed round trips."""
    seen: dict[Permutation, Permutation] = {}
    report = {"size": 0, "collision": None, "outside": None, "northwest": None,
              "roundtrip": None}
    for p in domain:
        report["size"] += 1
        img = mapping(p)
        if img in seen and report["collision"] is None:
            report["collision"] = [str(seen[img]), str(p), str(img)]
        seen.setdefault(img, p)
        if report["outside"] is None and count_occurrences(img, codomain_avoids, cap=1):
            report["outside"] = [str(p), str(img)]
        if trace is not None and report["northwest"] is None:
            bad = trace(p).image_partition().northwest_violations()
            if bad:
                report["northwest"] = [str(p), bad[0]]
        if inverse is not None and report["roundtrip"] is None and inverse(img) != p:
            report["roundtrip"] = [str(p), str(img)]
    report["ok"] = all(report[key] is None for key in ("collision", "outside", "northwest",
                                                        "roundtrip"))
    return report


def f_injection(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    for n in range(3, min(max_n, 9) + 1):
        rep = injection_check(enumerate_exactly_one(n, P321, workers), f, P231)
        yield _result("f-injection", {"n": n}, rep["ok"] and rep["size"] == noonan(n), rep)


def rilmin(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    for n in range(3, min(max_n, 9) + 1):
        bad = None
        for p in enumerate_exactly_one(n, P321, workers):
            if predict_rl_minima(decompose_unique_321(p)) != right_to_left_minima(f(p)):
                bad = str(p)
                break
        yield _result("rilmin", {"n": n}, bad is None, bad)


def _fgeneral_cases(max_n: int) -> list[tuple[Permutation, int]]:
    # length-5 patterns are run one size lower to stay at desk scale
    cases = []
    for rho, cap in (((), 9), ((1,), 9), ((1, 2), 8), ((2, 1), 8)):
        for n in range(3 + len(rho), min(max_n, cap) + 1):
            cases.append((Permutation(rho), n))
    return cases


def fk_injection(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    for k in (4, 5):
        dec, swapped = wilf_pair(k)
        rho = monotone(k - 3)
        for n in range(k, min(max_n, 9) + 1):
            rep = injection_check(
                enumerate_exactly_one(n, dec, workers), lambda p: F_k(p, k), swapped,
                inverse=lambda img: F_general_inverse(img, rho),
                trace=lambda p: trace_F(p, rho))
            yield _result("Fk-injection", {"k": k, "n": n}, rep["ok"], rep)
    for rho, n in _fgeneral_cases(max_n):
        source = skew_sum(P321, rho)
        target = skew_sum(P231, rho)
        rep = injection_check(
            enumerate_exactly_one(n, source, workers), lambda p: F_general(p, rho), target,
            inverse=lambda img: F_general_inverse(img, rho),
            trace=(lambda p: trace_F(p, rho)) if rho else None)
        yield _result("Fgeneral-injection", {"rho": str(rho), "n": n}, rep["ok"], rep)


def wilf(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    for k in (3, 4, 5):
        dec, swapped = wilf_pair(k)
        for n in range(1, min(max_n, 9) + 1):
            a, b = count_avoiders(n, dec, workers), count_avoiders(n, swapped, workers)
            yield _result("wilf", {"k": k, "n": n}, a == b, [a, b])


def babson_west(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    taus = [()] + [tuple(t) for m in (1, 2) for t in itertools.permutations(range(1, m + 1))]
    for tau in taus:
        left = skew_sum((2, 1), tau)
        right = skew_sum((1, 2), tau)
        for n in range(1, min(max_n, 9) + 1):
            a, b = count_avoiders(n, left, workers), count_avoiders(n, right, workers)
            yield _result("babson-west", {"tau": " ".join(map(str, tau)), "n": n}, a == b, [a, b])


def sandwich(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    for k in (3, 4):
        for n in range(k, min(max_n, 10) + 1):
            try:
                yield sandwich_check(k, n)
            except CheckFailure as exc:
                yield CheckResult("sandwich", {"k": k, "n": n}, "fail", exc.witness)
    # S_n(321 (-) rho, 1) <= S_{n+2}(231 (-) rho), the right side enumerated while
    # it is cheap and otherwise replaced by its Wilf-equivalent monotone count
    for rho in ((), (1,)):
        source = skew_sum(P321, rho)
        target = skew_sum(P231, rho)
        for n in range(len(source), min(max_n, 9) + 1):
            one = count_exactly_one(n, source, workers)
            if n + 2 <= 9:
                upper, how = count_avoiders(n + 2, target, workers), "enumerate"
            else:
                upper, how = monotone_count(len(target), n + 2, 0), "wilf-equivalent dp"
            yield _result("sandwich-general", {"rho": " ".join(map(str, rho)), "n": n,
                                               "upper": how}, one <= upper, [one, upper])


def noonan_suite(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    for n in range(1, min(max_n, 10) + 1):
        got = count_exactly_one(n, P321, workers)
        yield _result("noonan", {"n": n}, got == noonan(n), [got, noonan(n)])


def skew_ineq_patterns() -> list[Permutation]:
    """132, 1342, 2341 and every skew-indecomposable pattern of length 3 or 4
    whose first and last entries are not its extremes."""
    chosen = {Permutation(q) for q in ((1, 3, 2), (1, 3, 4, 2), (2, 3, 4, 1))}
    for m in (3, 4):
        for q in itertools.permutations(range(1, m + 1)):
            if len(skew_blocks(q)) == 1 and endpoint_condition(q):
                chosen.add(Permutation(q))
    return sorted(chosen, key=lambda q: (len(q), q))


def skew_ineq(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    for q in skew_ineq_patterns():
        for n in range(2, min(max_n, 9) + 1):
            by_j = count_by_skew_blocks(n, q, workers)
            s1, s2 = by_j[1], by_j[2]
            yield _result("skew-ineq", {"q": str(q), "n": n}, s2 <= s1, [s2, s1])


def ratio(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    rows = ratio_series(P321, 25)
    closed_ok = all(r.value == ratio_321(r.n) for r in rows)
    tail = [r for r in rows if r.n >= 3]
    yield _result("ratio", {"q": "3 2 1", "n_max": 25, "what": "closed form"}, closed_ok,
                  str(rows[-1].value))
    yield _result("ratio", {"q": "3 2 1", "n_max": 25, "what": "increasing below 3"},
                  exact_ratio_is_increasing(tail) and all(r.value < 3 for r in rows),
                  str(rows[-1].value))
    enumerated = ratio_series(P321, min(max_n, 10), method="enumerate", workers=workers)
    yield _result("ratio", {"q": "3 2 1", "n_max": min(max_n, 10), "what": "enumerated"},
                  all(r.value == ratio_321(r.n) for r in enumerated), None)
    inc = ratio_series((1, 3, 2), min(max_n, 9), workers=workers)
    yield _result("ratio", {"q": "1 3 2", "n_max": min(max_n, 9), "what": "increasing"},
                  exact_ratio_is_increasing([r for r in inc if r.n >= 3]),
                  [str(r.value) for r in inc])


def regev_trend(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    a, b = regev_normalized(3, 20, catalan(20)), regev_normalized(3, 21, catalan(21))
    yield _result("regev-trend", {"k": 3, "n": [20, 21]}, abs(b - a) / a < 0.05, [a, b])
    yield _result("regev-trend", {"k": 2}, all(regev_normalized(2, n, 1) == 1.0
                                               for n in range(1, 30)), None)
    top = 12
    norm = [regev_normalized(4, n, monotone_count(4, n, 0)) for n in range(1, top + 1)]
    ratios = consecutive_ratios(norm)
    gaps = [abs(r - 1) for r in ratios]
    # ratios[i] compares n = i+2 with n = i+1; the band applies once n > k
    banded = ratios[3:]
    ok = (is_finite_positive(norm) and all(x > y for x, y in zip(gaps, gaps[1:]))
          and all(0.7 <= r <= 1.3 for r in banded))
    yield _result("regev-trend", {"k": 4, "n_max": top}, ok, ratios)
    series = [SeriesRow(n, catalan(n)) for n in range(1, 26)]
    est = growth_estimate(series)
    one = [SeriesRow(n, noonan(n)) for n in range(3, 26)]
    est_one = growth_estimate(one)
    yield _result("growth", {"k": 3, "n_max": 25}, 3.5 <= est <= 4.0 and
                  abs(est_one - est) / est <= 0.15, [est, est_one])
    est4 = growth_estimate([SeriesRow(n, monotone_count(4, n, 0)) for n in range(1, top + 1)])
    yield _result("growth", {"k": 4, "n_max": top}, 6.0 <= est4 <= 9.0, est4)


def oracle(max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    top = min(max_n, 8)
    for n in range(1, top + 1):
        bad = []
        for q, (avoid, one) in brute_force_tally(n, 4).items():
            pruned = (count_avoiders(n, q, workers), count_exactly_one(n, q, workers))
            if pruned != (avoid, one):
                bad.append([str(q), list(pruned), [avoid, one]])
        yield _result("oracle", {"n": n, "max_pattern_length": 4}, not bad, bad or None)


SUITES: dict[str, Callable[..., Iterator[CheckResult]]] = {
    "g-bijection": g_bijection,
    "f-injection": f_injection,
    "rilmin": rilmin,
    "Fk-injection": fk_injection,
    "wilf": wilf,
    "babson-west": babson_west,
    "sandwich": sandwich,
    "noonan": noonan_suite,
    "skew-ineq": skew_ineq,
    "ratio": ratio,
    "regev-trend": regev_trend,
    "oracle": oracle,
}


def run(name: str, max_n: int, workers: int = 1) -> Iterator[CheckResult]:
    if name == "all":
        for suite in SUITES.values():
            yield from suite(max_n, workers)
        return
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}") from None
    yield from suite(max_n, workers)
