"""Named verification suites over the whole package.

Each suite is a list of zero-argument checks returning a
:class:`~partition_harmonics.report.VerificationReport`. Checks may run on
a thread pool; results keep submission order so output is identical for
any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Callable, Iterable

from . import kernel_series, partitions, quadrature, tail_analysis, trig_algebra
from .report import VerificationReport

Check = Callable[[], VerificationReport]

# Default upper bounds per suite; ``max_s`` caps them.
DEFAULT_LIMITS = {
    "partitions": 30,
    "printed_rows": 60,
    "kernel": 30,
    "tail": 40,
    "factorisation": tail_analysis.MAX_ORDER,
    "quadrature": 12,
    "full": 8,
    "general": 8,
    "moments": 10,
}

SUITES = ("partitions", "printed_rows", "identities", "kernel", "tail", "factorisation",
          "quadrature", "general", "moments")

# Alternative suite names accepted on the command line.
SUITE_ALIASES = {"section4": "factorisation", "table80": "printed_rows"}


def _cap(name: str, max_s: int | None) -> int:
    limit = DEFAULT_LIMITS[name]
    return limit if max_s is None else min(limit, max_s)


def _identity_checks() -> list[Check]:
    cases = [(3, 1, 0.0, [0.3, 1.1, 2.0]), (5, 2, 0.7, [0.41, 1.3]), (10, 3, -1.2, [0.2, 0.9])]
    return [partial(trig_algebra.verify_harmonic_sum_identity, s, k, y, xs)
            for s, k, y, xs in cases]


def build_suite(name: str, max_s: int | None = None) -> list[Check]:
    name = SUITE_ALIASES.get(name, name)
    if name == "partitions":
        return [partial(partitions.verify_oracles, _cap("partitions", max_s))]
    if name == "printed_rows":
        rows = [partial(partitions.table80_check, s) for s in range(3, 12)]
        return rows + [partial(partitions.verify_third_terms, DEFAULT_LIMITS["printed_rows"])]
    if name == "identities":
        return _identity_checks()
    if name == "kernel":
        top = _cap("kernel", max_s)
        return [partial(kernel_series.verify_kernel, s, recursion=s <= 20) for s in range(1, top + 1)]
    if name == "tail":
        return [partial(kernel_series.verify_tail, s) for s in range(3, _cap("tail", max_s) + 1)]
    if name == "factorisation":
        top = _cap("factorisation", max_s)
        return ([partial(tail_analysis.verify_decomposition, s) for s in range(3, top + 1)]
                + [partial(tail_analysis.verify_leading_product, s) for s in range(3, top + 1)])
    if name == "quadrature":
        return ([partial(quadrature.verify_forms, s) for s in range(1, _cap("quadrature", max_s) + 1)]
                + [partial(quadrature.verify_full, s) for s in range(1, _cap("full", max_s) + 1)])
    if name == "general":
        return [partial(quadrature.verify_general, s, m)
                for s in range(1, _cap("general", max_s) + 1) for m in range(6)]
    if name == "moments":
        return [partial(quadrature.verify_moments, s) for s in range(1, _cap("moments", max_s) + 1)]
    if name == "all":
        return [c for suite in SUITES for c in build_suite(suite, max_s)]
    raise ValueError(f"unknown suite {name!r}")


def resolve_threads(threads: int | None) -> int:
    env = os.environ.get("PH_THREADS")
    if env:
        return max(1, int(env))
    return max(1, threads or 1)


def run_checks(checks: Iterable[Check], threads: int = 1) -> list[VerificationReport]:
    checks = list(checks)
    if threads <= 1:
        return [c() for c in checks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda c: c(), checks))


def run_suite(name: str, max_s: int | None = None, threads: int | None = None) -> list[VerificationReport]:
    return run_checks(build_suite(name, max_s), resolve_threads(threads))


def all_passed(reports: Iterable[VerificationReport]) -> bool:
    return all(r.passed for r in reports)
