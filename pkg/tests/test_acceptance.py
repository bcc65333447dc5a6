"""Acceptance criteria, one test per criterion.

Each criterion prints a single ``PASS``/``FAIL`` line. Under pytest the lines
are also collected into the terminal summary; run this file directly
(``python3 tests/test_acceptance.py``) to get just the lines.
"""

from __future__ import annotations

import contextlib
import csv
import io
import math
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from golden import GOLDEN_HALVED  # noqa: E402
from helpers import (  # noqa: E402
    l1_norm,
    non_singular_points,
    random_even_cosine_poly,
    random_poly,
    vector_eval,
)

from partition_harmonics import TrigPoly, kernel_series, quadrature  # noqa: E402
from partition_harmonics.cli import main  # noqa: E402
from partition_harmonics.kernel_series import (  # noqa: E402
    build_kernel,
    expected_term_count,
    extract_tail,
    kernel_at_half_pi,
    kernel_at_zero,
    term_count,
)
from partition_harmonics.partitions import (  # noqa: E402
    binomial,
    partition,
    partitions_enumerate,
    partitions_euler,
    table80_check,
    third_term_coefficient,
)
from partition_harmonics.quadrature import (  # noqa: E402
    integrate_cos_form,
    integrate_full,
    integrate_general,
    integrate_reduced,
    integrate_sin_form,
    moment,
    moment_exact,
    trapezoid_half_period,
    vanishing_moment,
)
from partition_harmonics.tail_analysis import verify_decomposition, verify_leading_product  # noqa: E402
from partition_harmonics.trig_algebra import divide_by_sin, mul  # noqa: E402

RESIDUAL = 1e-6
AGREEMENT = 1e-8
MOMENT = 1e-8
EVALUATOR = 1e-8
TRAPEZOID_REL = 1e-10
EXACT_PATH = 1e-9
CASES = 1000
SEED = 20240611


@contextlib.contextmanager
def fresh_kernel_cache():
    """Run with an empty kernel cache so timings include construction."""
    saved = list(kernel_series._cache)
    del kernel_series._cache[1:]
    quadrature._series_arrays.cache_clear()
    try:
        yield
    finally:
        kernel_series._cache[:] = saved
        quadrature._series_arrays.cache_clear()


def _timed(fn):
    t = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - t


# -- criteria ----------------------------------------------------------------


def criterion_1():
    def go():
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = main(["partitions", "table", "--max", "10", "--format", "csv"])
        return code, buf.getvalue()

    (code, out), dt = _timed(go)
    rows = list(csv.reader(io.StringIO(out)))[1:]
    values = [int(p) for _, p in rows[1:]]
    ok = code == 0 and values == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42] and dt < 0.1
    return ok, f"p1..p10 = {values}, {dt:.4f} s (< 0.1 s)"


def criterion_2():
    with fresh_kernel_cache():
        bad, dt = _timed(lambda: [
            s for s in range(1, 11)
            if [c // 2 for c in build_kernel(s).coefficients.values()] != list(GOLDEN_HALVED[s])
            or list(build_kernel(s).coefficients) != list(range(s % 2, s * s + 1, 2))])
    return not bad and dt < 1.0, f"mismatched orders {bad}, {dt:.3f} s (< 1 s)"


def criterion_3():
    def go():
        bad = []
        for s in range(1, 31):
            k = build_kernel(s)
            half = binomial(s, s // 2) if s % 2 == 0 else 0
            if (kernel_at_zero(k), kernel_at_half_pi(k), term_count(k)) != (
                    binomial(2 * s, s), half, expected_term_count(s)):
                bad.append(s)
        return bad

    with fresh_kernel_cache():
        bad, dt = _timed(go)
    return not bad and dt < 10.0, f"s = 1..30 failures {bad}, {dt:.3f} s (< 10 s)"


def criterion_4():
    with fresh_kernel_cache():
        bad, dt = _timed(lambda: [s for s in range(3, 41)
                                  if extract_tail(build_kernel(s)).coeffs != partitions_euler(s).values])
    return not bad and dt < 60.0, f"s = 3..40 failures {bad}, {dt:.3f} s (< 60 s)"


def criterion_5():
    worst_res = 0.0
    worst_gap = 0.0
    bad = []
    for s in range(1, 13):
        p = partition(s)
        red, sin_f, cos_f = integrate_reduced(s), integrate_sin_form(s), integrate_cos_form(s)
        worst_res = max(worst_res, red.residual)
        gap = abs((sin_f.raw + cos_f.raw) / 2 - red.raw)
        worst_gap = max(worst_gap, gap)
        if (red.rounded, sin_f.rounded, cos_f.rounded) != (p, p, p) or red.residual >= RESIDUAL or gap >= AGREEMENT:
            bad.append(s)
    return not bad, f"s = 1..12, max residual {worst_res:.2e}, max sin/cos gap {worst_gap:.2e}, failures {bad}"


def criterion_6():
    worst = 0.0
    bad = []
    for s in range(1, 9):
        for m in range(6):
            r = integrate_general(s, m)
            worst = max(worst, r.residual)
            if r.rounded != partition(s) or r.residual >= RESIDUAL:
                bad.append((s, m))
    return not bad, f"48 cases, max residual {worst:.2e}, failures {bad}"


def criterion_7():
    worst = 0.0
    bad = []
    for s in range(1, 9):
        r = integrate_full(s)
        worst = max(worst, r.residual)
        if r.rounded != partition(s) or r.residual >= RESIDUAL:
            bad.append(s)
    return not bad, f"s = 1..8, max residual {worst:.2e}, failures {bad}"


def criterion_8():
    worst = max(abs(vanishing_moment(s, off)) for s in range(1, 11) for off in range(2, 21, 2))
    return worst < MOMENT, f"max |moment| {worst:.2e} (< {MOMENT:g})"


def criterion_9():
    def go():
        bad = [f"decomposition s={s}" for s in range(3, 21) if not verify_decomposition(s).passed]
        bad += [f"leading product s={s}" for s in range(3, 21) if not verify_leading_product(s).passed]
        bad += [f"table row s={s}" for s in range(3, 12) if not table80_check(s).passed]
        bad += [f"third term kappa={k}" for k in range(2, 61) if third_term_coefficient(k) != 1]
        return bad

    bad, dt = _timed(go)
    return not bad and dt < 60.0, f"failures {bad}, {dt:.3f} s (< 60 s)"


def criterion_10():
    euler = partitions_euler(30).values
    bad = [n for n in range(31) if partitions_enumerate(n) != euler[n]]
    return not bad, f"n = 0..30 mismatches {bad}"


def _ring_laws(rng):
    for _ in range(CASES):
        p, q, r = random_poly(rng), random_poly(rng), random_poly(rng)
        if not (mul(p, q) == mul(q, p)
                and mul(mul(p, q), r) == mul(p, mul(q, r))
                and mul(p, q + r) == mul(p, q) + mul(p, r)):
            return False
    return True


def _round_trip(rng):
    for _ in range(CASES):
        q = random_poly(rng, terms=6, max_freq=20, cosine_only=True)
        m = rng.randint(1, 25)
        if divide_by_sin(mul(q, TrigPoly.sin_term(m)), m) != q:
            return False
    return True


def _evaluator_agreement(gen):
    worst = 0.0
    for s in range(1, 13):
        x = non_singular_points(s, gen, CASES)
        if x.size != CASES:
            return math.inf
        diff = quadrature.evaluate_kernel_direct(s, x) - quadrature.evaluate_kernel_series(s, x)
        worst = max(worst, float(np.max(np.abs(diff))))
    return worst


def _trapezoid_exactness(rng, gen):
    worst = 0.0
    for _ in range(CASES):
        p = random_even_cosine_poly(rng, 2 * rng.randint(0, 30))
        f = p.max_frequency
        nodes = f // 2 + 2 + rng.randint(0, 5)
        got = trapezoid_half_period(lambda x: vector_eval(p, x), nodes)
        exact = float(quadrature.exact_integral(p))
        worst = max(worst, abs(got - exact) / (abs(exact) + l1_norm(p) + 1.0))
        x = gen.uniform(0, math.pi, 100)
        if not np.allclose(vector_eval(p, math.pi - x), vector_eval(p, x), rtol=0, atol=1e-9 * (l1_norm(p) + 1)):
            return math.inf, math.inf
    worst_kernel = 0.0
    for _ in range(CASES):
        s = rng.randint(1, 10)
        freq = rng.randrange(s % 2, s * s + 12, 2)
        worst_kernel = max(worst_kernel, abs(moment(s, freq) - moment_exact(s, freq)))
    return worst, worst_kernel


def criterion_11():
    rng = random.Random(SEED)
    gen = np.random.default_rng(SEED)
    ring = _ring_laws(rng)
    trip = _round_trip(rng)
    agree = _evaluator_agreement(gen)
    trap, kernel_gap = _trapezoid_exactness(rng, gen)
    ok = ring and trip and agree < EVALUATOR and trap < TRAPEZOID_REL and kernel_gap < EXACT_PATH
    detail = (f"{CASES} cases each: ring laws {ring}, round trip {trip}, "
              f"evaluator gap {agree:.2e} (< {EVALUATOR:g}), trapezoid rel {trap:.2e} "
              f"(< {TRAPEZOID_REL:g}), exact-path gap {kernel_gap:.2e} (< {EXACT_PATH:g})")
    return ok, detail


CRITERIA = {
    1: ("partition values", criterion_1),
    2: ("kernel golden vectors", criterion_2),
    3: ("kernel endpoint identities", criterion_3),
    4: ("tail property", criterion_4),
    5: ("reduced integral and sin/cos forms", criterion_5),
    6: ("generalized integral", criterion_6),
    7: ("full representation", criterion_7),
    8: ("vanishing moments", criterion_8),
    9: ("factorisation and leading-term suite", criterion_9),
    10: ("oracle equivalence", criterion_10),
    11: ("property suites", criterion_11),
}


def run_criterion(number: int) -> tuple[bool, str]:
    name, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} ({name}): {detail}"
    print(line)
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    ok, line = run_criterion(number)
    acceptance_log.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n)[0] for n in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
