"""Randomised algebraic and numerical properties (hypothesis)."""

import math
import warnings

import numpy as np
from helpers import l1_norm, trig_polys, vector_eval
from hypothesis import given, settings
from hypothesis import strategies as st

from partition_harmonics import PrecisionLoss, TrigPoly
from partition_harmonics.kernel_series import build_kernel
from partition_harmonics.quadrature import (
    evaluate_kernel_direct,
    evaluate_kernel_series,
    exact_integral,
    trapezoid_half_period,
)
from partition_harmonics.trig_algebra import (
    divide_by_sin,
    eval_exact_at_zero,
    evaluate,
    from_json,
    mul,
    to_json,
)

xs = st.floats(0.0, math.pi, allow_nan=False)


@given(trig_polys(), trig_polys())
def test_mul_commutes(p, q):
    assert mul(p, q) == mul(q, p)


@given(trig_polys(), trig_polys(), trig_polys())
@settings(max_examples=60)
def test_mul_associates(p, q, r):
    assert mul(mul(p, q), r) == mul(p, mul(q, r))


@given(trig_polys(), trig_polys(), trig_polys())
def test_mul_distributes(p, q, r):
    assert mul(p, q + r) == mul(p, q) + mul(p, r)


@given(trig_polys())
def test_additive_identity_and_inverse(p):
    assert p + TrigPoly.zero() == p
    assert (p - p).is_zero
    assert mul(p, TrigPoly.constant(1)) == p


@given(trig_polys(cosine_only=True), st.integers(1, 15))
def test_divide_round_trip(q, m):
    assert divide_by_sin(mul(q, TrigPoly.sin_term(m)), m) == q


@given(trig_polys())
def test_json_round_trip(p):
    assert from_json(to_json(p)) == p


@given(trig_polys(), trig_polys(), xs)
def test_eval_is_multiplicative(p, q, x):
    scale = 1.0 + l1_norm(p) * l1_norm(q)
    assert abs(evaluate(mul(p, q), x) - evaluate(p, x) * evaluate(q, x)) < 1e-9 * scale


@given(trig_polys())
def test_exact_zero_matches_float(p):
    with warnings.catch_warnings():
        warnings.simplefilter("error", PrecisionLoss)
        assert abs(float(eval_exact_at_zero(p)) - evaluate(p, 0.0)) < 1e-9


@given(st.integers(1, 12), st.lists(xs, min_size=1, max_size=20))
def test_evaluators_agree(s, points):
    x = np.array(points)
    k = np.arange(1, s + 1)[:, None]
    x = x[(np.abs(np.sin(k * x)) > 1e-3).all(axis=0)]
    if x.size:
        assert np.max(np.abs(evaluate_kernel_direct(s, x) - evaluate_kernel_series(s, x))) < 1e-8


@given(st.dictionaries(st.integers(0, 20), st.integers(-1000, 1000), max_size=8),
       st.integers(0, 6))
def test_trapezoid_exact_on_even_cosines(coeffs, extra):
    p = TrigPoly(cos={2 * n: c for n, c in coeffs.items()})
    nodes = p.max_frequency // 2 + 2 + extra
    got = trapezoid_half_period(lambda x: vector_eval(p, x), nodes)
    exact = exact_integral(p)
    assert abs(got - exact) <= 1e-10 * (abs(exact) + l1_norm(p) + 1.0)


@given(st.integers(1, 10), xs)
def test_kernel_symmetry(s, x):
    k = build_kernel(s)
    sign = (-1) ** (s * s)
    assert abs(k(math.pi - x) - sign * k(x)) < 1e-9 * math.comb(2 * s, s)
