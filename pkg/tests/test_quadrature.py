import math

import numpy as np
import pytest

from partition_harmonics import (
    CancellationRisk,
    EvaluatorUnavailable,
    InsufficientNodes,
    OddOffset,
    TrigPoly,
)
from partition_harmonics.kernel_series import build_kernel
from partition_harmonics.partitions import partition
from partition_harmonics.quadrature import (
    KernelEvaluator,
    QuadratureResult,
    QuadratureSpec,
    evaluate_full_kernel_direct,
    evaluate_kernel_direct,
    evaluate_kernel_series,
    exact_integral,
    exact_integral_parts,
    gauss_half_period,
    integrate_cos_form,
    integrate_full,
    integrate_general,
    integrate_reduced,
    integrate_sin_form,
    moment,
    moment_exact,
    trapezoid_half_period,
    vanishing_moment,
    verify_forms,
    verify_full,
    verify_general,
    verify_moments,
)

TRAPEZOID = QuadratureSpec()
GAUSS = QuadratureSpec(rule="gauss")
DIRECT = QuadratureSpec(evaluator="direct")


class TestSpec:
    def test_aliases(self):
        assert QuadratureSpec(rule="trapezoid").rule == "uniform_trapezoid"
        assert QuadratureSpec(rule="gauss").rule == "gauss_legendre"

    @pytest.mark.parametrize("kwargs", [{"rule": "simpson"}, {"evaluator": "guess"}, {"nodes": 0}])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            QuadratureSpec(**kwargs)

    def test_auto_node_counts(self):
        assert TRAPEZOID.node_count(60) == 38
        assert GAUSS.node_count(60) == 46

    def test_trapezoid_node_floor(self):
        with pytest.raises(InsufficientNodes):
            QuadratureSpec(nodes=30).node_count(60)
        assert QuadratureSpec(nodes=31).node_count(60) == 31

    def test_gauss_node_floor(self):
        with pytest.raises(InsufficientNodes):
            QuadratureSpec(rule="gauss", nodes=37).node_count(60)


class TestResult:
    def test_rounding_contract(self):
        r = QuadratureResult(10.9999999, TRAPEZOID)
        assert r.rounded == 11
        assert r.residual == pytest.approx(1e-7)
        assert r.trusted

    def test_untrusted(self):
        assert not QuadratureResult(10.3, TRAPEZOID).trusted

    def test_to_dict(self):
        d = integrate_reduced(4).to_dict()
        assert d["rounded"] == 5
        assert d["rule"] == "uniform_trapezoid"
        assert d["evaluator"] == "series"


class TestEvaluators:
    def test_removable_singularity(self):
        assert evaluate_kernel_direct(3, math.pi / 3) == pytest.approx(-2.0, abs=1e-6)
        assert evaluate_kernel_series(3, math.pi / 3) == pytest.approx(-2.0, abs=1e-12)

    def test_regular_point(self):
        assert evaluate_kernel_direct(2, 0.1) == pytest.approx(evaluate_kernel_series(2, 0.1), abs=1e-10)

    def test_first_kernel_at_half_pi(self):
        assert evaluate_kernel_direct(1, math.pi / 2) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("s", [1, 4, 7, 12])
    def test_endpoints(self, s):
        assert evaluate_kernel_direct(s, 0.0) == pytest.approx(math.comb(2 * s, s), rel=1e-12)
        assert evaluate_kernel_direct(s, math.pi) == pytest.approx(
            math.comb(2 * s, s) * (-1) ** (s * s), rel=1e-12)

    def test_vectorised(self):
        x = np.linspace(0, math.pi, 101)
        a = evaluate_kernel_direct(6, x)
        b = evaluate_kernel_series(6, x)
        assert a.shape == (101,)
        assert np.max(np.abs(a - b)) < 1e-8

    def test_full_kernel_first_order(self):
        x = np.array([0.0, 0.4, math.pi / 2])
        assert np.allclose(evaluate_full_kernel_direct(1, x), 2 * np.cos(x))

    def test_full_kernel_has_no_series(self):
        with pytest.raises(EvaluatorUnavailable):
            KernelEvaluator(3, "series", "full")

    def test_amplitude(self):
        assert KernelEvaluator(12).amplitude == math.comb(24, 12)
        assert KernelEvaluator(8, "direct", "full").amplitude == 9.0 ** 8


class TestRules:
    def test_trapezoid_exact_for_cosine_polynomial(self):
        p = TrigPoly(cos={0: 3, 2: 5, 10: -7})
        f = lambda x: 3 + 5 * np.cos(2 * x) - 7 * np.cos(10 * x)
        assert trapezoid_half_period(f, 6) == pytest.approx(exact_integral(p), abs=1e-13)

    def test_gauss(self):
        assert gauss_half_period(np.cos, 20) == pytest.approx(1.0, abs=1e-14)

    def test_trapezoid_refuses_mixed_parity(self):
        with pytest.raises(ValueError):
            moment(3, 10)


class TestIntegrals:
    @pytest.mark.parametrize("s, expected", [(2, 2), (6, 11), (12, 77)])
    def test_reduced(self, s, expected):
        r = integrate_reduced(s)
        assert r.rounded == expected
        assert r.residual < 1e-6

    @pytest.mark.parametrize("fn, s, expected", [
        (integrate_sin_form, 3, 3),
        (integrate_cos_form, 1, 1),
        (integrate_sin_form, 9, 30),
    ])
    def test_endpoint_forms(self, fn, s, expected):
        assert fn(s).rounded == expected

    @pytest.mark.parametrize("s", range(1, 11))
    def test_forms_average_to_reduced(self, s):
        avg = (integrate_sin_form(s).raw + integrate_cos_form(s).raw) / 2
        assert abs(avg - integrate_reduced(s).raw) < 1e-8

    @pytest.mark.parametrize("s, expected", [(1, 1), (2, 2), (8, 22)])
    def test_full(self, s, expected):
        r = integrate_full(s)
        assert r.rounded == expected
        assert r.residual < 1e-6

    def test_full_rejects_series(self):
        with pytest.raises(EvaluatorUnavailable):
            integrate_full(3, TRAPEZOID)

    @pytest.mark.parametrize("s, m, expected", [(3, 2, 3), (5, 0, 7), (2, 4, 2)])
    def test_general(self, s, m, expected):
        assert integrate_general(s, m).rounded == expected

    def test_general_rejects_negative_m(self):
        with pytest.raises(ValueError):
            integrate_general(3, -1)

    @pytest.mark.parametrize("spec", [TRAPEZOID, GAUSS, DIRECT, QuadratureSpec(rule="gauss", evaluator="direct")])
    def test_rule_and_evaluator_combinations(self, spec):
        for s in range(1, 13):
            r = integrate_reduced(s, spec)
            assert r.rounded == partition(s)
            assert r.residual < 1e-6

    def test_explicit_nodes(self):
        r = integrate_reduced(6, QuadratureSpec(nodes=31))
        assert r.nodes == 31
        assert r.rounded == 11

    def test_too_few_nodes(self):
        with pytest.raises(InsufficientNodes):
            integrate_reduced(6, QuadratureSpec(nodes=30))

    def test_envelope(self):
        with pytest.raises(CancellationRisk):
            integrate_reduced(15)
        with pytest.raises(CancellationRisk):
            integrate_full(9)

    def test_envelope_can_be_lifted(self):
        r = integrate_reduced(16, QuadratureSpec(check_envelope=False))
        assert r.rounded == partition(16)


class TestMoments:
    @pytest.mark.parametrize("s, offset", [(2, 2), (4, 4), (10, 20)])
    def test_vanishing(self, s, offset):
        assert abs(vanishing_moment(s, offset)) < 1e-8

    def test_odd_offset_rejected(self):
        with pytest.raises(OddOffset):
            vanishing_moment(3, 1)

    def test_offset_floor(self):
        with pytest.raises(ValueError):
            vanishing_moment(3, 0)

    def test_odd_offset_value_is_nonzero(self):
        exact = moment_exact(3, 10)
        assert abs(exact) > 0.1
        assert moment(3, 10, GAUSS) == pytest.approx(exact, abs=1e-10)

    @pytest.mark.parametrize("s", range(1, 9))
    def test_quadrature_matches_exact_path(self, s):
        for freq in range(s % 2, s * s + 6, 2):
            assert moment(s, freq) == pytest.approx(moment_exact(s, freq), abs=1e-9)


class TestExactPath:
    def test_parts(self):
        # int_0^{pi/2} (1 + cos x + sin 2x) = pi/2 + 1 + 1
        rational, pi_part = exact_integral_parts(TrigPoly(cos={0: 1, 1: 1}, sin={2: 1}))
        assert rational == 2
        assert pi_part == 0.5

    def test_even_cosines_vanish(self):
        assert exact_integral(TrigPoly(cos={2: 5, 8: 3})) == 0.0


def test_verification_reports():
    assert verify_forms(12).passed
    assert verify_full(8).passed
    assert verify_general(8, 5).passed
    assert verify_moments(10).passed
