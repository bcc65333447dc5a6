"""Numerical evaluation of the harmonic integral representations of p_s.

Every integrand here is ``kernel(x) * phase(x)`` on ``[0, pi/2]``. When the
kernel's frequencies and the phase's frequencies share parity, the product
only carries even frequencies, so it is pi-periodic and symmetric about
``pi/2``. The uniform trapezoid rule with ``N > F/2`` nodes on ``[0, pi)``
is then exact for a top frequency ``F``; only ``0 <= j <= N/2`` needs to be
evaluated.

Two kernel evaluators are available: ``direct`` multiplies the sine ratios
and replaces removable zeros by their limit, and ``series`` sums the exact
cosine series in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Literal

import numpy as np

from . import kernels
from .errors import CancellationRisk, EvaluatorUnavailable, InsufficientNodes, OddOffset
from .kernel_series import build_kernel, exact_projection
from .partitions import partition
from .report import VerificationReport
from .trig_algebra import TrigPoly

__all__ = [
    "QuadratureSpec",
    "QuadratureResult",
    "KernelEvaluator",
    "Integrand",
    "evaluate_kernel_direct",
    "evaluate_kernel_series",
    "evaluate_full_kernel_direct",
    "integrate_reduced",
    "integrate_sin_form",
    "integrate_cos_form",
    "integrate_full",
    "integrate_general",
    "integrate_projection",
    "vanishing_moment",
    "moment",
    "moment_exact",
    "exact_integral",
    "exact_integral_parts",
    "trapezoid_half_period",
    "gauss_half_period",
    "AMPLITUDE_LIMIT",
    "verify_forms",
    "verify_full",
    "verify_general",
    "verify_moments",
]

Rule = Literal["uniform_trapezoid", "gauss_legendre"]
Strategy = Literal["direct", "series"]

# Largest kernel amplitude (value at x = 0) for which float quadrature is
# certified to round correctly with residual < 1e-6.
AMPLITUDE_LIMIT = 5.0e7

RULE_ALIASES = {"trapezoid": "uniform_trapezoid", "gauss": "gauss_legendre"}


@dataclass(frozen=True)
class QuadratureSpec:
    """How to evaluate an integral.

    ``nodes=None`` sizes the rule from the integrand's top frequency ``F``:
    ``ceil(F/2) + 8`` trapezoid nodes or ``ceil(F/2) + 16`` Gauss nodes.
    """

    rule: Rule = "uniform_trapezoid"
    nodes: int | None = None
    evaluator: Strategy = "series"
    singularity_tolerance: float = 1e-9
    check_envelope: bool = True

    def __post_init__(self):
        rule = RULE_ALIASES.get(self.rule, self.rule)
        if rule not in ("uniform_trapezoid", "gauss_legendre"):
            raise ValueError(f"unknown rule {self.rule!r}")
        object.__setattr__(self, "rule", rule)
        if self.evaluator not in ("direct", "series"):
            raise ValueError(f"unknown evaluator {self.evaluator!r}")
        if self.nodes is not None and self.nodes < 1:
            raise ValueError("nodes must be >= 1")

    def node_count(self, max_freq: int) -> int:
        half = -(-max_freq // 2)
        if self.rule == "uniform_trapezoid":
            if self.nodes is None:
                return half + 8
            if 2 * self.nodes <= max_freq:
                raise InsufficientNodes(
                    f"trapezoid needs more than {max_freq / 2:g} nodes for top frequency "
                    f"{max_freq}, got {self.nodes}")
            return self.nodes
        if self.nodes is None:
            return half + 16
        if self.nodes < half + 8:
            raise InsufficientNodes(
                f"Gauss-Legendre needs at least {half + 8} nodes for top frequency "
                f"{max_freq}, got {self.nodes}")
        return self.nodes


@dataclass(frozen=True)
class QuadratureResult:
    raw: float
    spec: QuadratureSpec
    nodes: int = 0
    form: str = ""
    params: dict = field(default_factory=dict)

    @property
    def rounded(self) -> int:
        return int(round(self.raw))

    @property
    def residual(self) -> float:
        return abs(self.raw - self.rounded)

    @property
    def trusted(self) -> bool:
        """Results with residual >= 0.25 are not to be rounded silently."""
        return self.residual < 0.25

    def to_dict(self) -> dict:
        return {
            "form": self.form,
            "params": dict(self.params),
            "raw": self.raw,
            "rounded": self.rounded,
            "residual": self.residual,
            "trusted": self.trusted,
            "rule": self.spec.rule,
            "nodes": self.nodes,
            "evaluator": self.spec.evaluator,
        }


# -- kernel evaluation -------------------------------------------------------


def _d_factors(s: int):
    return np.arange(s + 1, 2 * s + 1), np.arange(1, s + 1)


def _full_factors(s: int):
    k = np.arange(1, s + 1)
    return k * (s + 1), k


def evaluate_kernel_direct(s: int, x, tol: float = 1e-9):
    """``D_s(x)`` as the literal product ``prod sin((s+k) x) / sin(k x)``.

    Where ``|sin(k x)| < tol`` the singularity is removable: each vanishing
    sine is replaced by its derivative ``a cos(a x)``, which gives the limit
    of the product exactly when numerator and denominator zeros pair up.
    """
    num, den = _d_factors(s)
    out = kernels.sine_ratio_product(num, den, np.atleast_1d(np.asarray(x, float)), tol)
    return out if np.ndim(x) else float(out[0])


def evaluate_full_kernel_direct(s: int, x, tol: float = 1e-9):
    """``prod sin(k (s+1) x) / sin(k x)``, the larger kernel of the full representation."""
    num, den = _full_factors(s)
    out = kernels.sine_ratio_product(num, den, np.atleast_1d(np.asarray(x, float)), tol)
    return out if np.ndim(x) else float(out[0])


@lru_cache(maxsize=64)
def _series_arrays(s: int):
    coeffs = build_kernel(s).coefficients
    return (np.fromiter(coeffs.keys(), dtype=np.int64, count=len(coeffs)),
            np.array([float(c) for c in coeffs.values()]))


def evaluate_kernel_series(s: int, x):
    """``D_s(x)`` from the exact cosine series."""
    freqs, coeffs = _series_arrays(s)
    out = kernels.cosine_series(freqs, coeffs, np.atleast_1d(np.asarray(x, float)))
    return out if np.ndim(x) else float(out[0])


@dataclass(frozen=True)
class KernelEvaluator:
    """Vectorised evaluator for one kernel.

    ``kind="reduced"`` is ``D_s``; ``kind="full"`` is the product
    ``prod sin(k (s+1) x)/sin(k x)``, for which only ``direct`` exists.
    """

    s: int
    strategy: Strategy = "series"
    kind: Literal["reduced", "full"] = "reduced"
    tol: float = 1e-9

    def __post_init__(self):
        if self.kind == "full" and self.strategy == "series":
            raise EvaluatorUnavailable("the full kernel has no exact series; use the direct evaluator")

    @property
    def max_freq(self) -> int:
        s = self.s
        return s * s if self.kind == "reduced" else s * s * (s + 1) // 2

    @property
    def amplitude(self) -> float:
        """Value at ``x = 0``, the largest magnitude the kernel attains."""
        s = self.s
        return float(comb(2 * s, s)) if self.kind == "reduced" else float((s + 1) ** s)

    def __call__(self, x):
        if self.kind == "full":
            return evaluate_full_kernel_direct(self.s, x, self.tol)
        if self.strategy == "direct":
            return evaluate_kernel_direct(self.s, x, self.tol)
        return evaluate_kernel_series(self.s, x)


# -- rules -------------------------------------------------------------------


def trapezoid_half_period(f: Callable, nodes: int) -> float:
    """``int_0^{pi/2} f`` for an even-frequency cosine polynomial ``f``.

    Uses ``(pi / 2N) sum_{j<N} f(j pi / N)`` folded by ``f(pi - x) = f(x)``.
    """
    j = np.arange(nodes // 2 + 1)
    w = np.full(j.size, 2.0)
    w[0] = 1.0
    if nodes % 2 == 0:
        w[-1] = 1.0
    values = np.asarray(f(j * (math.pi / nodes)), dtype=float) * w
    return kernels.pairwise_sum(values) * (math.pi / (2 * nodes))


def gauss_half_period(f: Callable, nodes: int) -> float:
    """Gauss-Legendre ``int_0^{pi/2} f``."""
    t, w = np.polynomial.legendre.leggauss(nodes)
    x = (t + 1.0) * (math.pi / 4)
    values = np.asarray(f(x), dtype=float) * w
    return kernels.pairwise_sum(values) * (math.pi / 4)


# -- integrands --------------------------------------------------------------


@dataclass(frozen=True)
class Integrand:
    """``factor * int_0^{pi/2} kernel(x) * phase(x) dx``.

    ``phase`` is a list of ``(amplitude, frequency)`` cosine terms.
    """

    kernel: KernelEvaluator
    phase: tuple[tuple[float, int], ...]
    factor: float
    literal_phase: Callable | None = None

    @property
    def max_freq(self) -> int:
        return self.kernel.max_freq + max(abs(f) for _, f in self.phase)

    @property
    def even(self) -> bool:
        parity = self.kernel.max_freq % 2
        return all(abs(f) % 2 == parity for _, f in self.phase)

    def phase_values(self, x):
        if self.literal_phase is not None:
            return self.literal_phase(x)
        return sum(a * np.cos(f * x) for a, f in self.phase)

    def __call__(self, x):
        return self.kernel(x) * self.phase_values(x)


def _integrate(integrand: Integrand, spec: QuadratureSpec, form: str, params: dict) -> QuadratureResult:
    if spec.check_envelope and integrand.kernel.amplitude > AMPLITUDE_LIMIT:
        raise CancellationRisk(
            f"kernel amplitude {integrand.kernel.amplitude:.3g} exceeds the float envelope "
            f"{AMPLITUDE_LIMIT:.3g}; use the exact coefficient path instead")
    n = spec.node_count(integrand.max_freq)
    if spec.rule == "uniform_trapezoid":
        if not integrand.even:
            raise ValueError("trapezoid exactness needs matching kernel/phase parity; use gauss")
        value = trapezoid_half_period(integrand, n)
    else:
        value = gauss_half_period(integrand, n)
    return QuadratureResult(integrand.factor * value, spec, n, form, params)


def _kernel(s: int, spec: QuadratureSpec, kind="reduced") -> KernelEvaluator:
    if s < 1:
        raise ValueError("s must be >= 1")
    return KernelEvaluator(s, spec.evaluator, kind, spec.singularity_tolerance)


def integrate_reduced(s: int, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """``(2/pi) int_0^{pi/2} D_s(x) cos((s^2 - 2s) x) dx``, which rounds to ``p_s``."""
    spec = spec or QuadratureSpec()
    integrand = Integrand(_kernel(s, spec), ((1.0, s * s - 2 * s),), 2 / math.pi)
    return _integrate(integrand, spec, "reduced", {"s": s})


def integrate_sin_form(s: int, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """``(4/pi) int_0^{pi/2} D_s(x) sin(2 s x) sin(s^2 x) dx``."""
    spec = spec or QuadratureSpec()
    integrand = Integrand(
        _kernel(s, spec), ((0.5, s * s - 2 * s), (-0.5, s * s + 2 * s)), 4 / math.pi,
        literal_phase=lambda x: np.sin(2 * s * x) * np.sin(s * s * x))
    return _integrate(integrand, spec, "sin", {"s": s})


def integrate_cos_form(s: int, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """``(4/pi) int_0^{pi/2} D_s(x) cos(2 s x) cos(s^2 x) dx``."""
    spec = spec or QuadratureSpec()
    integrand = Integrand(
        _kernel(s, spec), ((0.5, s * s - 2 * s), (0.5, s * s + 2 * s)), 4 / math.pi,
        literal_phase=lambda x: np.cos(2 * s * x) * np.cos(s * s * x))
    return _integrate(integrand, spec, "cos", {"s": s})


def integrate_full(s: int, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """``(2/pi) int_0^{pi/2} prod sin(k(s+1)x)/sin(kx) cos((s^2(s+1)/2 - 2s) x) dx``.

    This kernel is only evaluated as a direct product.
    """
    spec = spec or QuadratureSpec(evaluator="direct")
    if spec.evaluator != "direct":
        raise EvaluatorUnavailable("the full representation supports only the direct evaluator")
    phase = s * s * (s + 1) // 2 - 2 * s
    integrand = Integrand(_kernel(s, spec, "full"), ((1.0, phase),), 2 / math.pi)
    return _integrate(integrand, spec, "full", {"s": s})


def integrate_general(s: int, m: int, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """``(2/pi) int_0^{pi/2} D_{s+m}(x) cos(((s+m)^2 - 2s) x) dx``; rounds to ``p_s`` for all ``m >= 0``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    spec = spec or QuadratureSpec()
    order = s + m
    integrand = Integrand(_kernel(order, spec), ((1.0, order * order - 2 * s),), 2 / math.pi)
    return _integrate(integrand, spec, "general", {"s": s, "m": m})


def integrate_projection(s: int, freq: int, spec: QuadratureSpec | None = None) -> float:
    """``(2/pi) int_0^{pi/2} D_s(x) cos(freq x) dx`` as a float."""
    spec = spec or QuadratureSpec()
    integrand = Integrand(_kernel(s, spec), ((1.0, freq),), 2 / math.pi)
    return _integrate(integrand, spec, "projection", {"s": s, "freq": freq}).raw


def moment(s: int, freq: int, spec: QuadratureSpec | None = None) -> float:
    """Unnormalised ``int_0^{pi/2} D_s(x) cos(freq x) dx`` for any frequency.

    Mismatched parity needs the Gauss rule; pass ``QuadratureSpec(rule="gauss_legendre")``.
    """
    spec = spec or QuadratureSpec()
    integrand = Integrand(_kernel(s, spec), ((1.0, freq),), 1.0)
    return _integrate(integrand, spec, "moment", {"s": s, "freq": freq}).raw


def vanishing_moment(s: int, offset: int, spec: QuadratureSpec | None = None) -> float:
    """``int_0^{pi/2} D_s(x) cos((s^2 + offset) x) dx``, zero for even ``offset >= 2``.

    Odd offsets are rejected: the integrand then carries odd frequencies and
    the integral does not vanish (see :func:`moment_exact`).
    """
    if offset % 2:
        raise OddOffset(f"offset {offset} is odd; the moment does not vanish for odd offsets")
    if offset < 2:
        raise ValueError("offset must be >= 2")
    return moment(s, s * s + offset, spec)


# -- exact path --------------------------------------------------------------


def exact_integral_parts(p: TrigPoly) -> tuple[Fraction, Fraction]:
    """``int_0^{pi/2} p(x) dx = rational + pi_multiple * pi``, both exact.

    Uses ``int cos(n x) = sin(n pi/2)/n`` and ``int sin(n x) = (1 - cos(n pi/2))/n``.
    """
    rational = Fraction(0)
    pi_part = Fraction(0)
    for n, c in p.cos_terms().items():
        if n == 0:
            pi_part += c / 2
        elif n % 2:
            rational += c * (1 if n % 4 == 1 else -1) / n
    for n, b in p.sin_terms().items():
        r = n % 4
        cos_val = 1 if r == 0 else (-1 if r == 2 else 0)
        rational += b * (1 - cos_val) / n
    return rational, pi_part


def exact_integral(p: TrigPoly) -> float:
    """``int_0^{pi/2} p(x) dx`` from the coefficients alone."""
    rational, pi_part = exact_integral_parts(p)
    return float(rational) + float(pi_part) * math.pi


def moment_exact(s: int, freq: int) -> float:
    """Exact ``int_0^{pi/2} D_s(x) cos(freq x) dx``; nonzero in general for odd ``freq - s^2``."""
    integrand = build_kernel(s).series * TrigPoly.cos_term(abs(freq))
    return exact_integral(integrand)


# -- verification ------------------------------------------------------------

RESIDUAL_TOL = 1e-6
AGREEMENT_TOL = 1e-8
MOMENT_TOL = 1e-8


def verify_forms(s: int, spec: QuadratureSpec | None = None) -> VerificationReport:
    """Reduced, sine and cosine forms all round to ``p_s``; the forms average to the reduced value."""
    spec = spec or QuadratureSpec()
    p = partition(s)
    report = VerificationReport("quadrature_forms", {"s": s})
    reduced = integrate_reduced(s, spec)
    sin_form = integrate_sin_form(s, spec)
    cos_form = integrate_cos_form(s, spec)
    for name, r in (("reduced", reduced), ("sin", sin_form), ("cos", cos_form)):
        report.add(f"{name} rounds to p_s", p, r.rounded)
        report.add(f"{name} residual", f"< {RESIDUAL_TOL:g}", r.residual, r.residual < RESIDUAL_TOL)
    gap = abs((sin_form.raw + cos_form.raw) / 2 - reduced.raw)
    report.add("average of sin/cos forms vs reduced", f"< {AGREEMENT_TOL:g}", gap, gap < AGREEMENT_TOL)
    report.info["reduced"] = reduced.raw
    return report


def verify_full(s: int, spec: QuadratureSpec | None = None) -> VerificationReport:
    spec = spec or QuadratureSpec(evaluator="direct")
    r = integrate_full(s, spec)
    report = VerificationReport("quadrature_full", {"s": s})
    report.add("rounds to p_s", partition(s), r.rounded)
    report.add("residual", f"< {RESIDUAL_TOL:g}", r.residual, r.residual < RESIDUAL_TOL)
    return report


def verify_general(s: int, m: int, spec: QuadratureSpec | None = None) -> VerificationReport:
    r = integrate_general(s, m, spec)
    report = VerificationReport("quadrature_general", {"s": s, "m": m})
    report.add("rounds to p_s", partition(s), r.rounded)
    report.add("residual", f"< {RESIDUAL_TOL:g}", r.residual, r.residual < RESIDUAL_TOL)
    report.add("exact coefficient path", partition(s), exact_projection(s + m, (s + m) ** 2 - 2 * s))
    return report


def verify_moments(s: int, offsets=range(2, 21, 2), spec: QuadratureSpec | None = None) -> VerificationReport:
    report = VerificationReport("vanishing_moments", {"s": s})
    for offset in offsets:
        value = vanishing_moment(s, offset, spec)
        report.add(f"offset {offset}", f"|.| < {MOMENT_TOL:g}", value, abs(value) < MOMENT_TOL)
    return report
