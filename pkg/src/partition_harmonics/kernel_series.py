"""Exact cosine series of the kernel ``D_s(x) = prod_{k=1}^{s} sin((s+k) x) / sin(k x)``.

The series is built by the recursion

    D_{s+1}(x) sin((s+1) x) = D_s(x) [sin((3s+2) x) + sin(s x)],

starting from ``D_1 = 2 cos x``: multiply exactly, then divide exactly by
``sin((s+1) x)``. No floating point is involved.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import KernelInvariantError, OrderTooSmall
from .partitions import binomial, partitions_euler
from .report import VerificationReport
from .trig_algebra import TrigPoly, divide_by_sin, mul

__all__ = [
    "KernelSeries",
    "Tail",
    "build_kernel",
    "kernel_at_zero",
    "kernel_at_half_pi",
    "term_count",
    "extract_tail",
    "coefficient_by_orthogonality",
    "recursion_step",
    "format_kernel",
    "SUPPORTED_MAX_ORDER",
    "exact_projection",
    "expected_term_count",
    "verify_kernel",
    "verify_tail",
]

SUPPORTED_MAX_ORDER = 100


@dataclass(frozen=True)
class KernelSeries:
    s: int
    series: TrigPoly

    @property
    def max_freq(self) -> int:
        return self.series.max_frequency

    @property
    def coefficients(self) -> dict[int, int]:
        """Frequency -> integer cosine coefficient, ascending."""
        return self.series.integer_cos()

    def coefficient(self, n: int) -> int:
        return self.coefficients.get(n, 0)

    def __call__(self, x: float) -> float:
        return self.series(x)


@dataclass(frozen=True)
class Tail:
    """Halved coefficients at frequencies ``s^2, s^2 - 2, ..., s^2 - 2s``."""

    s: int
    coeffs: tuple[int, ...]

    @property
    def frequencies(self) -> tuple[int, ...]:
        return tuple(self.s * self.s - 2 * j for j in range(self.s + 1))

    def as_poly(self) -> TrigPoly:
        return TrigPoly(cos={f: 2 * c for f, c in zip(self.frequencies, self.coeffs)})


def recursion_step(prev: TrigPoly, k: int) -> TrigPoly:
    """``D_{k+1}`` from ``D_k``."""
    rhs = mul(prev, TrigPoly(sin={3 * k + 2: 1, k: 1}))
    return divide_by_sin(rhs, k + 1)


_cache: list[TrigPoly] = [TrigPoly(cos={1: 2})]
_lock = threading.Lock()


def _check_invariants(s: int, p: TrigPoly) -> None:
    if not p.is_integral or not p.is_cosine_only:
        raise KernelInvariantError(f"D_{s} is not an integer cosine series")
    coeffs = p.integer_cos()
    if p.max_frequency != s * s:
        raise KernelInvariantError(f"D_{s} max frequency {p.max_frequency} != {s * s}")
    parity = (s * s) % 2
    if any(n % 2 != parity for n in coeffs):
        raise KernelInvariantError(f"D_{s} has a frequency of the wrong parity")
    if any(c <= 0 or c % 2 for c in coeffs.values()):
        raise KernelInvariantError(f"D_{s} has a coefficient that is not a positive even integer")
    if sum(coeffs.values()) != comb(2 * s, s):
        raise KernelInvariantError(f"D_{s}(0) != C({2 * s}, {s})")


def build_kernel(s: int) -> KernelSeries:
    """Exact cosine series of ``D_s``.

    Every order up to ``s`` is computed once and cached. All structural
    invariants are checked before returning; a violation raises
    :class:`KernelInvariantError`.

    >>> build_kernel(2).coefficients
    {0: 2, 2: 2, 4: 2}
    """
    if s < 1:
        raise ValueError("order must be >= 1")
    if s > SUPPORTED_MAX_ORDER:
        raise ValueError(f"orders above {SUPPORTED_MAX_ORDER} are outside the supported envelope")
    with _lock:
        while len(_cache) < s:
            k = len(_cache)
            nxt = recursion_step(_cache[-1], k)
            _check_invariants(k + 1, nxt)
            _cache.append(nxt)
        series = _cache[s - 1]
    if s == 1:
        _check_invariants(1, series)
    return KernelSeries(s, series)


def kernel_at_zero(k: KernelSeries) -> int:
    """Exact ``D_s(0)``, the sum of all coefficients."""
    return sum(k.coefficients.values())


def kernel_at_half_pi(k: KernelSeries) -> int:
    """Exact ``D_s(pi/2)``.

    Odd orders only carry odd frequencies, which all vanish at ``pi/2``.
    """
    if k.s % 2:
        return 0
    return sum(c if (n // 2) % 2 == 0 else -c for n, c in k.coefficients.items())


def term_count(k: KernelSeries) -> int:
    return len(k.coefficients)


def expected_term_count(s: int) -> int:
    return (s * s + 2) // 2 if s % 2 == 0 else (s * s + 1) // 2


def extract_tail(k: KernelSeries) -> Tail:
    """Halved coefficients of the ``s + 1`` highest-frequency terms."""
    s = k.s
    if s < 3:
        raise OrderTooSmall("tails are defined for s >= 3; use the integral forms for s <= 2")
    coeffs = k.coefficients
    out = []
    for j in range(s + 1):
        c = coeffs.get(s * s - 2 * j, 0)
        if c % 2:
            raise KernelInvariantError(f"odd coefficient {c} in the tail of D_{s}")
        out.append(c // 2)
    return Tail(s, tuple(out))


def coefficient_by_orthogonality(k: KernelSeries, m: int, quad=None) -> float:
    """Recover a cosine coefficient of ``D_s`` numerically.

    Even ``s``: ``(4/pi) int_0^{pi/2} D_s(x) cos(2 m x) dx`` for
    ``0 <= m <= s^2/2``; odd ``s``: the same with ``cos((2m-1) x)`` for
    ``1 <= m <= (s^2+1)/2``. The constant term (even ``s``, ``m = 0``) has
    orthogonality weight 1 instead of 1/2, so its integral is halved.

    Returns the coefficient of ``cos(2m x)`` (resp. ``cos((2m-1) x)``) in
    the series, which must match ``k.coefficient(...)``.
    """
    from .quadrature import QuadratureSpec, integrate_projection

    s = k.s
    if s % 2 == 0:
        if not 0 <= m <= s * s // 2:
            raise ValueError(f"m must lie in 0..{s * s // 2} for even s")
        freq = 2 * m
    else:
        if not 1 <= m <= (s * s + 1) // 2:
            raise ValueError(f"m must lie in 1..{(s * s + 1) // 2} for odd s")
        freq = 2 * m - 1
    quad = quad or QuadratureSpec()
    value = integrate_projection(s, freq, quad)
    # integrate_projection returns (2/pi) int D_s cos(freq x); scale to 4/pi
    value *= 2.0
    if freq == 0:
        value /= 2.0
    return value


def _num(c: int) -> str:
    return "" if c == 1 else str(c)


def format_kernel(k: KernelSeries) -> str:
    """Layout used in print: ``2(4 + 7cos 2x + ...)``."""
    coeffs = k.coefficients
    parts = []
    for n, c in coeffs.items():
        half = c // 2
        if n == 0:
            parts.append(str(half))
        else:
            arg = "x" if n == 1 else f"{n}x"
            parts.append(f"{_num(half)}cos {arg}")
    return "2(" + " + ".join(parts) + ")"


def exact_projection(s: int, freq: int) -> Fraction:
    """Exact ``(2/pi) int_0^{pi/2} D_s(x) cos(freq x) dx`` for a same-parity frequency.

    Only the matching cosine coefficient survives: half of it for
    ``freq != 0``, the whole constant term for ``freq == 0``.
    """
    freq = abs(freq)
    if (freq - s * s) % 2:
        raise ValueError("frequency parity differs from the kernel's")
    c = build_kernel(s).coefficient(freq)
    return Fraction(c) if freq == 0 else Fraction(c, 2)


def verify_kernel(s: int, *, recursion: bool = True) -> VerificationReport:
    """Endpoint values, term count and parity of ``D_s``; optionally the recursion identity."""
    k = build_kernel(s)
    report = VerificationReport("kernel", {"s": s})
    report.add("D(0) == C(2s, s)", binomial(2 * s, s), kernel_at_zero(k))
    half = binomial(s, s // 2) if s % 2 == 0 else 0
    report.add("D(pi/2)", half, kernel_at_half_pi(k))
    report.add("term count", expected_term_count(s), term_count(k))
    report.add("max frequency", s * s, k.max_freq)
    wrong = [n for n in k.coefficients if n % 2 != (s * s) % 2]
    report.add("frequency parity", [], wrong)
    if recursion:
        lhs = mul(build_kernel(s + 1).series, TrigPoly.sin_term(s + 1))
        rhs = mul(k.series, TrigPoly(sin={3 * s + 2: 1, s: 1}))
        report.add("recursion identity", True, lhs == rhs)
    return report


def verify_tail(s: int) -> VerificationReport:
    """Halved tail coefficients equal ``p_0 .. p_s``."""
    tail = extract_tail(build_kernel(s))
    expected = partitions_euler(s).values
    report = VerificationReport("tail", {"s": s})
    for j, (want, got) in enumerate(zip(expected, tail.coeffs)):
        report.add(f"cos {s * s - 2 * j}x", want, got)
    return report
