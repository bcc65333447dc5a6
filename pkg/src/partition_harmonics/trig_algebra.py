"""Exact arithmetic on finite trigonometric polynomials.

A :class:`TrigPoly` is a finite sum ``sum c_n cos(n x) + sum b_n sin(n x)``
with dyadic-rational coefficients. Product-to-sum expansion only ever
introduces factors of 1/2, so every coefficient is an integer divided by a
power of two. Internally all coefficients of one polynomial share a single
power-of-two denominator, which keeps the hot multiply loop in plain integer
arithmetic.

Negative frequencies produced by product-to-sum expansion are folded onto
non-negative ones: ``cos(-k x) = cos(k x)``, ``sin(-k x) = -sin(k x)`` and
``sin(0 x)`` is dropped.
"""

from __future__ import annotations

import json
import math
import warnings
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import NotDivisible, PrecisionLoss, SingularSample
from .report import VerificationReport

__all__ = [
    "Dyadic",
    "TrigPoly",
    "add",
    "mul",
    "divide_by_sin",
    "evaluate",
    "eval_exact_at_zero",
    "verify_harmonic_sum_identity",
    "fractional_sine_sum",
    "fractional_cosine_sum",
    "to_json",
    "from_json",
]

_MANTISSA_LIMIT = 2**53


def _twos(n: int) -> int:
    """Number of trailing zero bits of a nonzero integer."""
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class Dyadic:
    """The exact value ``numerator / 2**exponent`` in canonical form."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be non-negative")
        num, exp = self.numerator, self.exponent
        if num == 0:
            exp = 0
        elif exp:
            shift = min(_twos(num), exp)
            num >>= shift
            exp -= shift
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def from_value(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Rational):
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"{value} is not a dyadic rational")
            return cls(value.numerator, den.bit_length() - 1)
        raise TypeError(f"cannot convert {type(value).__name__} to Dyadic")

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __float__(self) -> float:
        return math.ldexp(float(self.numerator), -self.exponent)


def _as_scaled(value) -> tuple[int, int]:
    d = Dyadic.from_value(value)
    return d.numerator, d.exponent


class TrigPoly:
    """Immutable exact trigonometric polynomial.

    Parameters
    ----------
    cos, sin : mapping of int to number, optional
        Frequency to coefficient. Coefficients may be ``int``,
        :class:`~fractions.Fraction` with a power-of-two denominator, or
        :class:`Dyadic`.

    Examples
    --------
    >>> p = TrigPoly(cos={1: 2})
    >>> p * p == TrigPoly(cos={0: 2, 2: 2})
    True
    """

    __slots__ = ("_cos", "_sin", "_exp", "_hash")

    def __init__(self, cos: Mapping[int, object] | None = None,
                 sin: Mapping[int, object] | None = None):
        entries = []
        for kind, terms in (("c", cos or {}), ("s", sin or {})):
            for n, value in terms.items():
                n = int(n)
                if n < 0:
                    raise ValueError(f"negative frequency {n}")
                num, exp = _as_scaled(value)
                entries.append((kind, n, num, exp))
        exp = max((e for *_, e in entries), default=0)
        c: dict[int, int] = defaultdict(int)
        s: dict[int, int] = defaultdict(int)
        for kind, n, num, e in entries:
            if kind == "c":
                c[n] += num << (exp - e)
            elif n:
                s[n] += num << (exp - e)
        self._set(c, s, exp)

    @classmethod
    def _raw(cls, cos: dict[int, int], sin: dict[int, int], exp: int) -> "TrigPoly":
        obj = cls.__new__(cls)
        obj._set(cos, sin, exp)
        return obj

    def _set(self, cos, sin, exp):
        cos = {n: v for n, v in cos.items() if v}
        sin = {n: v for n, v in sin.items() if v and n}
        if exp:
            bits = 0
            for v in cos.values():
                bits |= v
            for v in sin.values():
                bits |= v
            shift = exp if bits == 0 else min(_twos(bits), exp)
            if shift:
                cos = {n: v >> shift for n, v in cos.items()}
                sin = {n: v >> shift for n, v in sin.items()}
                exp -= shift
        self._cos = cos
        self._sin = sin
        self._exp = exp
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "TrigPoly":
        return cls._raw({}, {}, 0)

    @classmethod
    def constant(cls, value=1) -> "TrigPoly":
        return cls(cos={0: value})

    @classmethod
    def cos_term(cls, n: int, coeff=1) -> "TrigPoly":
        return cls(cos={n: coeff})

    @classmethod
    def sin_term(cls, n: int, coeff=1) -> "TrigPoly":
        return cls(sin={n: coeff})

    # -- inspection --------------------------------------------------------

    @property
    def scale_exponent(self) -> int:
        """Shared denominator exponent: coefficients are ``k / 2**scale_exponent``."""
        return self._exp

    def cos_coeff(self, n: int) -> Fraction:
        return Fraction(self._cos.get(n, 0), 1 << self._exp)

    def sin_coeff(self, n: int) -> Fraction:
        return Fraction(self._sin.get(n, 0), 1 << self._exp)

    def cos_terms(self) -> dict[int, Fraction]:
        return {n: self.cos_coeff(n) for n in sorted(self._cos)}

    def sin_terms(self) -> dict[int, Fraction]:
        return {n: self.sin_coeff(n) for n in sorted(self._sin)}

    def dyadic_cos(self) -> dict[int, Dyadic]:
        return {n: Dyadic(self._cos[n], self._exp) for n in sorted(self._cos)}

    def dyadic_sin(self) -> dict[int, Dyadic]:
        return {n: Dyadic(self._sin[n], self._exp) for n in sorted(self._sin)}

    def integer_cos(self) -> dict[int, int]:
        """Cosine coefficients as ints; raises ``ValueError`` if any is fractional."""
        if self._exp:
            raise ValueError("polynomial has non-integer coefficients")
        return {n: self._cos[n] for n in sorted(self._cos)}

    def integer_sin(self) -> dict[int, int]:
        if self._exp:
            raise ValueError("polynomial has non-integer coefficients")
        return {n: self._sin[n] for n in sorted(self._sin)}

    @property
    def is_integral(self) -> bool:
        return self._exp == 0

    @property
    def is_zero(self) -> bool:
        return not self._cos and not self._sin

    @property
    def is_cosine_only(self) -> bool:
        return not self._sin

    @property
    def is_sine_only(self) -> bool:
        return not self._cos

    @property
    def max_frequency(self) -> int:
        return max(max(self._cos, default=0), max(self._sin, default=0))

    def __len__(self) -> int:
        return len(self._cos) + len(self._sin)

    # -- arithmetic --------------------------------------------------------

    def _aligned(self, other: "TrigPoly"):
        exp = max(self._exp, other._exp)
        a, b = exp - self._exp, exp - other._exp
        return exp, a, b

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            if isinstance(other, (int, Rational)):
                other = TrigPoly.constant(other)
            else:
                return NotImplemented
        exp, a, b = self._aligned(other)
        cos = {n: v << a for n, v in self._cos.items()}
        sin = {n: v << a for n, v in self._sin.items()}
        for n, v in other._cos.items():
            cos[n] = cos.get(n, 0) + (v << b)
        for n, v in other._sin.items():
            sin[n] = sin.get(n, 0) + (v << b)
        return TrigPoly._raw(cos, sin, exp)

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly._raw({n: -v for n, v in self._cos.items()},
                             {n: -v for n, v in self._sin.items()}, self._exp)

    def __sub__(self, other):
        if isinstance(other, (int, Rational)):
            other = TrigPoly.constant(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return mul(self, other)
        if isinstance(other, (int, Rational)):
            num, exp = _as_scaled(other)
            return TrigPoly._raw({n: v * num for n, v in self._cos.items()},
                                 {n: v * num for n, v in self._sin.items()},
                                 self._exp + exp)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = TrigPoly.constant(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return (self._exp == other._exp and self._cos == other._cos
                and self._sin == other._sin)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._exp, frozenset(self._cos.items()),
                               frozenset(self._sin.items())))
        return self._hash

    def __call__(self, x: float) -> float:
        return evaluate(self, x)

    def __repr__(self):
        return f"TrigPoly({self})"

    def __str__(self):
        parts = []
        for kind, terms in (("cos", self.cos_terms()), ("sin", self.sin_terms())):
            for n, c in terms.items():
                parts.append(_format_term(c, kind, n))
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text


def _format_term(c: Fraction, kind: str, n: int) -> str:
    if kind == "cos" and n == 0:
        return str(c)
    arg = "x" if n == 1 else f"{n}x"
    if c == 1:
        return f"{kind} {arg}"
    if c == -1:
        return f"-{kind} {arg}"
    return f"{c}{kind} {arg}" if c.denominator == 1 else f"({c}){kind} {arg}"


def add(p: TrigPoly, q: TrigPoly) -> TrigPoly:
    """Exact coefficient-wise sum."""
    return p + q


def mul(p: TrigPoly, q: TrigPoly) -> TrigPoly:
    """Exact product by product-to-sum expansion.

    Uses::

        cos a cos b = [cos(a-b) + cos(a+b)] / 2
        sin a sin b = [cos(a-b) - cos(a+b)] / 2
        sin a cos b = [sin(a+b) + sin(a-b)] / 2
    """
    if len(p) > len(q):
        p, q = q, p
    cos: dict[int, int] = defaultdict(int)
    sin: dict[int, int] = defaultdict(int)
    qc, qs = q._cos.items(), q._sin.items()
    for a, ca in p._cos.items():
        for b, cb in qc:
            v = ca * cb
            cos[a + b] += v
            cos[abs(a - b)] += v
        for b, sb in qs:
            # cos a sin b
            v = ca * sb
            sin[a + b] += v
            if b > a:
                sin[b - a] += v
            elif a > b:
                sin[a - b] -= v
    for a, sa in p._sin.items():
        for b, cb in qc:
            v = sa * cb
            sin[a + b] += v
            if a > b:
                sin[a - b] += v
            elif b > a:
                sin[b - a] -= v
        for b, sb in qs:
            v = sa * sb
            cos[abs(a - b)] += v
            cos[a + b] -= v
    return TrigPoly._raw(cos, sin, p._exp + q._exp + 1)


def divide_by_sin(p: TrigPoly, m: int) -> TrigPoly:
    """Exact quotient of a pure sine series by ``sin(m x)``.

    Works from the top frequency down: a top term ``b sin(F x)`` with
    ``F > m`` is removed by the quotient term ``2b cos((F-m) x)``, because
    ``cos(k x) sin(m x) = [sin((m+k) x) + sin((m-k) x)] / 2``. A top term at
    ``F == m`` is removed by the constant ``b``.

    Raises
    ------
    NotDivisible
        If a nonzero remainder below frequency ``m`` is left over.
    """
    if m < 1:
        raise ValueError("divisor frequency must be >= 1")
    if not p.is_sine_only:
        raise ValueError("dividend must contain only sine terms")
    rem = dict(p._sin)
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        b = rem.pop(top)
        if not b:
            continue
        if top < m:
            rem[top] = b
            raise NotDivisible(
                f"remainder {TrigPoly._raw({}, rem, p._exp)} left after "
                f"dividing by sin({m}x)")
        k = top - m
        if k == 0:
            quot[0] = b
            continue
        quot[k] = 2 * b
        if m > k:
            rem[m - k] = rem.get(m - k, 0) - b
        elif k > m:
            rem[k - m] = rem.get(k - m, 0) + b
    return TrigPoly._raw(quot, {}, p._exp)


def _float_terms(p: TrigPoly):
    scale = p._exp
    big = [v for v in p._cos.values() if abs(v) >> scale >= _MANTISSA_LIMIT]
    big += [v for v in p._sin.values() if abs(v) >> scale >= _MANTISSA_LIMIT]
    if big:
        warnings.warn(f"{len(big)} coefficient(s) exceed 2**53; float evaluation "
                      "is inexact", PrecisionLoss, stacklevel=3)
    cos = [(n, math.ldexp(float(v), -scale)) for n, v in sorted(p._cos.items())]
    sin = [(n, math.ldexp(float(v), -scale)) for n, v in sorted(p._sin.items())]
    return cos, sin


def evaluate(p: TrigPoly, x: float) -> float:
    """Floating-point value of ``p`` at ``x``.

    Emits :class:`PrecisionLoss` when a coefficient is too large to be
    represented exactly as a float.
    """
    cos, sin = _float_terms(p)
    return math.fsum([c * math.cos(n * x) for n, c in cos]
                     + [b * math.sin(n * x) for n, b in sin])


def eval_exact_at_zero(p: TrigPoly) -> Fraction:
    """Exact ``p(0)``: the sum of the cosine coefficients."""
    return Fraction(sum(p._cos.values()), 1 << p._exp)


def fractional_sine_sum(s: int, kappa: int, x: float, y: float) -> float:
    """Closed-form right-hand side defining the sine sum up to ``s/kappa``.

    ``sin((s + kappa) x) / sin(kappa x) * sin(s x + y)``. This is a
    definition, not a summation: for non-integer ``s/kappa`` there is no
    literal sum to compare against.
    """
    return math.sin((s + kappa) * x) / math.sin(kappa * x) * math.sin(s * x + y)


def fractional_cosine_sum(s: int, kappa: int, x: float, y: float) -> float:
    """Cosine counterpart of :func:`fractional_sine_sum`."""
    return math.sin((s + kappa) * x) / math.sin(kappa * x) * math.cos(s * x + y)


def verify_harmonic_sum_identity(s: int, kappa: int, y: float,
                                 samples: Sequence[float], *,
                                 atol: float = 1e-12,
                                 singular_tol: float = 1e-9) -> VerificationReport:
    """Compare the literal sums ``sum_{n=0}^{s} sin/cos(2 n kappa x + y)``
    with their closed forms ``sin((s+1) kappa x)/sin(kappa x) * sin/cos(s kappa x + y)``.

    A sample passes when the deviation is below ``atol * (1 + |closed form|)``.
    The report's ``info["max_deviation"]`` holds the largest absolute deviation.
    """
    if not 1 <= kappa <= s:
        raise ValueError("need 1 <= kappa <= s")
    report = VerificationReport("harmonic_sum_identity",
                                {"s": s, "kappa": kappa, "y": y})
    worst = 0.0
    for x in samples:
        den = math.sin(kappa * x)
        if abs(den) < singular_tol:
            raise SingularSample(f"sin({kappa}*{x!r}) = {den:.3g} vanishes")
        ratio = math.sin((s + 1) * kappa * x) / den
        for label, fn in (("sin", math.sin), ("cos", math.cos)):
            literal = math.fsum(fn(2 * n * kappa * x + y) for n in range(s + 1))
            closed = ratio * fn(s * kappa * x + y)
            dev = abs(literal - closed)
            worst = max(worst, dev)
            report.add(f"{label} x={x!r}", closed, literal,
                       dev <= atol * (1.0 + abs(closed)))
    report.info["max_deviation"] = worst
    return report


def to_json(p: TrigPoly) -> dict:
    """``{"cos": [[n, num, exp], ...], "sin": [...]}`` with ascending frequencies."""
    return {
        "cos": [[n, d.numerator, d.exponent] for n, d in p.dyadic_cos().items()],
        "sin": [[n, d.numerator, d.exponent] for n, d in p.dyadic_sin().items()],
    }


def from_json(data: dict | str) -> TrigPoly:
    if isinstance(data, str):
        data = json.loads(data)
    return TrigPoly(
        cos={n: Dyadic(num, exp) for n, num, exp in data.get("cos", [])},
        sin={n: Dyadic(num, exp) for n, num, exp in data.get("sin", [])},
    )


def sum_polys(polys: Iterable[TrigPoly]) -> TrigPoly:
    total = TrigPoly.zero()
    for p in polys:
        total = total + p
    return total


def product(polys: Iterable[TrigPoly]) -> TrigPoly:
    total = TrigPoly.constant(1)
    for p in polys:
        total = mul(total, p)
    return total
