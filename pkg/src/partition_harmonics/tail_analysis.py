"""Numerator/denominator factorisation of ``D_s`` and its leading terms.

For ``s >= 3`` the kernel is rewritten as ``a_s(x) / d_s(x)`` where the
denominator is ``±2^w sin^2 x sin 2x ... sin(L x)`` and the numerator a
product of ``sin x``, odd-frequency sines and cosines. The three
highest-frequency terms of ``a_s`` are ``+1, -1, +1``; multiplying the tail
of ``D_s`` (built from partition numbers) by ``d_s`` reproduces them.

Factor lists depend on ``s mod 4``; classes are labelled by their residue
form ``4k-1, 4k, 4k+1, 4k+2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .kernel_series import build_kernel
from .partitions import (
    evaluate_weights,
    partitions_euler,
    printed_row,
    third_term_index,
    third_term_weights,
)
from .report import VerificationReport
from .trig_algebra import TrigPoly, mul, product

__all__ = [
    "NumeratorForm",
    "DenominatorForm",
    "residue_class",
    "numerator_form",
    "denominator_form",
    "build_numerator",
    "build_denominator",
    "leading_terms",
    "tail_poly",
    "verify_decomposition",
    "verify_leading_product",
    "third_term_structure",
    "MAX_ORDER",
]

MAX_ORDER = 20


def residue_class(s: int) -> str:
    if s < 3:
        raise ValueError("the factorisation is defined for s >= 3")
    return {3: "4k-1", 0: "4k", 1: "4k+1", 2: "4k+2"}[s % 4]


def _sign(s: int) -> int:
    exponent = {3: (s + 1) // 4, 0: s // 4, 1: (s - 1) // 4, 2: (s + 2) // 4}[s % 4]
    return -1 if exponent % 2 else 1


def _predicted(s: int) -> tuple[int, int, int]:
    q = 9 * s * s
    if s % 2:
        return (q + 7) // 8, (q - 9) // 8, (q - 8 * s - 1) // 8
    return (q + 2 * s + 8) // 8, (q + 2 * s - 8) // 8, (q - 6 * s - 8) // 8


@dataclass(frozen=True)
class NumeratorForm:
    s: int
    residue_class: str
    sign: int
    power_of_two: int
    factors: tuple[tuple[str, int], ...]
    predicted_leading: tuple[tuple[int, int], ...]

    @property
    def kind(self) -> str:
        """``"cos"`` or ``"sin"``: the basis the expanded numerator lives in."""
        sines = sum(1 for k, _ in self.factors if k == "sin")
        return "cos" if sines % 2 == 0 else "sin"


@dataclass(frozen=True)
class DenominatorForm:
    s: int
    sign: int
    power_of_two: int
    factors: tuple[tuple[str, int], ...]


def numerator_form(s: int) -> NumeratorForm:
    cls = residue_class(s)
    if s % 2:
        sines = [1] + list(range(s + 2, 2 * s, 2))
        cosines = list(range((s + 1) // 2, s + 1))
    else:
        sines = [1] + list(range(s + 1, 2 * s, 2))
        cosines = list(range((s + 2) // 2, s + 1))
    f1, f2, f3 = _predicted(s)
    return NumeratorForm(
        s=s,
        residue_class=cls,
        sign=_sign(s),
        power_of_two=s,
        factors=tuple([("sin", n) for n in sines] + [("cos", n) for n in cosines]),
        predicted_leading=((f1, 1), (f2, -1), (f3, 1)),
    )


def denominator_form(s: int) -> DenominatorForm:
    residue_class(s)
    top = (s - 1) // 2 if s % 2 else s // 2
    return DenominatorForm(
        s=s,
        sign=_sign(s),
        power_of_two=top,
        factors=tuple(("sin", n) for n in [1] + list(range(1, top + 1))),
    )


def _expand(sign: int, power: int, factors) -> TrigPoly:
    polys = [TrigPoly.sin_term(n) if kind == "sin" else TrigPoly.cos_term(n)
             for kind, n in factors]
    return product(polys) * (sign * 2**power)


def build_numerator(s: int) -> TrigPoly:
    """Exact expansion of the numerator ``a_s(x)``."""
    f = numerator_form(s)
    return _expand(f.sign, f.power_of_two, f.factors)


def build_denominator(s: int) -> TrigPoly:
    """Exact expansion of ``±2^w sin^2 x sin 2x ... sin(L x)``."""
    f = denominator_form(s)
    return _expand(f.sign, f.power_of_two, f.factors)


def _coeff(p: TrigPoly, kind: str, n: int) -> Fraction:
    return p.cos_coeff(n) if kind == "cos" else p.sin_coeff(n)


def leading_terms(p: TrigPoly, count: int = 3) -> list[tuple[str, int, Fraction]]:
    """The ``count`` highest-frequency nonzero terms as ``(kind, freq, coeff)``."""
    terms = [("cos", n, c) for n, c in p.cos_terms().items()]
    terms += [("sin", n, c) for n, c in p.sin_terms().items()]
    terms.sort(key=lambda t: t[1], reverse=True)
    return terms[:count]


def tail_poly(s: int) -> TrigPoly:
    """``2 sum_j p_j cos((s^2 - 2j) x)`` with ``p_j`` from the Euler recurrence."""
    table = partitions_euler(s)
    return TrigPoly(cos={s * s - 2 * j: 2 * table[j] for j in range(s + 1)})


def _guard(s: int, limit: int = MAX_ORDER) -> None:
    if not 3 <= s <= limit:
        raise ValueError(f"s must lie in 3..{limit}")


def verify_decomposition(s: int) -> VerificationReport:
    """``D_s * d_s == a_s`` as exact trigonometric polynomials."""
    _guard(s)
    report = VerificationReport("decomposition", {"s": s})
    lhs = mul(build_kernel(s).series, build_denominator(s))
    rhs = build_numerator(s)
    diff = lhs - rhs
    report.add("kernel * denominator == numerator", 0, len(diff), diff.is_zero)
    report.info["terms"] = len(rhs)
    report.info["max_frequency"] = rhs.max_frequency
    for kind, n, c in leading_terms(diff, 3):
        report.add(f"{kind} {n}x", 0, c)
    return report


def third_term_structure(s: int) -> dict[int, int]:
    """Integer weights ``w_j`` with third-term coefficient ``sum_j w_j p_j``.

    Obtained by multiplying each tail term ``2 cos((s^2 - 2j) x)`` by the
    denominator separately and reading off the third predicted frequency.
    """
    _guard(s, 60)
    form = numerator_form(s)
    den = build_denominator(s)
    f3 = form.predicted_leading[2][0]
    weights = {}
    for j in range(s + 1):
        c = _coeff(mul(TrigPoly.cos_term(s * s - 2 * j, 2), den), form.kind, f3)
        if c:
            if c.denominator != 1:
                raise ArithmeticError(f"non-integer weight {c} for p_{j}")
            weights[j] = int(c)
    return dict(sorted(weights.items()))


def verify_leading_product(s: int) -> VerificationReport:
    """Tail times denominator reproduces ``+1, -1, +1`` at the predicted frequencies.

    The comparison window is the top ``s + 1`` same-parity slots
    (``top, top-2, ..., top-2s``): there the product of the tail alone
    already equals the full numerator. Slots strictly between the second
    and third predicted frequencies must vanish.
    """
    _guard(s)
    form = numerator_form(s)
    den = build_denominator(s)
    prod = mul(tail_poly(s), den)
    numerator = build_numerator(s)
    kind = form.kind
    (f1, _), (f2, _), (f3, _) = form.predicted_leading
    top = s * s + den.max_frequency
    report = VerificationReport("leading_product", {"s": s, "class": form.residue_class})
    report.info["kind"] = kind
    report.info["predicted"] = [f1, f2, f3]
    report.add("top frequency", f1, prod.max_frequency)
    expected = {f1: 1, f2: -1, f3: 1}
    for f in range(f2 - 2, f3, -2):
        expected[f] = 0
    for f, want in sorted(expected.items(), reverse=True):
        report.add(f"{kind} {f}x", want, _coeff(prod, kind, f))
    window = range(top, top - 2 * s - 1, -2)
    mismatched = [f for f in window if _coeff(prod, kind, f) != _coeff(numerator, kind, f)]
    report.add("window matches numerator", [], mismatched)
    leading = [(n, c) for k, n, c in leading_terms(numerator, 3)]
    report.add("numerator leading terms", [(f1, 1), (f2, -1), (f3, 1)], leading)

    weights = third_term_structure(s)
    k = third_term_index(s)
    report.info["third_term_weights"] = weights
    report.add("third term value", 1, evaluate_weights(weights))
    report.add("third term weights == Euler difference", third_term_weights(k), weights)
    if s <= 11:
        report.add("third term weights == printed row", printed_row(s), weights)
    return report
