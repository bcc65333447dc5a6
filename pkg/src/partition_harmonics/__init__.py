"""Partition numbers from harmonic integrals and exact kernel Fourier series.

The partition number ``p_s`` is the constant Fourier coefficient of a
product of sine ratios. This package builds that kernel's cosine series
exactly, evaluates the integral representations numerically, and checks
the algebraic identities connecting both to Euler's recurrence.

>>> from partition_harmonics import build_kernel, integrate_reduced
>>> build_kernel(3).coefficients
{1: 6, 3: 6, 5: 4, 7: 2, 9: 2}
>>> integrate_reduced(6).rounded
11
"""

__version__ = "0.1.0"

from .errors import (
    CancellationRisk,
    EvaluatorUnavailable,
    InsufficientNodes,
    KernelInvariantError,
    NotDivisible,
    OddOffset,
    OrderTooSmall,
    PartitionHarmonicsError,
    PrecisionLoss,
    SingularSample,
    TooLarge,
)
from .kernel_series import (
    KernelSeries,
    Tail,
    build_kernel,
    coefficient_by_orthogonality,
    extract_tail,
    kernel_at_half_pi,
    kernel_at_zero,
    term_count,
)
from .partitions import (
    PartitionTable,
    partition,
    partitions_enumerate,
    partitions_euler,
    partitions_table,
    third_term_coefficient,
    third_term_weights,
)
from .quadrature import (
    QuadratureResult,
    QuadratureSpec,
    integrate_cos_form,
    integrate_full,
    integrate_general,
    integrate_reduced,
    integrate_sin_form,
    moment,
    vanishing_moment,
)
from .report import Check, VerificationReport
from .tail_analysis import build_denominator, build_numerator, verify_decomposition, verify_leading_product
from .trig_algebra import TrigPoly, divide_by_sin, evaluate, from_json, mul, to_json
from .verify import run_suite

__all__ = [
    "__version__",
    "TrigPoly",
    "mul",
    "divide_by_sin",
    "evaluate",
    "to_json",
    "from_json",
    "PartitionTable",
    "partition",
    "partitions_euler",
    "partitions_enumerate",
    "partitions_table",
    "third_term_weights",
    "third_term_coefficient",
    "KernelSeries",
    "Tail",
    "build_kernel",
    "extract_tail",
    "kernel_at_zero",
    "kernel_at_half_pi",
    "term_count",
    "coefficient_by_orthogonality",
    "QuadratureSpec",
    "QuadratureResult",
    "integrate_reduced",
    "integrate_sin_form",
    "integrate_cos_form",
    "integrate_full",
    "integrate_general",
    "moment",
    "vanishing_moment",
    "build_numerator",
    "build_denominator",
    "verify_decomposition",
    "verify_leading_product",
    "Check",
    "VerificationReport",
    "run_suite",
    "PartitionHarmonicsError",
    "NotDivisible",
    "SingularSample",
    "OrderTooSmall",
    "TooLarge",
    "InsufficientNodes",
    "CancellationRisk",
    "OddOffset",
    "EvaluatorUnavailable",
    "KernelInvariantError",
    "PrecisionLoss",
]
