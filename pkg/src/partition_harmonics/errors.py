"""Exception and warning types shared across the package."""


class PartitionHarmonicsError(Exception):
    """Base class for all errors raised by this package."""


class NotDivisible(PartitionHarmonicsError, ArithmeticError):
    """A sine series is not an exact trigonometric multiple of ``sin(m x)``."""


class SingularSample(PartitionHarmonicsError, ValueError):
    """A sample point hits a zero of a denominator ``sin(k x)``."""


class OrderTooSmall(PartitionHarmonicsError, ValueError):
    pass


class TooLarge(PartitionHarmonicsError, ValueError):
    pass


class InsufficientNodes(PartitionHarmonicsError, ValueError):
    """The quadrature rule cannot resolve the integrand's top frequency."""


class CancellationRisk(PartitionHarmonicsError):
    """Kernel amplitude is too large for the float quadrature to be certified.

    The exact coefficient path (``exact_projection``) has no such limit.
    """


class OddOffset(PartitionHarmonicsError, ValueError):
    pass


class EvaluatorUnavailable(PartitionHarmonicsError, ValueError):
    pass


class KernelInvariantError(PartitionHarmonicsError, AssertionError):
    pass


class PrecisionLoss(UserWarning):
    """Coefficients exceed the float mantissa; float evaluation is inexact."""
