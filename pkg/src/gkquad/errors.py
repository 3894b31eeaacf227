"""Exception types shared across the package.

Domain / size / degree violations subclass ValueError so that generic
callers can treat them as bad input; numerical failures subclass
RuntimeError because the inputs were legal but the computation could not
be trusted.
"""

__all__ = [
    "GkquadError",
    "DomainError",
    "SizeError",
    "DegreeOverflowError",
    "NumericalFailureError",
    "IllConditionedError",
    "EvaluationError",
]


class GkquadError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GkquadError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SizeError(GkquadError, ValueError):
    """A size parameter violates a guard (rule size, grid size, dimension)."""


class DegreeOverflowError(GkquadError, ValueError):
    """Polynomial degree above the evaluation guard."""


class NumericalFailureError(GkquadError, RuntimeError):
    """A numerical procedure failed to produce a trustworthy result."""


class IllConditionedError(NumericalFailureError):
    """A linear solve was rejected as unreliable.

    Carries the condition estimate of the offending matrix so callers can
    report it.
    """

    def __init__(self, message: str, condition_estimate: float):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class EvaluationError(GkquadError, RuntimeError):
    """An integrand returned a non-finite value.

    ``multi_index`` identifies the offending grid point in tensor rules.
    """

    def __init__(self, message: str, multi_index: tuple[int, ...] | None = None):
        super().__init__(message)
        self.multi_index = multi_index
