"""Exception hierarchy shared across the package."""


class IwalabError(Exception):
    """Base class for every error raised by this package."""


class MixedContextError(IwalabError):
    """Operands live in different p-adic contexts."""


class NotAUnitError(IwalabError):
    """Inversion of an element of positive valuation."""


class NotSquareError(IwalabError):
    """A square matrix was required."""


class ZeroToPrecisionError(IwalabError):
    """Every coefficient vanishes modulo p^N; the value is indistinguishable from 0."""


class DivisorDivisibleByPError(IwalabError):
    """Weierstrass division by a series all of whose coefficients are divisible by p."""


class PrecisionExhaustedError(IwalabError):
    """The truncation order or p-adic precision is too small to certify the result."""


class TailUncertifiedError(IwalabError):
    """Discarded series tail could disturb digits below p^N at the evaluation point."""


class ZeroDeterminantError(IwalabError):
    """Presentation matrix with vanishing determinant (module is not torsion)."""


class ValidationError(IwalabError):
    """A structural invariant of the input data is violated."""

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class ParseError(IwalabError):
    """Malformed problem file."""


class BudgetExhaustedError(IwalabError):
    """No twisting character certified within the candidate budget."""


class SizeCapExceededError(IwalabError):
    """Group-ring computation would exceed the configured matrix-size cap."""
