"""Exception types shared across the package."""


class KRegularError(Exception):
    """Base class for all library errors."""


class BadPrimeError(KRegularError):
    """A denominator vanishes modulo the chosen prime."""


class ArityError(KRegularError, ValueError):
    """Number of variables or point length does not match."""


class ParseError(KRegularError, ValueError):
    """Polynomial text could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class DomainError(KRegularError, ValueError):
    """Invalid verification domain (e.g. non-positive radius)."""


class ConversionError(KRegularError):
    """A regularity-kind conversion is unsupported or unsound."""


class CapExceededError(KRegularError):
    """Problem size exceeds a configured computational cap."""


class BudgetExhaustedError(KRegularError):
    """No construction attempt passed verification within the budget."""

    def __init__(self, message: str, best_report=None):
        super().__init__(message)
        self.best_report = best_report


class UnknownExampleError(KRegularError, KeyError):
    """Requested fixture name is not known."""


class ZeroPolynomialError(KRegularError, ValueError):
    """Operation is undefined for the zero polynomial."""


class InhomogeneousHFError(KRegularError):
    """A full Hilbert function was requested for an inhomogeneous dual generator."""


class UnsupportedSocleError(KRegularError, ValueError):
    """Closed-form compressed dimensions exist only for socle degrees 2 and 3."""


class ConstraintError(KRegularError, ValueError):
    """Parameters violate a stated admissibility constraint."""


class NotPrimeError(KRegularError, ValueError):
    """Argument expected to be prime is not."""


class InfeasibleWarning(UserWarning):
    """Requested target dimension lies below a known lower bound."""
