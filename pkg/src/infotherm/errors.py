"""Exception types shared across the toolkit.

``ValidationError`` and its subclasses mean the caller handed us data that
breaks a documented precondition or type invariant.  The remaining classes
flag conditions discovered mid-computation (numerical breakdown, a budget
cap, a physically impossible result).
"""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ToolkitError):
    """Input data violates a documented invariant or precondition."""


class DimensionMismatch(ValidationError):
    """Operands that must share a dimension do not."""


class NotHermitian(ValidationError):
    """A matrix required to be Hermitian is not (within tolerance)."""


class NegativeEigenvalue(ValidationError):
    """A matrix required to be positive semidefinite has a genuinely
    negative eigenvalue (beyond the clipping tolerance)."""


class NotProjective(ValidationError):
    """A measurement required to be projective is not."""


class BlockFormViolation(ValidationError):
    """A state lacks the record/system correlation structure an
    operation relies on."""


class NonPositiveVolume(ValidationError):
    """A gas volume that must be strictly positive is not."""


class NumericalFailure(ToolkitError):
    """An iterative numerical routine failed to converge or produced a
    result that violates its own postcondition."""


class SecondLawViolation(ToolkitError):
    """A thermodynamic cycle came out with positive net extracted work."""


class UnsupportedDimension(ToolkitError):
    """The requested method does not support this dimension or option
    combination."""


class BudgetExceeded(ToolkitError):
    """A computation would exceed the configured size budget."""
