"""Exception hierarchy for kzeros."""


class KZerosError(Exception):
    """Base class for all package errors."""


class DomainError(KZerosError, ValueError):
    """Order or argument outside the supported domain."""

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


class NonConvergence(KZerosError, ArithmeticError):
    """A series or quadrature exhausted its budget before converging."""


class BranchCut(KZerosError, ValueError):
    """Argument lies on the branch cut (-inf, 0]."""


class BracketFailure(KZerosError, ArithmeticError):
    """No sign change found while bracketing a root."""


class GuardBandViolation(KZerosError, ValueError):
    """Order too close to a special order 2n + 3/2 for moment quadrature."""


class QuadratureFailure(KZerosError, ArithmeticError):
    """Adaptive quadrature could not meet its error target."""


class ClosedFormMismatch(KZerosError, ArithmeticError):
    """Recurrence and closed form for limit coefficients disagree."""


class FactorizationMismatch(KZerosError, ArithmeticError):
    """A polynomial factorization identity failed."""


class PolishDivergence(KZerosError, ArithmeticError):
    """Newton polishing moved a root too far or failed to converge."""


class TrackingAmbiguity(KZerosError, ArithmeticError):
    """Two zero-track assignments are numerically indistinguishable."""
