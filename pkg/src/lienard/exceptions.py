"""Exception types raised across the package."""


class LienardError(Exception):
    """Base class for all package-specific errors."""


class NonzeroConstantTerm(LienardError):
    """Division of a polynomial by x requires a vanishing constant term."""


class InvalidEquation(LienardError):
    """The equation violates a structural precondition (e.g. F(0) != 0)."""


class NotCommutativelyFactorable(LienardError):
    """No commutative factorization exists; carries the offending residual.

    The ``residual`` attribute holds the polynomial p(x)^2 - F(x)/x that
    failed the constancy test, so callers can report how far the equation
    is from factorable.
    """

    def __init__(self, residual):
        self.residual = residual
        super().__init__(
            f"p^2 - F/x is not constant; residual = {residual}"
        )


class NotMonomial(LienardError):
    """The symmetric part is not of monomial-plus-constant form."""


class PoleAt(LienardError):
    """Evaluation requested within the guard band of a pole."""

    def __init__(self, t, message=None):
        self.t = t
        super().__init__(message or f"evaluation too close to a pole near t = {t!r}")


class EvenRootOfNegative(LienardError):
    """Even-order root of a negative bracket; no real value exists here."""

    def __init__(self, t):
        self.t = t
        super().__init__(f"negative radicand under an even root at t = {t!r}")


class QuadratureFailure(LienardError):
    """Adaptive quadrature could not reach the requested accuracy."""


class DomainViolation(LienardError):
    """Constructor arguments fall outside the validity domain."""


class BlowUp(LienardError):
    """Numerical trajectory exceeded the blow-up bound (pole reached)."""

    def __init__(self, t, bound):
        self.t = t
        self.bound = bound
        super().__init__(f"|x| exceeded {bound:g} at t = {t:.6g}")


class StepUnderflow(LienardError):
    """Adaptive integrator step size shrank below machine resolution."""


class EmptyGrid(LienardError):
    """Every grid point fell inside a singular window."""
