"""Exception hierarchy shared by every kgdot module."""


class KGDotError(Exception):
    """Base class for all library errors."""


class DomainError(KGDotError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Kummer second parameter is a non-positive integer."""


class NonConvergence(KGDotError, ArithmeticError):
    """A series or iteration hit its cap before meeting tolerance."""


class BranchError(DomainError):
    """Energy lies outside the admissible branch of a scenario."""


class NoRootFound(KGDotError):
    """No sign change could be bracketed."""


class GridError(KGDotError, ValueError):
    """Radial grid violates its invariants."""


class ConvergenceError(NonConvergence):
    """Inverse iteration failed to settle."""


class NodeMismatch(KGDotError):
    """Converged level has the wrong number of interior nodes."""


class IntegrationError(KGDotError):
    """Quadrature grid does not cover the support of the integrand."""
