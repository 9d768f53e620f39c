"""Exception hierarchy for the solvers and estimators."""
from typing import Optional


class CCPBError(Exception):
    """Base exception for all toolbox errors."""
    pass


class InvalidParameterError(CCPBError, ValueError):
    """Exception raised when inputs violate an operation's preconditions."""
    pass


class DomainError(CCPBError, ValueError):
    """Exception raised when a function is evaluated outside its domain."""
    pass


class GeometryError(CCPBError, ValueError):
    """Exception raised when a Donnan geometry admits no consistent solution."""
    pass


class ConvergenceError(CCPBError):
    """Exception raised when an iterative scheme stops short of its tolerance."""

    def __init__(self, message: str, residual: Optional[float] = None):
        super().__init__(message)
        self.residual = residual


class BracketingError(ConvergenceError):
    """Exception raised when no sign change is found over the search interval."""
    pass
