"""Exception hierarchy shared by every module of the toolkit."""


class UnivalentError(Exception):
    """Base class for all toolkit errors."""


class ZeroValue(UnivalentError, ZeroDivisionError):
    """A logarithm or power was requested of a jet whose value vanishes."""


class DomainError(UnivalentError, ValueError):
    """A function was evaluated at (or too close to) a singularity."""


class DivisorConstantZero(UnivalentError, ZeroDivisionError):
    pass


class NonzeroConstantTerm(UnivalentError, ValueError):
    pass


class NotNormalized(UnivalentError, ValueError):
    """Series or function violates the required normalization (c0 = 1, or f(0)=0, f'(0)=1)."""


class FormulaSyntaxError(UnivalentError, SyntaxError):
    """Malformed formula; ``offset`` is the byte offset of the offending token."""

    def __init__(self, message, offset, text=""):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset
        self.text = text


class NonConstantExponent(FormulaSyntaxError):
    pass


class UnknownCatalogName(UnivalentError, KeyError):
    pass


class BranchTrackingFailure(UnivalentError, RuntimeError):
    pass


class BadGamma(UnivalentError, ValueError):
    pass


class CriticalPoint(UnivalentError, ValueError):
    """f'(z) vanishes (numerically) at the query point."""


class AllPointsSingular(UnivalentError, RuntimeError):
    pass


class BracketFailure(UnivalentError, RuntimeError):
    pass


class PoleProximity(UnivalentError, ValueError):
    pass


class DivergentP(UnivalentError, ZeroDivisionError):
    pass


class PoleAtMinusOne(UnivalentError, ZeroDivisionError):
    pass


class DegenerateDenominator(UnivalentError, ZeroDivisionError):
    pass


class NotSpirallike(UnivalentError, ValueError):
    pass


class NewtonDivergence(UnivalentError, RuntimeError):
    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


class ExtensionAborted(UnivalentError, RuntimeError):
    """Too many grid cells failed; ``grid`` carries the partial result."""

    def __init__(self, message, grid=None):
        super().__init__(message)
        self.grid = grid


class NotConvexWarning(UserWarning):
    pass
