"""Exception types shared across the package."""


class NumericError(Exception):
    """Base class for failures of a numerical operation."""


class PoleError(NumericError, ValueError):
    """Argument sits on a pole (e.g. gamma at a non-positive integer)."""


class ParameterError(NumericError, ValueError):
    """Invalid hypergeometric parameters."""


class DivergenceError(NumericError):
    """The requested series does not converge at the given argument."""


class ConvergenceError(NumericError):
    """A convergent computation failed to meet its tolerance (term cap, quadrature)."""


class BracketError(NumericError):
    """Root-finding bracket does not straddle a sign change."""


class AmbiguityError(NumericError):
    """Point too close to a boundary for a membership verdict."""


class DiscrepancyError(NumericError):
    """Two independent tests disagree."""
