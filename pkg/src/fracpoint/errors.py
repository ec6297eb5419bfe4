"""Exception hierarchy shared by all fracpoint modules."""


class FracpointError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(FracpointError, ValueError):
    """An argument violates a documented precondition."""


class DomainError(FracpointError, ValueError):
    """Parameters lie outside the domain where a formula is defined."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""


class ContourError(FracpointError):
    """No admissible Mellin-Barnes contour exists for the requested kernel."""


class NonConvergence(FracpointError, RuntimeError):
    """The error estimate could not be brought below the tolerance
    within the evaluation budget."""


class RankError(FracpointError, RuntimeError):
    """A null space expected to be one-dimensional is not."""


class SolverError(FracpointError, RuntimeError):
    """Root refinement stalled or produced an inconsistent root."""
