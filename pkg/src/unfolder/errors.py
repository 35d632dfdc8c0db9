"""Exception hierarchy shared by all unfolder modules."""


class UnfolderError(Exception):
    """Base class for all errors raised by this package."""


class NonpositiveBase(UnfolderError):
    """Raised when a real-power jet is requested at a nonpositive base value.

    Signals that a germ was evaluated outside its validity domain.
    """


class OrderExceeded(UnfolderError):
    """Raised when a partial derivative beyond the truncation order is requested."""


class DomainError(UnfolderError):
    """Germ evaluated outside its declared validity domain."""


class NotOnSolutionSet(UnfolderError):
    """Classification requested at a point that is not a stationary state."""


class NoConvergence(UnfolderError):
    """A Newton iteration failed to converge within its iteration budget."""


class SingularJacobian(UnfolderError):
    """The Newton matrix is numerically singular."""


class WrongRegime(UnfolderError):
    """A solver was invoked for a parameter regime it does not handle."""


class NotUnfoldable(UnfolderError):
    """No unfolding template exists for the given singularity class."""


class StartNotOnBranch(UnfolderError):
    """Continuation start point does not satisfy the branch equation."""


class StepUnderflow(UnfolderError):
    """Corrector failed at the minimum arclength step.

    Carries the last successfully computed point in ``last_point``.
    """

    def __init__(self, message, last_point=None):
        super().__init__(message)
        self.last_point = last_point


class NotACrossing(UnfolderError):
    """Branch switching requested at a point that is not a simple crossing."""


class DegenerateQuadratic(UnfolderError):
    """The crossing tangent quadratic is degenerate (all second derivatives small)."""
