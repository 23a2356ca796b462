"""Exception types shared across the solver and reduction modules."""


class UniqCoverError(Exception):
    """Base class for domain errors raised by this package."""


class DenominatorError(UniqCoverError):
    """A coordinate is not representable over the instance denominator."""


class InfeasibleError(UniqCoverError):
    """No selection of objects covers every point."""


class LimitExceededError(UniqCoverError):
    """An exhaustive search was asked to exceed its configured size limit."""


class FrameTooSmallError(UniqCoverError):
    """The point set does not fit inside the requested k-by-k frame."""


class StateBudgetExceededError(UniqCoverError):
    """The sweep DP hit its state cap before finishing."""

    def __init__(self, explored: int, cap: int):
        super().__init__(f"state budget exceeded: {explored} states (cap {cap})")
        self.explored = explored
        self.cap = cap


class ThresholdNotMetError(UniqCoverError):
    """A solution passed to the decoder misses the unique-coverage threshold."""


class FormulaSyntaxError(UniqCoverError):
    """The formula file does not match the declared format."""


class VariableDegreeError(UniqCoverError):
    """A variable occurs in more clause slots than the gadgets support."""


class LayoutCrossingError(UniqCoverError):
    """The clause layout annotations cannot be drawn without edge crossings."""


class RoutingFailureError(UniqCoverError):
    """The gadget layout engine could not realize the construction.

    `retryable` marks failures that a coarser layout scale might fix;
    scale-invariant failures (relative gadget geometry) are final.
    """

    def __init__(self, message: str, retryable: bool = True):
        super().__init__(message)
        self.retryable = retryable
