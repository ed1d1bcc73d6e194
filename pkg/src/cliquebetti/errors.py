"""Exception hierarchy shared by all modules."""


class CliqueBettiError(Exception):
    """Base class for library errors."""


class IndexOutOfRange(CliqueBettiError, IndexError):
    pass


class SelfLoop(CliqueBettiError, ValueError):
    pass


class EmptyParts(CliqueBettiError, ValueError):
    pass


class TooSmall(CliqueBettiError, ValueError):
    pass


class TooLarge(CliqueBettiError, ValueError):
    pass


class SizeMismatch(CliqueBettiError, ValueError):
    pass


class SubsetTooSmall(CliqueBettiError, ValueError):
    pass


class DimOutOfRange(CliqueBettiError, ValueError):
    pass


class InsufficientDim(CliqueBettiError, ValueError):
    """The complex was built with a dimension cap too low for the request."""


class UnknownFace(CliqueBettiError, KeyError):
    pass


class SampleTooLarge(CliqueBettiError, ValueError):
    pass


class InvalidParams(CliqueBettiError, ValueError):
    pass


class InvalidSpec(CliqueBettiError, ValueError):
    pass


class ParseError(CliqueBettiError, ValueError):
    """Malformed edge list, face dump or generator string."""


class MemoryBudgetExceeded(CliqueBettiError, MemoryError):
    """A dense GF(2) matrix would exceed the configured memory budget."""
