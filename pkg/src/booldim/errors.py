"""Exception types raised across the package."""


class OrderError(ValueError):
    """Base class for malformed order-theoretic input."""


class CycleError(OrderError):
    """The generating relation forces x < x for some element."""


class OverlapError(OrderError):
    """Linear orders that must be disjoint share an element."""


class BadIntersectionError(OrderError):
    """Two orders glued at a cut vertex intersect in more than that vertex."""


class SupportError(OrderError):
    """An element is missing from the support of a linear order."""


class DisconnectedError(OrderError):
    """A connected poset was required."""


class SingleComponentError(OrderError):
    """At least two components were required."""


class SameZError(OrderError):
    """Both elements of a pair lie in the same Z-part."""


class NotIncomparableError(OrderError):
    """A pair expected to be incomparable is comparable (or degenerate)."""


class NotReversibleError(OrderError):
    """A set of incomparable pairs contains an alternating cycle."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotForestError(OrderError):
    """The cover graph contains a cycle."""


class BudgetError(RuntimeError):
    """An exhaustive search was asked to run beyond its size guard."""


class ParseError(ValueError):
    """A poset or realizer file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
