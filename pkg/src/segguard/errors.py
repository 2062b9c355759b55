"""Exception hierarchy.

Every error raised by the library derives from :class:`SegGuardError`, which
itself is a ``ValueError`` so callers that only care about "bad input" can
catch that.
"""


class SegGuardError(ValueError):
    """Base class for all library errors."""


class GridNotIncreasing(SegGuardError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"valuation grid not strictly increasing positive at index {index}")


class NegativeMass(SegGuardError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"negative mass at index {index}")


class MassNotOne(SegGuardError):
    def __init__(self, total, index: int | None = None, message: str = ""):
        self.total = total
        self.index = index
        super().__init__(message or f"masses sum to {total}, not 1")


class InvalidDatabase(SegGuardError):
    def __init__(self, index: int | None, message: str):
        self.index = index
        super().__init__(message)


class AlphaOutOfRange(SegGuardError):
    def __init__(self, alpha):
        self.alpha = alpha
        super().__init__(f"alpha={alpha} outside [1/2, 1]")


class EmptySupport(SegGuardError):
    pass


class IndexOutOfRange(SegGuardError):
    def __init__(self, index: int, size: int):
        self.index = index
        super().__init__(f"index {index} outside 0..{size - 1}")


class UniformPriceAtTop(SegGuardError):
    """The uniform monopoly price is the highest valuation carrying mass.

    Consumer surplus under uniform pricing is then zero and every database is
    trivially worst-case optimal; the robust bounds are undefined.
    """


class LabelNotBinding(SegGuardError):
    pass


class TrivialDatabase(SegGuardError):
    pass


class NotWorstCaseOptimal(SegGuardError):
    pass


class LabelNotQualifying(SegGuardError):
    pass


class InconsistentMarginals(SegGuardError):
    def __init__(self, index: int, residual, message: str = ""):
        self.index = index
        self.residual = residual
        super().__init__(message or f"label mixture misses the market at index {index} by {residual}")


class Infeasible(SegGuardError):
    pass


class Unbounded(SegGuardError):
    pass


class EnumerationTooLarge(SegGuardError):
    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(f"{count} price profiles exceed the enumeration limit {limit}")
