"""Exception hierarchy shared by all modules."""


class MatroidHError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(MatroidHError, ValueError):
    pass


class EmptyGeneratorSet(InvalidInput):
    pass


class VertexOutOfRange(InvalidInput):
    pass


class UncoveredVertex(InvalidInput):
    pass


class CapacityExceeded(InvalidInput):
    """Vertex count beyond the configured bitset width."""


class FaceNotInComplex(InvalidInput):
    pass


class DegenerateDual(MatroidHError):
    """The complex has a facet equal to the whole vertex set."""


class NotAMatroid(MatroidHError):
    pass


class InvalidSpec(InvalidInput):
    pass


class RestrictionCheckBudgetExceeded(MatroidHError):
    pass


class NegativeHEntry(MatroidHError):
    """An h-vector entry came out negative (input is not Cohen-Macaulay)."""


class WrongShape(InvalidInput):
    pass


class BudgetExceeded(MatroidHError):
    pass


class BoundExceeded(MatroidHError):
    pass
