"""Exception hierarchy shared by every module of the package."""


class SymplexError(Exception):
    """Base class for all domain errors raised by symplex."""


# ring layer
class MixedRing(SymplexError, TypeError):
    pass


class DivisionByZero(SymplexError, ZeroDivisionError):
    pass


class NotEuclidean(SymplexError):
    pass


class IncompleteAssignment(SymplexError, KeyError):
    pass


class NotInMonoid(SymplexError, ValueError):
    pass


class MembershipBoundExceeded(SymplexError):
    """Bounded membership search ran out of budget without a verdict."""


class NotUnit(SymplexError, ValueError):
    pass


# geometry layer
class RankTooLarge(SymplexError):
    pass


class NotSubcone(SymplexError, ValueError):
    pass


class PyramidSplitError(SymplexError):
    pass


class TooSmall(PyramidSplitError):
    pass


class Simplicial(PyramidSplitError):
    """Every ray is the apex of a pyramid over the others.

    ``split`` carries the canonical (delta, gamma) pair over the first ray
    in colex order, so callers that only need *a* split can still use it.
    """

    def __init__(self, message, split=None):
        super().__init__(message)
        self.split = split


# matrix layer
class BadIndices(SymplexError, ValueError):
    pass


class SignConventionFault(SymplexError):
    pass


class NotMonomial(SymplexError, ValueError):
    pass


class DimensionMismatch(SymplexError, ValueError):
    pass


class NotSymplectic(SymplexError, ValueError):
    pass


class NotAField(SymplexError):
    pass


class DecompositionFailed(SymplexError):
    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot


class UnknownLemmaId(SymplexError, KeyError):
    pass
