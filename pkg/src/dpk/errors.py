"""Exception hierarchy shared by all dpk modules.

Every domain failure raises a subclass of DpkError so the CLI can map
library errors onto exit code 2 uniformly.
"""


class DpkError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(DpkError):
    """Vector or matrix shape does not match the ambient lattice."""


class UnsupportedDegree(DpkError):
    """Requested operation is not defined for this surface degree."""


class InvalidClass(DpkError):
    """Divisor class fails the defining numerical conditions."""


class InvalidRoot(DpkError):
    """Reflection requested in a vector of self-intersection != -2."""


class InvalidWord(DpkError):
    """Reflection word contains an out-of-range generator index."""


class TooLarge(DpkError):
    """Enumeration refused: the group or search space exceeds the limit."""


class BudgetExceeded(DpkError):
    """A configured resource cap was hit; partial state is discarded."""


class NotHomogeneous(DpkError):
    """Polynomial input is not homogeneous for the stated weights."""


class DegenerateIntersection(DpkError):
    """Intersection scheme has positive dimension."""


class UnexpectedDegree(DpkError):
    """A zero-dimensional scheme has the wrong degree."""


class LineHasRationalPoint(DpkError):
    """The chosen line is defined over a proper subfield."""


class ConstructionFailed(DpkError):
    """Randomized construction exhausted its attempt budget."""


class IncompleteData(DpkError):
    """Splitting data missing at a place carrying a nonzero invariant."""


class RankError(DpkError):
    """Central simple algebra has the wrong rank for this predicate."""


class InconsistentEvidence(DpkError):
    """Evidence record violates an internal consistency invariant."""


class InternalError(DpkError):
    """Invariant that should be unreachable was violated."""
