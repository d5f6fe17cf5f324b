"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`DtnError`,
so callers (and the command line front end) can catch one type.  Most also
derive from :class:`ValueError` because they signal bad input.
"""


class DtnError(Exception):
    """Base class for all library errors."""


class GraphError(DtnError, ValueError):
    """Invalid metric graph.  ``element`` names the offending label or edge."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class Disconnected(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class ParallelEdge(GraphError):
    pass


class NonpositiveLength(GraphError):
    pass


class DuplicateLabel(GraphError):
    pass


class UnknownLabel(GraphError):
    pass


class DegenerateGraph(GraphError):
    """Fewer than two vertices or no edges."""


class NotATree(GraphError):
    pass


class TooFewBoundaryVertices(DtnError, ValueError):
    pass


class DimensionMismatch(DtnError, ValueError):
    pass


class SingularInterior(DtnError, ArithmeticError):
    """The interior block of the Laplacian could not be factorized."""


class ReconstructionError(DtnError, ValueError):
    """Raised when a matrix is not consistent with a metric tree."""


class IndexOutOfRange(ReconstructionError, IndexError):
    pass


class PinnedSingular(ReconstructionError):
    pass


class AsymmetryTooLarge(ReconstructionError):
    pass


class InvalidDistanceMatrix(ReconstructionError):
    pass


class NoSiblingPair(ReconstructionError):
    pass


class NonpositiveSolution(ReconstructionError):
    pass


class DegenerateAttach(ReconstructionError):
    pass


class NotTreeMetric(ReconstructionError):
    pass


class ParseError(DtnError, ValueError):
    """Malformed input file; ``line`` is 1-based (0 when not line specific)."""

    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}" if line else reason)
        self.line = line
        self.reason = reason


class NonSquare(ParseError):
    pass
