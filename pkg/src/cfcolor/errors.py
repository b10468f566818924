"""Exception hierarchy shared across the package."""


class CfcolorError(Exception):
    """Base class for all errors raised by cfcolor."""


class EdgeAbsent(CfcolorError):
    pass


class InvalidPartition(CfcolorError):
    pass


class PartialColoring(CfcolorError):
    pass


class PlanViolation(CfcolorError):
    def __init__(self, index, reason):
        super().__init__(f"plan violation at position {index}: {reason}")
        self.index = index
        self.reason = reason


class ListTooShort(CfcolorError):
    def __init__(self, vertex, message=""):
        super().__init__(message or f"list of vertex {vertex} is too short")
        self.vertex = vertex


class DegeneracyViolated(CfcolorError):
    """Raised when the minor-degenerate recursion meets a graph whose minimum
    degree exceeds the declared bound.  ``certificate`` is the offending graph
    encountered during the recursion (a minor of the input)."""

    def __init__(self, certificate):
        super().__init__(
            "encountered a graph with minimum degree above the degeneracy bound"
        )
        self.certificate = certificate


class TooManyHighDegreeVertices(CfcolorError):
    pass


class InnerFailure(CfcolorError):
    pass


class SideFailure(CfcolorError):
    def __init__(self, side, cause):
        super().__init__(f"{side} side of a clique-sum failed: {cause}")
        self.side = side
        self.cause = cause


class ListMismatch(CfcolorError):
    pass


class NotAClique(CfcolorError):
    pass


class NodeAbsent(CfcolorError):
    pass


class InstanceTooLarge(CfcolorError):
    pass


class InvalidDecomposition(CfcolorError):
    pass


class InvalidLayering(CfcolorError):
    pass


class HypothesisViolated(CfcolorError):
    pass


class ExtensionImpossible(CfcolorError):
    """Exhaustive search proved a single extension request infeasible."""

    def __init__(self, request, message="no coloring satisfies the request"):
        super().__init__(message)
        self.request = request


class UnknownSuite(CfcolorError):
    pass


class ParseError(CfcolorError):
    pass
