"""Exception hierarchy shared by every module of the package."""


class FacetResError(Exception):
    """Base class for all errors raised by facetres."""


class EmptyInput(FacetResError, ValueError):
    pass


class NotAntichain(FacetResError, ValueError):
    pass


class CapacityExceeded(FacetResError, ValueError):
    pass


class NotAFacet(FacetResError, ValueError):
    pass


class NotAFace(FacetResError, ValueError):
    pass


class PreconditionViolated(FacetResError, ValueError):
    pass


class TooLarge(FacetResError, ValueError):
    pass


class UnitColon(FacetResError, ValueError):
    """The colon ideal is the whole ring."""


class MixedDegrees(FacetResError, ValueError):
    pass


class NotACycle(FacetResError, ValueError):
    pass


class NotAForest(PreconditionViolated):
    pass


class NotATree(PreconditionViolated):
    pass


class NotLinearTree(PreconditionViolated):
    pass


class NotAdjacentFace(PreconditionViolated):
    pass


class VertexClash(FacetResError, ValueError):
    pass


class ParseError(FacetResError, ValueError):
    pass


class GenerationExhausted(FacetResError, RuntimeError):
    pass
