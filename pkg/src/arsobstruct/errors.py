"""Exception hierarchy.

Every error raised on malformed input derives from :class:`ArsError`, which the
CLI turns into a one-line message with exit code 1.
"""

import json


class ArsError(Exception):
    """Base class for all library errors."""


class FieldError(ArsError):
    pass


class ParseError(ArsError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


# quiver_core
class QuiverError(ArsError):
    pass


class NotBijective(QuiverError):
    pass


class AxiomViolation(QuiverError):
    def __init__(self, vertex: str, detail: str = ""):
        self.vertex = vertex
        super().__init__(f"translation axiom fails at vertex {vertex!r}" + (f": {detail}" if detail else ""))


class ValuationMismatch(QuiverError):
    def __init__(self, arrow: str):
        self.arrow = arrow
        super().__init__(f"valuation of arrow {arrow!r} differs from that of its polarisation")


class DoubleArrow(QuiverError):
    pass


class OrbitNotClosed(QuiverError):
    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"requested orbit is not closed under tau at vertex {vertex!r}")


class ResultNotTranslationQuiver(QuiverError):
    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"orbit removal breaks the translation axiom at {vertex!r}")


class SizeLimitExceeded(QuiverError):
    pass


class UnknownComponent(QuiverError):
    pass


# path_algebra
class AlgebraError(ArsError):
    pass


class UnknownArrow(ParseError):
    pass


class NonComposablePath(ParseError):
    pass


class MixedEndpointsInRelation(ParseError):
    pass


class RelationTooShort(ParseError):
    pass


class NotAdmissibleWithinCap(AlgebraError):
    def __init__(self, cap: int, detail: str | None = None):
        self.cap = cap
        super().__init__(detail or f"ideal does not contain all paths of some length <= {cap}")


class FieldMismatch(AlgebraError):
    pass


class BasisMismatch(AlgebraError):
    pass


# rep_theory
class RepresentationError(ArsError):
    pass


class UnknownVertex(RepresentationError):
    pass


class AlgebraMismatch(RepresentationError):
    pass


class GorensteinUnverified(RepresentationError):
    pass


class BudgetExceeded(RepresentationError):
    pass


# catalogue / reduction
class OutOfCatalogue(ArsError):
    pass


class EvenDimension(ArsError):
    pass


class ReductionMismatch(ArsError):
    pass


# geometry bridge
class GeometryError(ArsError):
    pass


class NotVanishingAtOrigin(GeometryError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"branch {index} does not vanish at the origin")


class ZeroLinearPart(GeometryError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"branch {index} has zero linear part (lies in the square of the maximal ideal)")


class NotMutuallyPrime(GeometryError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"branches {i} and {j} share a common factor through the origin")


class NotSingular(GeometryError):
    pass


class EmptyConfiguration(GeometryError):
    pass


class DescriptorError(ArsError):
    """Input-validation failure wrapped with the offending descriptor."""

    def __init__(self, descriptor, cause: Exception):
        self.descriptor = descriptor
        self.cause = cause
        super().__init__(f"{json.dumps(descriptor)}: {cause}")
