"""Exception hierarchy.

Every domain failure derives from :class:`CubicalError`; document problems
derive from :class:`ParseError`. The CLI maps the former to exit code 1 and
the latter to exit code 2.
"""


class CubicalError(Exception):
    """Base class for domain errors. ``witness`` carries the offending data."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SameHyperplane(CubicalError):
    pass


class LengthMismatch(CubicalError):
    pass


class NotAVertex(CubicalError):
    pass


class InvalidComplex(CubicalError):
    pass


class InvalidWall(CubicalError):
    pass


class InconsistentPocset(CubicalError):
    pass


class EmptyInput(CubicalError):
    pass


class EmptyConvexSet(CubicalError):
    pass


class NotDisjoint(CubicalError):
    pass


class ComplementaryPair(CubicalError):
    pass


class NotDistinct(CubicalError):
    pass


class PreconditionFailed(CubicalError):
    pass


class NotAPath(CubicalError):
    pass


class OrderViolated(CubicalError):
    def __init__(self, message, index, witness=None):
        super().__init__(message, witness)
        self.index = index


class NotDistancePreserving(CubicalError):
    pass


class LeafNotCovered(CubicalError):
    pass


class NotOrderPreserving(CubicalError):
    pass


class VertexSetNotPreserved(CubicalError):
    pass


class ParseError(Exception):
    """Malformed document. ``location`` names the line or field at fault."""

    def __init__(self, message, location=None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class InvariantViolation(ParseError):
    """Well-formed document that breaks a named format invariant."""

    def __init__(self, invariant, message, location=None):
        super().__init__(f"{invariant}: {message}", location)
        self.invariant = invariant
