"""Exception types raised across the package."""


class NormalSurfaceError(Exception):
    """Base class for all errors raised by normsurf."""


class TriangulationError(NormalSurfaceError):
    """An invalid triangulation, boundary pattern or boundary curve.

    ``issues`` holds the individual violations (see
    :class:`normsurf.triangulation.Issue`).
    """

    def __init__(self, message, issues=()):
        super().__init__(message)
        self.issues = list(issues)


class ParseError(NormalSurfaceError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)


class DimensionError(NormalSurfaceError, ValueError):
    """A vector length does not match the system it is checked against."""


class NotASolutionError(NormalSurfaceError):
    """A vector fails the matching equations or a forced zero."""


class IncompatibleError(NormalSurfaceError):
    """Two vectors (or one vector) use different quadrilateral types in a tetrahedron."""

    def __init__(self, message, tet):
        super().__init__(message)
        self.tet = tet


class BudgetExceeded(NormalSurfaceError):
    """An enumeration hit its resource cap; no partial result is returned."""


class DecompositionError(NormalSurfaceError):
    """No decomposition over the basis exists (indicates an enumeration bug)."""


class PreconditionError(NormalSurfaceError):
    """An operation was called on input outside its documented domain."""


class VerificationError(NormalSurfaceError):
    """A verification clause failed; ``verdict`` carries the details."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict
