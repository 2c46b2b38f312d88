"""Exception hierarchy shared across the package."""


class NevanlinnaError(Exception):
    """Base class for every error raised by this package."""


class ZeroSeriesError(NevanlinnaError, ValueError):
    """A norm, polygon or zero count was requested for the zero series."""


class DomainError(NevanlinnaError, ValueError):
    """Evaluation outside the domain (or certified window) of a function."""


class ImageContainedError(NevanlinnaError, ValueError):
    """The pullback of a hypersurface is identically zero.

    This is the excluded case where the image of the map lies inside the
    hypersurface, so the proximity and counting functions are undefined.
    """

    def __init__(self, message: str, hypersurface: str | None = None):
        super().__init__(message)
        self.hypersurface = hypersurface


class FMTResidualError(NevanlinnaError, ArithmeticError):
    """``m + N - d*T`` came out non-constant; the identity is exact, so this is a bug."""


class GeometryError(NevanlinnaError, ValueError):
    """A witness point or generated configuration failed a geometric check."""


class ScenarioError(NevanlinnaError, ValueError):
    """Malformed or invalid scenario document.

    Carries the dotted path of the offending field and, when known, the
    1-based line/column where it appears in the source text.
    """

    def __init__(self, message: str, path: str = "", line: int | None = None,
                 column: int | None = None):
        self.message = message
        self.path = path
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        where = self.path or "<document>"
        if self.line is not None:
            where += f" (line {self.line}, column {self.column})"
        return f"{where}: {self.message}"
