"""Exception hierarchy shared across the package."""


class SpacingLabError(Exception):
    """Base class for every error raised by the library."""


class DomainError(SpacingLabError, ValueError):
    """An argument lies outside the domain of the operation."""


class SolverError(SpacingLabError, RuntimeError):
    """An iterative solver failed to converge.

    ``diagnostics`` carries whatever the solver knew when it gave up.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class DegenerateSampleError(DomainError):
    """The sample carries no spread (zero variance, constant data, ...)."""


class UnsupportedLawError(SpacingLabError, TypeError):
    """The requested operation is not defined for this spacing law."""


class ParseError(SpacingLabError, ValueError):
    """A data file violates its format; ``line`` is 1-based."""

    def __init__(self, message, path=None, line=None, column=None):
        loc = ""
        if path is not None:
            loc += f"{path}:"
        if line is not None:
            loc += f"{line}:"
            if column is not None:
                loc += f"{column}:"
        super().__init__(f"{loc} {message}" if loc else message)
        self.path = path
        self.line = line
        self.column = column
