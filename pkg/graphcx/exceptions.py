"""Error hierarchy shared by every graphcx app.

Management commands map these onto process exit codes (see ``EXIT_CODES``).
"""


class GraphcxError(Exception):
    """Base class of all engine errors."""

    exit_code = 2


class UsageError(GraphcxError):
    """Bad arguments, mismatched dimensions or unbounded requests."""

    exit_code = 2


class InfiniteBucket(UsageError):
    """A requested bucket of a graph complex is not finite-dimensional."""


class InvalidInput(GraphcxError):
    """Structurally invalid graph, tree or parity data."""

    exit_code = 2


class ParseError(InvalidInput):
    def __init__(self, message, line=0, column=0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class WindowInsufficient(GraphcxError):
    """The truncation window is too small to certify the requested statement."""

    exit_code = 3


class CheckFailed(GraphcxError):
    """A mathematical check produced a nonzero residual."""

    exit_code = 1

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


EXIT_CODES = {
    "ok": 0,
    "check_failed": CheckFailed.exit_code,
    "usage": UsageError.exit_code,
    "window": WindowInsufficient.exit_code,
}
