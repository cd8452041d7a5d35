"""Exception hierarchy shared by every layer of the package."""


class SkolemError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(SkolemError, ValueError):
    """Operands or points disagree on dimension, or an index is out of range."""


class DomainError(SkolemError, ValueError):
    """A ground value lies outside the positive integers."""


class InvariantError(SkolemError, ValueError):
    """A skolemian representation violates the zero-exclusion rules."""


class ResourceLimitError(SkolemError):
    """A configured size cap was exceeded.

    ``context`` optionally names the input (e.g. the subformula being
    compiled) that was being processed when the cap tripped.
    """

    def __init__(self, message: str, context: str | None = None):
        self.message = message
        self.context = context
        super().__init__(message if context is None else f"{message} (while compiling: {context})")

    def with_context(self, context: str) -> "ResourceLimitError":
        if self.context is not None:
            return self
        return ResourceLimitError(self.message, context)


class ParseError(SkolemError, ValueError):
    """Syntax error with a 1-based source position."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}")
