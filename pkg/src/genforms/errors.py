"""Exception hierarchy shared by the algebra kernel and the front end."""

from __future__ import annotations


class GenFormsError(Exception):
    """Base class for every error raised by this package."""


class ChartMismatchError(GenFormsError, ValueError):
    """Operands live on different charts (dimension, names or k differ)."""


class DegreeError(GenFormsError, ValueError):
    """An operand has a degree the operation does not accept."""


class ConsistencyError(GenFormsError, AssertionError):
    """Two routes to the same quantity disagreed, or a defining equation has a nonzero residual."""


class ParseError(GenFormsError):
    """Syntax or type error in DSL source.

    ``line`` and ``column`` are 1-based. ``expected`` is the set of token
    descriptions that would have been accepted at that position (empty for
    type errors).
    """

    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        text = f"{line}:{column}: {message}"
        if expected:
            text += f" (expected one of: {', '.join(sorted(expected))})"
        super().__init__(text)


class EvalError(GenFormsError):
    """Evaluation failed for a well-formed expression; ``span`` locates the offending subexpression."""

    def __init__(self, message: str, span: tuple[int, int] | None = None, source: str | None = None):
        self.message = message
        self.span = span
        if span is not None and source is not None:
            snippet = source[span[0]:span[1]]
            message = f"{message} in `{snippet}` at offset {span[0]}"
        super().__init__(message)
