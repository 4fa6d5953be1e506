"""Exception hierarchy shared across the package."""


class FracstabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FracstabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(FracstabError, ValueError):
    """A request is outside the supported evaluation range."""


class ShapeError(FracstabError, ValueError):
    """Inconsistent grid/series shapes or too few nodes."""


class ExpressionError(FracstabError, ValueError):
    """Base for expression parsing/evaluation failures."""


class ParseError(ExpressionError):
    """Syntax error in an expression, carrying the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class BindError(ExpressionError):
    """An expression references a variable outside the bound dimension."""


class EvalError(ExpressionError):
    """Evaluation produced a fault (division by zero, domain error, non-finite)."""

    def __init__(self, message: str, subexpr: str = ""):
        self.subexpr = subexpr
        if subexpr:
            message = f"{message} in '{subexpr}'"
        super().__init__(message)


class EnvelopeError(FracstabError, ValueError):
    """An envelope fails its declared monotonicity/sign property on the grid."""


class PreconditionError(FracstabError, ValueError):
    """A verifier's hypothesis fails on the supplied data."""


class SingularityError(PreconditionError):
    """A power with exponent < 1 meets data touching zero."""


class DivergenceError(FracstabError, RuntimeError):
    """The solver state left the finite range; carries the last valid step."""

    def __init__(self, message: str, last_step: int):
        super().__init__(message)
        self.last_step = last_step


class ConfigError(FracstabError, ValueError):
    """Run configuration is syntactically or semantically invalid."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownCheckError(FracstabError, ValueError):
    """A check suite name does not resolve to a registered verifier."""
