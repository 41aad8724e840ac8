"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class FibrousError(Exception):
    """Base class for all errors raised by this package."""


class TermError(FibrousError, ValueError):
    """A space term was constructed with invalid fields."""


class ResolutionError(FibrousError):
    """A catalog reference could not be resolved.

    ``span`` is set when the reference came from parsed source text.
    """

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def with_span(self, span: tuple[int, int]) -> "ResolutionError":
        err = type(self)(self.message, span)
        err.__cause__ = self
        return err


class UnknownNameError(ResolutionError):
    pass


class ArityError(ResolutionError):
    pass


class DomainError(ResolutionError):
    pass


class ExpansionDepthError(ResolutionError):
    """Catalog expansion nested deeper than the configured bound."""


class ParseError(FibrousError):
    """Lexical or syntactic error in DSL source, with a character span."""

    def __init__(self, message: str, span: tuple[int, int], text: str = ""):
        super().__init__(message)
        self.message = message
        self.span = span
        self.text = text

    def __str__(self) -> str:
        start, end = self.span
        return f"{self.message} at {start}:{end}"

    def pretty(self) -> str:
        """Message followed by the source line and a caret marker."""
        start, end = self.span
        marker = " " * start + "^" * max(1, end - start)
        return f"error: {self}\n  {self.text}\n  {marker}"


class ComplexError(FibrousError, ValueError):
    """Malformed simplicial complex or CW skeleton."""


class SchemaError(FibrousError, ValueError):
    """Input JSON does not follow the expected file schema."""
