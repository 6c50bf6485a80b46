"""Exception types shared across the package."""

from __future__ import annotations


class ClstsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ClstsError, ValueError):
    """A line of an input file could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FormatError(ClstsError, ValueError):
    """An input file is structurally inconsistent (empty, mixed dims, bad header)."""


class DomainError(ClstsError, ValueError):
    """Arguments are outside the domain of the operation."""


class EmptyInputError(DomainError):
    """Nothing left to score after out-of-vocabulary filtering.

    Carries OOV diagnostics so callers can tell unscoreable input apart
    from genuinely dissimilar input.
    """

    def __init__(self, message: str, oov_source: int = 0, oov_target: int = 0) -> None:
        self.oov_source = oov_source
        self.oov_target = oov_target
        super().__init__(f"{message} (oov_source={oov_source}, oov_target={oov_target})")


class OptimizationDivergedError(ClstsError, ArithmeticError):
    """Iterative training produced a non-finite loss."""
