"""Error hierarchy for toricres.

Every error keeps its message in ``.message``, renders with a category prefix and
carries the process exit code the command line front end reports for it:

    1  validation errors (bad input, non-ample degrees, invalid flags, ...)
    2  degenerate specializations (the resultant vanishes at the chosen point)
    3  internal failures (broken invariants, timeouts, unexpected exceptions)
"""

from __future__ import annotations

from typing import Optional


class ToricError(Exception):
    """Base class for all toricres errors."""

    exit_code = 1
    prefix = "Error"

    def __init__(self, message: str):
        self.message = message
        super().__init__(str(self))

    def __str__(self) -> str:
        return f"{self.prefix}: {self.message}"

    def __copy__(self) -> "ToricError":
        return type(self)(self.message)


# -- validation family (exit code 1) ----------------------------------------


class ValidationError(ToricError):
    """Input rejected before any computation."""

    prefix = "Validation error"


class ParseError(ValidationError):
    """Malformed instance, specialization or expression text."""

    prefix = "Parse error"

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        super().__init__(message)

    def __str__(self) -> str:
        if self.line is None:
            return f"{self.prefix}: {self.message}"
        return f"{self.prefix} (line {self.line}, column {self.column}): {self.message}"

    def __copy__(self) -> "ParseError":
        return ParseError(self.message, self.line, self.column)


class DimensionError(ValidationError):
    prefix = "Dimension error"


class FanError(ValidationError):
    prefix = "Invalid fan"


class FlagError(ValidationError):
    prefix = "Invalid flag"


class AmplenessError(ValidationError):
    prefix = "Not ample"


class SupportError(ValidationError):
    prefix = "Support violation"


class UnboundedPolytopeError(ValidationError):
    prefix = "Unbounded polytope"


class SpanError(ValidationError):
    prefix = "Degenerate span"


class SymbolicLimitError(ValidationError):
    """Refusal to expand a symbolic object beyond the configured size."""

    prefix = "Symbolic limit"

    def __init__(self, message: str, size: int = 0, limit: int = 0):
        self.size = size
        self.limit = limit
        super().__init__(message)

    def __copy__(self) -> "SymbolicLimitError":
        return SymbolicLimitError(self.message, self.size, self.limit)


class RootError(ValidationError):
    prefix = "Root error"


# -- degenerate family (exit code 2) ----------------------------------------


class DegenerateSpecializationError(ToricError):
    """The specialization is not generic enough for the requested determinant."""

    exit_code = 2
    prefix = "Degenerate specialization"

    def __init__(self, message: str, stage: Optional[int] = None):
        self.stage = stage
        super().__init__(message)

    def __copy__(self) -> "DegenerateSpecializationError":
        return DegenerateSpecializationError(self.message, self.stage)


# -- internal family (exit code 3) ------------------------------------------


class InternalError(ToricError):
    """An invariant that must hold for valid input was violated."""

    exit_code = 3
    prefix = "Internal error"


class VerificationFailedError(InternalError):
    prefix = "Verification failed"


# -- op runtime errors ------------------------------------------------------


class OpError(ToricError):
    """Base class for errors raised by the op runtime itself."""

    exit_code = 3
    prefix = "Op error"


class ExecutionFailedError(OpError):
    prefix = "Op execution failed"


class ContextError(OpError):
    """Missing or mistyped context value, or a schema violation of op input."""

    exit_code = 1
    prefix = "Context error"


class BatchFailedError(OpError):
    prefix = "Batch op failed"


class TimeoutError(OpError):
    """Op exceeded its time budget."""

    def __init__(self, timeout_ms: int):
        self.timeout_ms = timeout_ms
        super().__init__(f"timeout after {timeout_ms}ms")

    def __str__(self) -> str:
        return f"Op timeout after {self.timeout_ms}ms"

    def __copy__(self) -> "TimeoutError":
        return TimeoutError(self.timeout_ms)


def wrap_nested_op_error(op_name: str, error: Exception) -> ToricError:
    """Attach the failing op's name while keeping the error category.

    Domain errors pass through untouched so their exit codes survive.
    """
    if isinstance(error, TimeoutError):
        return ExecutionFailedError(f"Op '{op_name}' timed out after {error.timeout_ms}ms")
    if isinstance(error, ContextError):
        return ContextError(f"Op '{op_name}' context error: {error.message}")
    if isinstance(error, BatchFailedError):
        return BatchFailedError(f"Batch op '{op_name}' failed: {error.message}")
    if isinstance(error, ExecutionFailedError):
        return ExecutionFailedError(f"Op '{op_name}' failed: {error.message}")
    if isinstance(error, ToricError):
        return error
    return ExecutionFailedError(f"Op '{op_name}' failed: {error!r}")
