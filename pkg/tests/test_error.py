"""Tests for errors.py — messages, exit codes and nested op error wrapping."""

import copy

import pytest

from toricres.errors import (
    AmplenessError,
    BatchFailedError,
    ContextError,
    DegenerateSpecializationError,
    ExecutionFailedError,
    InternalError,
    OpError,
    ParseError,
    SymbolicLimitError,
    TimeoutError,
    ToricError,
    ValidationError,
    VerificationFailedError,
    wrap_nested_op_error,
)


# TEST101: Every error renders with its category prefix
def test_101_error_display():
    assert str(ExecutionFailedError("something broke")) == "Op execution failed: something broke"
    assert str(TimeoutError(250)) == "Op timeout after 250ms"
    assert str(ContextError("missing key")) == "Context error: missing key"
    assert str(AmplenessError("degree 0 is not ample")) == "Not ample: degree 0 is not ample"
    assert str(ParseError("bad", 3, 7)) == "Parse error (line 3, column 7): bad"
    assert str(ParseError("bad")) == "Parse error: bad"


# TEST102: Exit codes separate validation, degenerate and internal failures
@pytest.mark.parametrize(
    "error, code",
    [
        (ValidationError("x"), 1),
        (ParseError("x"), 1),
        (SymbolicLimitError("x", 9, 8), 1),
        (ContextError("x"), 1),
        (DegenerateSpecializationError("x", stage=1), 2),
        (InternalError("x"), 3),
        (VerificationFailedError("x"), 3),
        (ExecutionFailedError("x"), 3),
        (TimeoutError(10), 3),
    ],
)
def test_102_exit_codes(error, code):
    assert error.exit_code == code
    assert isinstance(error, ToricError)


# TEST103: Copies keep the message and the extra fields
def test_103_error_copy():
    degenerate = copy.copy(DegenerateSpecializationError("rank 3 < 4", stage=2))
    assert degenerate.stage == 2 and degenerate.message == "rank 3 < 4"
    limit = copy.copy(SymbolicLimitError("too wide", 9, 8))
    assert (limit.size, limit.limit) == (9, 8)
    parse = copy.copy(ParseError("bad", 1, 2))
    assert (parse.line, parse.column) == (1, 2)
    assert copy.copy(TimeoutError(5)).timeout_ms == 5


# TEST104: Nested wrapping names the op for runtime errors and passes domain errors through
def test_104_wrap_nested_op_error():
    timed_out = wrap_nested_op_error("residue", TimeoutError(100))
    assert isinstance(timed_out, ExecutionFailedError)
    assert "timed out" in timed_out.message and "residue" in timed_out.message
    context = wrap_nested_op_error("residue", ContextError("missing key"))
    assert isinstance(context, ContextError) and "residue" in context.message
    batch = wrap_nested_op_error("verify", BatchFailedError("op 1 failed"))
    assert isinstance(batch, BatchFailedError)
    degenerate = DegenerateSpecializationError("resultant vanishes")
    assert wrap_nested_op_error("residue", degenerate) is degenerate
    other = wrap_nested_op_error("residue", KeyError("k"))
    assert isinstance(other, ExecutionFailedError) and isinstance(other, OpError)
    assert "residue" in other.message
