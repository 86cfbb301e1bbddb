"""Asynchronous op runtime: ops, contexts, metadata, composition and wrappers."""

from toricres.ops.batch import FAILURES_KEY, BatchOp
from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.loop import LoopOp
from toricres.ops.metadata import OpMetadata, schema_violations
from toricres.ops.op import Op
from toricres.ops.runner import caller_name, perform
from toricres.ops.wrappers import LoggingWrapper, RetryWrapper, TimeBoundWrapper, ValidatingWrapper

__all__ = [
    "FAILURES_KEY",
    "BatchOp",
    "DryContext",
    "WetContext",
    "LoopOp",
    "OpMetadata",
    "schema_violations",
    "Op",
    "caller_name",
    "perform",
    "LoggingWrapper",
    "RetryWrapper",
    "TimeBoundWrapper",
    "ValidatingWrapper",
]
