"""Central execution entry point."""

from __future__ import annotations

import inspect
from pathlib import Path
from typing import TYPE_CHECKING, Any

from toricres.ops.wrappers.logging_wrapper import LoggingWrapper

if TYPE_CHECKING:
    from toricres.ops.contexts import DryContext, WetContext
    from toricres.ops.op import Op


def caller_name(depth: int = 1) -> str:
    """``"file::line"`` of the frame ``depth`` levels above the caller."""
    frame = inspect.stack()[depth + 1]
    return f"{Path(frame.filename).stem}::{frame.lineno}"


async def perform(op: "Op", dry: "DryContext", wet: "WetContext") -> Any:
    """Run ``op`` wrapped in a LoggingWrapper named after the call site."""
    return await LoggingWrapper(op, caller_name()).perform(dry, wet)
