"""TimeBoundWrapper: wall-clock budget for an op via ``asyncio.wait_for``."""

from __future__ import annotations

import asyncio
import logging
import time
from typing import Generic, Optional, TypeVar

from toricres.errors import TimeoutError
from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.metadata import OpMetadata
from toricres.ops.op import Op

T = TypeVar("T")
_log = logging.getLogger(__name__)


class TimeBoundWrapper(Op[T], Generic[T]):
    def __init__(self, op: Op[T], timeout_ms: int, name: Optional[str] = None) -> None:
        self._wrapped_op = op
        self._timeout_ms = timeout_ms
        self._name = name or op.metadata().name

    async def perform(self, dry: DryContext, wet: WetContext) -> T:
        start = time.monotonic()
        timeout_s = self._timeout_ms / 1000.0
        try:
            result = await asyncio.wait_for(self._wrapped_op.perform(dry, wet), timeout=timeout_s)
        except asyncio.TimeoutError:
            _log.warning("Op '%s' was terminated after %dms", self._name, self._timeout_ms)
            raise TimeoutError(self._timeout_ms) from None
        elapsed = time.monotonic() - start
        if timeout_s > 0 and elapsed / timeout_s > 0.8:
            _log.info(
                "Op '%s' completed in %.3fs (%d%% of its %dms budget)",
                self._name,
                elapsed,
                int(elapsed / timeout_s * 100),
                self._timeout_ms,
            )
        return result

    def metadata(self) -> OpMetadata:
        return self._wrapped_op.metadata()
