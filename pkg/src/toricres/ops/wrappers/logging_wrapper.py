"""LoggingWrapper: start, completion time and failure of an op, ANSI colored."""

from __future__ import annotations

import logging
import time
from typing import Generic, TypeVar

from toricres.errors import ToricError, wrap_nested_op_error
from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.metadata import OpMetadata
from toricres.ops.op import Op

T = TypeVar("T")

YELLOW = "\x1b[33m"
GREEN = "\x1b[32m"
RED = "\x1b[31m"
RESET = "\x1b[0m"

_log = logging.getLogger(__name__)


class LoggingWrapper(Op[T], Generic[T]):
    def __init__(self, op: Op[T], name: str) -> None:
        self._wrapped_op = op
        self._name = name

    async def perform(self, dry: DryContext, wet: WetContext) -> T:
        start = time.monotonic()
        _log.info("%sStarting op: %s (%s)%s", YELLOW, self._name, self.metadata().name, RESET)
        try:
            result = await self._wrapped_op.perform(dry, wet)
        except Exception as error:
            elapsed = time.monotonic() - start
            _log.error("%sOp '%s' failed after %.3f seconds: %s%s", RED, self._name, elapsed, error, RESET)
            wrapped = wrap_nested_op_error(self._name, error)
            if wrapped is error:
                raise
            raise wrapped from (None if isinstance(error, ToricError) else error)
        _log.info("%sOp '%s' completed in %.3f seconds%s", GREEN, self._name, time.monotonic() - start, RESET)
        return result

    def metadata(self) -> OpMetadata:
        return self._wrapped_op.metadata()
