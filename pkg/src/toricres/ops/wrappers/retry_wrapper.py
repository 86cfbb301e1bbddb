"""RetryWrapper: re-run an op on a fresh specialization when the current one degenerates."""

from __future__ import annotations

import logging
from typing import Generic, TypeVar

from toricres.errors import DegenerateSpecializationError
from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.metadata import OpMetadata
from toricres.ops.op import Op

T = TypeVar("T")
_log = logging.getLogger(__name__)

ATTEMPT_KEY = "attempt"


class RetryWrapper(Op[T], Generic[T]):
    """Bumps the dry ``attempt`` counter, which re-derives the specialization seed."""

    def __init__(self, op: Op[T], retries: int) -> None:
        self._wrapped_op = op
        self._retries = retries

    async def perform(self, dry: DryContext, wet: WetContext) -> T:
        first = dry.get(ATTEMPT_KEY, int) or 0
        attempt = first
        try:
            while True:
                dry.insert(ATTEMPT_KEY, attempt)
                try:
                    return await self._wrapped_op.perform(dry, wet)
                except DegenerateSpecializationError as error:
                    if attempt - first >= self._retries:
                        raise
                    attempt += 1
                    _log.warning("%s; retrying with a new specialization (attempt %d)", error, attempt)
        finally:
            dry.insert(ATTEMPT_KEY, first)

    def metadata(self) -> OpMetadata:
        return self._wrapped_op.metadata()
