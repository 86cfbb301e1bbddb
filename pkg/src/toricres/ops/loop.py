"""LoopOp: a body op repeated ``limit`` times with a counter in the dry context."""

from __future__ import annotations

import asyncio
import logging
from typing import Any, Generic, List, Sequence, Tuple, TypeVar

from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.metadata import OpMetadata
from toricres.ops.op import Op

T = TypeVar("T")
_log = logging.getLogger(__name__)


class LoopOp(Op[List[T]], Generic[T]):
    """Iterations start at the counter's current value (0 when unset).

    With ``concurrency > 1`` iterations run on clones of the dry context, at most
    ``concurrency`` at a time, and results keep iteration order. Entries an iteration
    appends to the list under a ``collect`` key are copied back to the parent context
    in iteration order, as a sequential run would leave them.
    """

    def __init__(
        self,
        counter_var: str,
        limit: int,
        body: Op[T],
        concurrency: int = 1,
        collect: Sequence[str] = (),
    ) -> None:
        self._counter_var = counter_var
        self._limit = limit
        self._body = body
        self._concurrency = max(1, concurrency)
        self._collect = tuple(collect)

    async def perform(self, dry: DryContext, wet: WetContext) -> List[T]:
        start = dry.get(self._counter_var, int) or 0
        if self._concurrency == 1:
            results: List[T] = []
            for counter in range(start, self._limit):
                dry.insert(self._counter_var, counter)
                results.append(await self._body.perform(dry, wet))
            dry.insert(self._counter_var, max(start, self._limit))
            return results

        gate = asyncio.Semaphore(self._concurrency)

        async def iteration(counter: int) -> Tuple[T, DryContext]:
            async with gate:
                local = dry.clone().with_value(self._counter_var, counter)
                _log.debug("%s = %d started", self._counter_var, counter)
                return await self._body.perform(local, wet), local

        prior = {key: len(dry.get(key, list) or []) for key in self._collect}
        finished = await asyncio.gather(*(iteration(c) for c in range(start, self._limit)))
        for key in self._collect:
            gathered: List[Any] = list(dry.get(key, list) or [])
            for _, local in finished:
                gathered.extend((local.get(key, list) or [])[prior[key]:])
            if gathered:
                dry.insert(key, gathered)
        results = [result for result, _ in finished]
        dry.insert(self._counter_var, max(start, self._limit))
        return results

    def metadata(self) -> OpMetadata:
        inner = self._body.metadata()
        return (
            OpMetadata.builder("LoopOp")
            .description(f"Loop {self._limit} times over {inner.name}")
            .input_schema(inner.input_schema or {"type": "object"})
            .build()
        )
