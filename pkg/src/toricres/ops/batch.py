"""BatchOp: a sequence of ops run in order, optionally collecting failures."""

from __future__ import annotations

import logging
from typing import Any, Dict, Generic, List, Optional, Set, TypeVar

from toricres.errors import BatchFailedError, OpError, ToricError
from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.metadata import OpMetadata
from toricres.ops.op import Op

T = TypeVar("T")
_log = logging.getLogger(__name__)

FAILURES_KEY = "batch_failures"


class BatchOp(Op[List[Optional[T]]], Generic[T]):
    """Runs ops in order.

    Without ``continue_on_error`` the first failure stops the batch; domain errors keep
    their type, anything else becomes a BatchFailedError. With it, each failure is
    appended to the dry ``batch_failures`` list and its slot in the result is None.
    """

    def __init__(self, ops: List[Op[T]], continue_on_error: bool = False, name: str = "BatchOp") -> None:
        self._ops: List[Op[T]] = list(ops)
        self._continue_on_error = continue_on_error
        self._name = name

    def __len__(self) -> int:
        return len(self._ops)

    async def perform(self, dry: DryContext, wet: WetContext) -> List[Optional[T]]:
        results: List[Optional[T]] = []
        for index, op in enumerate(self._ops):
            name = op.metadata().name
            try:
                results.append(await op.perform(dry, wet))
            except Exception as error:
                if not self._continue_on_error:
                    if isinstance(error, ToricError) and not isinstance(error, OpError):
                        raise
                    raise BatchFailedError(f"Op {index}-{name} failed: {error}") from error
                _log.debug("op %d (%s) failed, continuing: %s", index, name, error)
                failures = dry.get(FAILURES_KEY, list) or []
                failures.append({"index": index, "op": name, "error": str(error)})
                dry.insert(FAILURES_KEY, failures)
                results.append(None)
        return results

    def metadata(self) -> OpMetadata:
        """Inputs required by some op and not produced by an earlier one."""
        metadatas = [op.metadata() for op in self._ops]
        produced: Set[str] = set()
        properties: Dict[str, Any] = {}
        required: List[str] = []
        for metadata in metadatas:
            schema_properties = (metadata.input_schema or {}).get("properties", {})
            for field in metadata.required_inputs():
                if field not in produced and field not in properties:
                    properties[field] = schema_properties.get(field, {})
                    required.append(field)
            produced.update(metadata.output_fields())
        input_schema = {"type": "object", "properties": properties, "required": required}
        return (
            OpMetadata.builder(self._name)
            .description(f"Batch of {len(metadatas)} operations")
            .input_schema(input_schema)
            .build()
        )
