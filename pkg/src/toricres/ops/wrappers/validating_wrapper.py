"""ValidatingWrapper: Draft-7 checks of the dry context before and the result after."""

from __future__ import annotations

import json
from typing import Generic, TypeVar

from toricres.errors import ContextError
from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.metadata import OpMetadata
from toricres.ops.op import Op

T = TypeVar("T")


class ValidatingWrapper(Op[T], Generic[T]):
    def __init__(self, op: Op[T], validate_input: bool = True, validate_output: bool = True) -> None:
        self._wrapped_op = op
        self._validate_input = validate_input
        self._validate_output = validate_output

    @classmethod
    def input_only(cls, op: Op[T]) -> "ValidatingWrapper[T]":
        return cls(op, validate_input=True, validate_output=False)

    async def perform(self, dry: DryContext, wet: WetContext) -> T:
        metadata = self._wrapped_op.metadata()
        if self._validate_input:
            problems = metadata.input_violations(dry.values())
            if problems:
                raise ContextError(f"Input validation failed for {metadata.name}: {', '.join(problems)}")
        # references are preconditions, checked in every mode
        missing = metadata.missing_references(wet)
        if missing:
            raise ContextError(
                f"Required reference '{missing[0]}' not found in WetContext for op '{metadata.name}'"
            )
        result = await self._wrapped_op.perform(dry, wet)
        if self._validate_output and metadata.output_schema is not None:
            try:
                plain = json.loads(json.dumps(result))
            except (TypeError, ValueError) as error:
                raise ContextError(f"Output of {metadata.name} is not JSON data: {error}") from None
            problems = metadata.output_violations(plain)
            if problems:
                raise ContextError(f"Output validation failed for {metadata.name}: {', '.join(problems)}")
        return result

    def metadata(self) -> OpMetadata:
        return self._wrapped_op.metadata()
