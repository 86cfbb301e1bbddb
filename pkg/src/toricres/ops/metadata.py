"""OpMetadata: name, description and Draft-7 schemas of an op's inputs and output."""

from __future__ import annotations

from typing import Any, Dict, List, Optional

import jsonschema

from toricres.ops.contexts import WetContext


def schema_violations(value: Any, schema: Dict[str, Any]) -> List[str]:
    """Every Draft-7 violation of ``value`` as ``"<json path>: <message>"``."""
    validator = jsonschema.Draft7Validator(schema)
    return [
        f"{error.json_path}: {error.message}"
        for error in sorted(validator.iter_errors(value), key=lambda e: list(e.absolute_path))
    ]


class OpMetadata:
    def __init__(
        self,
        name: str,
        input_schema: Optional[Dict[str, Any]] = None,
        reference_schema: Optional[Dict[str, Any]] = None,
        output_schema: Optional[Dict[str, Any]] = None,
        description: Optional[str] = None,
    ) -> None:
        self.name = name
        self.input_schema = input_schema
        self.reference_schema = reference_schema
        self.output_schema = output_schema
        self.description = description

    @classmethod
    def builder(cls, name: str) -> "OpMetadataBuilder":
        return OpMetadataBuilder(name)

    def input_violations(self, values: Dict[str, Any]) -> List[str]:
        if self.input_schema is None:
            return []
        return schema_violations(values, self.input_schema)

    def missing_references(self, wet: WetContext) -> List[str]:
        if self.reference_schema is None:
            return []
        return [key for key in self.reference_schema.get("required", []) if not wet.contains(key)]

    def output_violations(self, output: Any) -> List[str]:
        if self.output_schema is None:
            return []
        return schema_violations(output, self.output_schema)

    def required_inputs(self) -> List[str]:
        if not isinstance(self.input_schema, dict):
            return []
        return [f for f in self.input_schema.get("required", []) if isinstance(f, str)]

    def output_fields(self) -> List[str]:
        if not isinstance(self.output_schema, dict):
            return []
        return list(self.output_schema.get("properties", {}))

    def __repr__(self) -> str:
        return f"OpMetadata(name={self.name!r})"


class OpMetadataBuilder:
    """Fluent builder for OpMetadata."""

    def __init__(self, name: str) -> None:
        self._name = name
        self._input_schema: Optional[Dict[str, Any]] = None
        self._reference_schema: Optional[Dict[str, Any]] = None
        self._output_schema: Optional[Dict[str, Any]] = None
        self._description: Optional[str] = None

    def input_schema(self, schema: Dict[str, Any]) -> "OpMetadataBuilder":
        self._input_schema = schema
        return self

    def reference_schema(self, schema: Dict[str, Any]) -> "OpMetadataBuilder":
        self._reference_schema = schema
        return self

    def output_schema(self, schema: Dict[str, Any]) -> "OpMetadataBuilder":
        self._output_schema = schema
        return self

    def description(self, text: str) -> "OpMetadataBuilder":
        self._description = text
        return self

    def build(self) -> OpMetadata:
        return OpMetadata(
            name=self._name,
            input_schema=self._input_schema,
            reference_schema=self._reference_schema,
            output_schema=self._output_schema,
            description=self._description,
        )
