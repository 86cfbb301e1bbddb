"""Tests for ops/contexts.py and ops/metadata.py — dry/wet contexts and op metadata."""

import pytest

from toricres.errors import ContextError
from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.metadata import OpMetadata, schema_violations


# TEST105: Dry values come back by key; a type mismatch reads as missing
def test_105_dry_context_get():
    dry = DryContext().with_value("seed", 7).with_value("h", "x1*x2")
    assert dry.get("seed") == 7
    assert dry.get("seed", int) == 7
    assert dry.get("seed", str) is None
    assert dry.get("absent") is None
    assert dry.contains("h")
    assert sorted(dry.values()) == ["h", "seed"]


# TEST106: Required dry values raise ContextError when missing or mistyped
def test_106_dry_context_get_required():
    dry = DryContext({"trial": "3"})
    with pytest.raises(ContextError, match="'seed' not found"):
        dry.get_required("seed")
    with pytest.raises(ContextError, match="expected 'int', found string"):
        dry.get_required("trial", int)
    assert dry.get_required("trial", str) == "3"


# TEST107: Clones are deep; serialized contexts restore the same values
def test_107_dry_context_clone_and_json():
    dry = DryContext({"instance": {"rays": [[1], [-1]]}, "seed": 2})
    clone = dry.clone()
    clone.get("instance")["rays"].append([0])
    assert dry.get("instance") == {"rays": [[1], [-1]]}
    restored = DryContext.from_json(dry.to_json())
    assert restored.values() == dry.values()
    assert dry.to_json() == '{"values": {"instance": {"rays": [[1], [-1]]}, "seed": 2}}'
    with pytest.raises(ContextError, match="cannot restore"):
        DryContext.from_json("{not json")


# TEST108: ensure builds a wet reference once and reuses it afterwards
async def test_108_wet_context_ensure():
    calls = []

    async def factory(dry, wet, key):
        calls.append(key)
        return dry.get("seed", int) * 10

    dry = DryContext({"seed": 4})
    wet = WetContext()
    assert await wet.ensure("matrix", dry, factory) == 40
    assert await wet.ensure("matrix", dry, factory) == 40
    assert calls == ["matrix"]
    assert wet.get_ref("matrix", int) == 40
    assert wet.get_ref("matrix", str) is None


# TEST109: Required wet references raise ContextError when missing or mistyped
def test_109_wet_context_get_required():
    wet = WetContext().with_ref("config", "text")
    with pytest.raises(ContextError, match="'minor' not found"):
        wet.get_required("minor")
    with pytest.raises(ContextError, match="expected 'int', found 'str'"):
        wet.get_required("config", int)
    assert wet.contains("config")


# TEST110: Metadata reports schema violations, missing references and declared fields
def test_110_op_metadata():
    metadata = (
        OpMetadata.builder("residue")
        .description("toric residue")
        .input_schema({
            "type": "object",
            "properties": {"seed": {"type": "integer"}},
            "required": ["instance"],
        })
        .reference_schema({"type": "object", "required": ["config"]})
        .output_schema({"type": "object", "properties": {"value": {"type": "string"}}})
        .build()
    )
    assert metadata.name == "residue"
    assert metadata.description == "toric residue"
    assert metadata.required_inputs() == ["instance"]
    assert metadata.output_fields() == ["value"]
    problems = metadata.input_violations({"seed": "x"})
    assert len(problems) == 2
    assert any(p.startswith("$.seed:") for p in problems)
    assert metadata.missing_references(WetContext()) == ["config"]
    assert metadata.output_violations({"value": 1}) == ["$.value: 1 is not of type 'string'"]
    assert OpMetadata("bare").input_violations({"anything": 1}) == []
    assert schema_violations([1], {"type": "array", "items": {"type": "string"}}) == [
        "$[0]: 1 is not of type 'string'"
    ]
