"""DryContext and WetContext.

DryContext: the JSON-serializable inputs of a run (instance document, seed, query,
trial counter). Replaying a serialized dry context reproduces a report exactly.
WetContext: live objects built from those inputs (parsed system, config, cached
matrices and minors).
"""

from __future__ import annotations

import json
from typing import Any, Awaitable, Callable, Dict, Optional

from toricres.errors import ContextError


def _json_type_name(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):  # bool before int
        return "boolean"
    if isinstance(value, (int, float)):
        return "number"
    if isinstance(value, str):
        return "string"
    if isinstance(value, list):
        return "array"
    if isinstance(value, dict):
        return "object"
    return "unknown"


class DryContext:
    """Plain data values keyed by name."""

    def __init__(self, values: Optional[Dict[str, Any]] = None) -> None:
        self._values: Dict[str, Any] = dict(values or {})

    def with_value(self, key: str, value: Any) -> "DryContext":
        self.insert(key, value)
        return self

    def insert(self, key: str, value: Any) -> None:
        self._values[key] = value

    def get(self, key: str, expected_type: Optional[type] = None) -> Any:
        """Value for ``key``, or None when missing or of another type."""
        value = self._values.get(key)
        if expected_type is not None and not isinstance(value, expected_type):
            return None
        return value

    def get_required(self, key: str, expected_type: Optional[type] = None) -> Any:
        if key not in self._values:
            raise ContextError(f"Required dry context key '{key}' not found")
        value = self._values[key]
        if expected_type is not None and not isinstance(value, expected_type):
            raise ContextError(
                f"Type mismatch for dry context key '{key}': "
                f"expected '{expected_type.__name__}', found {_json_type_name(value)} "
                f"value {json.dumps(value, default=repr)}"
            )
        return value

    def contains(self, key: str) -> bool:
        return key in self._values

    def values(self) -> Dict[str, Any]:
        return self._values

    def clone(self) -> "DryContext":
        return DryContext(json.loads(json.dumps(self._values)))

    def to_json(self) -> str:
        return json.dumps({"values": self._values}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DryContext":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as error:
            raise ContextError(f"cannot restore dry context: {error.msg}") from None
        return cls(data.get("values", {}))

    def __repr__(self) -> str:
        return f"DryContext(keys={list(self._values)})"


Factory = Callable[[DryContext, "WetContext", str], Awaitable[Any]]


class WetContext:
    """Runtime references: parsed instances, configuration, memoized matrices."""

    def __init__(self) -> None:
        self._references: Dict[str, Any] = {}

    def with_ref(self, key: str, value: Any) -> "WetContext":
        self.insert_ref(key, value)
        return self

    def insert_ref(self, key: str, value: Any) -> None:
        self._references[key] = value

    def get_ref(self, key: str, expected_type: Optional[type] = None) -> Optional[Any]:
        value = self._references.get(key)
        if expected_type is not None and not isinstance(value, expected_type):
            return None
        return value

    def get_required(self, key: str, expected_type: Optional[type] = None) -> Any:
        if key not in self._references:
            raise ContextError(f"Required wet context reference '{key}' not found")
        value = self._references[key]
        if expected_type is not None and not isinstance(value, expected_type):
            raise ContextError(
                f"Type mismatch for wet context reference '{key}': "
                f"expected '{expected_type.__name__}', found '{type(value).__name__}'"
            )
        return value

    def contains(self, key: str) -> bool:
        return key in self._references

    async def ensure(self, key: str, dry: DryContext, factory: Factory) -> Any:
        """Existing reference, or the awaited result of ``factory`` stored under ``key``."""
        if key in self._references:
            return self._references[key]
        value = await factory(dry, self, key)
        self._references[key] = value
        return value

    def __repr__(self) -> str:
        return f"WetContext(keys={list(self._references)})"
