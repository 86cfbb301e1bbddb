"""Engine configuration shared by every command."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Any, Optional


@dataclass(frozen=True)
class EngineConfig:
    max_symbolic_size: int = 6
    symbolic_validator_max_cols: int = 8
    numerator_bound: int = 10**4
    denominator_bound: int = 100
    retry: int = 0
    timeout_ms: Optional[int] = None
    cross_check_limit: int = 12
    concurrency: int = 1

    @classmethod
    def from_args(cls, args: Any) -> "EngineConfig":
        """Pick the fields present on an argparse namespace; the rest keep defaults."""
        values = {}
        for item in fields(cls):
            value = getattr(args, item.name, None)
            if value is not None:
                values[item.name] = value
        max_h = getattr(args, "max_h", None)
        if max_h is not None:
            values["cross_check_limit"] = max_h
        return cls(**values)

    def with_retry(self, retry: int) -> "EngineConfig":
        return replace(self, retry=retry)

    def to_dict(self) -> dict:
        return {item.name: getattr(self, item.name) for item in fields(self)}
