"""Shared plumbing of the command ops: instance loading, seeds, specializations, caches."""

from __future__ import annotations

import logging
from dataclasses import replace
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from toricres.arith.rational import format_rational
from toricres.config import EngineConfig
from toricres.errors import DegenerateSpecializationError, ValidationError
from toricres.instance import GlobalInstance, build_instance, parse_monomial, parse_polynomial
from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.metadata import OpMetadata
from toricres.ops.op import Op
from toricres.residue.complexes import resultant_power, subresultant_value
from toricres.residue.macaulay import SelectedMinor
from toricres.specialization import (
    Specialization,
    derive_seed,
    random_specialization,
    specialization_from_names,
    specialization_to_json,
)
from toricres.system import ToricSystem

_log = logging.getLogger(__name__)

CONFIG_KEY = "config"
INSTANCE_KEY = "instance"

INPUT_PROPERTIES: Dict[str, Any] = {
    "instance": {"type": "object"},
    "seed": {"type": "integer"},
    "trial": {"type": "integer", "minimum": 0},
    "attempt": {"type": "integer", "minimum": 0},
    "spec": {"type": "object", "additionalProperties": {"type": ["string", "integer"]}},
    "flag": {"type": "integer", "minimum": 0},
    "h": {"type": "string"},
    "poly": {"type": "string"},
    "all": {"type": "boolean"},
    "trials": {"type": "integer", "minimum": 1},
    "degree": {"type": "array", "items": {"type": "integer"}},
    "symbolic": {"type": "boolean"},
}

REPORT_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {"command": {"type": "string"}, "lines": {"type": "array", "items": {"type": "string"}}},
    "required": ["command", "lines"],
}


def input_schema(*required: str) -> Dict[str, Any]:
    return {
        "type": "object",
        "properties": INPUT_PROPERTIES,
        "required": ["instance", *required],
    }


def current_seed(dry: DryContext) -> int:
    """Base seed, re-derived per trial and per retry attempt."""
    seed = dry.get("seed", int) or 0
    trial = dry.get("trial", int) or 0
    attempt = dry.get("attempt", int) or 0
    if trial:
        seed = derive_seed(seed, trial)
    if attempt:
        seed = derive_seed(seed, attempt)
    return seed


def config_of(wet: WetContext) -> EngineConfig:
    return wet.get_ref(CONFIG_KEY, EngineConfig) or EngineConfig()


async def _load_instance(dry: DryContext, wet: WetContext, key: str):
    loaded = build_instance(dry.get_required(INSTANCE_KEY, dict))
    if isinstance(loaded, ToricSystem):
        loaded = replace(loaded, max_symbolic_size=config_of(wet).max_symbolic_size)
    return loaded


async def load_global(dry: DryContext, wet: WetContext) -> GlobalInstance:
    loaded = await wet.ensure("loaded", dry, _load_instance)
    if not isinstance(loaded, GlobalInstance):
        raise ValidationError("this command needs a document with \"kind\": \"global\"")
    return loaded


async def load_system(dry: DryContext, wet: WetContext, flag: Optional[int] = None) -> ToricSystem:
    """The instance of the dry context with the requested flag; one object per flag."""
    loaded = await wet.ensure("loaded", dry, _load_instance)
    if isinstance(loaded, GlobalInstance):
        raise ValidationError("a global document has no toric instance; use the global command")
    index = flag if flag is not None else (dry.get("flag", int) or 0)

    async def for_flag(_dry: DryContext, _wet: WetContext, _key: str) -> ToricSystem:
        return loaded.with_flag(index)

    return await wet.ensure(f"system:flag{index}", dry, for_flag)


def specialization_for(dry: DryContext, wet: WetContext, system: ToricSystem) -> Tuple[Specialization, Optional[int]]:
    """Values from the dry ``spec`` mapping, else a seeded random draw."""
    values = dry.get("spec", dict)
    if values is not None:
        return specialization_from_names(values, system.names, system.atoms), None
    config = config_of(wet)
    seed = current_seed(dry)
    spec = random_specialization(system.atoms, seed, config.numerator_bound, config.denominator_bound)
    return spec, seed


def _system_key(system: ToricSystem) -> str:
    return f"{system.name}:flag{system.flag_index}"


def _spec_key(spec: Specialization) -> str:
    return ",".join(f"{atom.default_name()}={format_rational(value)}" for atom, value in sorted(spec.items()))


async def minor_for(system: ToricSystem, spec: Specialization, dry: DryContext, wet: WetContext, **options) -> SelectedMinor:
    """Memoized minor selection for a loaded system (see load_system)."""

    async def select(_dry: DryContext, _wet: WetContext, _key: str) -> SelectedMinor:
        return system.minor(spec, **options)

    key = f"minor:{_system_key(system)}:{sorted(options.items())}:{_spec_key(spec)}"
    return await wet.ensure(key, dry, select)


async def resultant_for(system: ToricSystem, spec: Specialization, dry: DryContext, wet: WetContext) -> Fraction:
    async def compute(_dry: DryContext, _wet: WetContext, _key: str) -> Fraction:
        return resultant_power(system.fan, system.polys, system.degrees, system.flag, spec, system.max_symbolic_size)

    return await wet.ensure(f"resultant:{_system_key(system)}:{_spec_key(spec)}", dry, compute)


async def subresultant_for(
    system: ToricSystem, h: Sequence[int], spec: Specialization, dry: DryContext, wet: WetContext
) -> Fraction:
    async def compute(_dry: DryContext, _wet: WetContext, _key: str) -> Fraction:
        return subresultant_value(system.fan, system.polys, system.degrees, h, spec)

    return await wet.ensure(f"subres:{_system_key(system)}:{list(h)}:{_spec_key(spec)}", dry, compute)


def query_monomials(dry: DryContext, system: ToricSystem) -> List[Tuple[int, ...]]:
    """``--all``, then ``h``, then the instance's own query monomial."""
    if dry.get("all", bool):
        return list(system.critical_basis)
    text = dry.get("h", str)
    if text is not None:
        h = parse_monomial(text, system.variables)
        if h not in system.critical_basis:
            raise ValidationError(f"monomial {text} does not have the critical degree {system.rho.format()}")
        return [h]
    if system.h is not None:
        return [system.h]
    return []


def query_polynomial(dry: DryContext, system: ToricSystem):
    text = dry.get("poly", str)
    if text is not None:
        registry = {name: atom for atom, name in system.names.items()}
        registry.update({atom.default_name(): atom for atom in system.atoms})
        return parse_polynomial(text, system.variables, registry)
    return system.poly


def specialization_json(spec: Specialization, system: ToricSystem) -> Dict[str, str]:
    return specialization_to_json(spec, system.names)


def require_nonzero(value: Fraction, what: str) -> Fraction:
    if not value:
        raise DegenerateSpecializationError(f"{what} vanishes at this specialization")
    return value


class CommandOp(Op[Dict[str, Any]]):
    """A command: reads the dry inputs, returns a report dict with printable ``lines``."""

    command = "command"
    description = ""
    required_inputs: Tuple[str, ...] = ()

    def metadata(self) -> OpMetadata:
        return (
            OpMetadata.builder(self.command)
            .description(self.description)
            .input_schema(input_schema(*self.required_inputs))
            .output_schema(REPORT_SCHEMA)
            .build()
        )

    def report(self, system_name: str, lines: List[str], **fields: Any) -> Dict[str, Any]:
        return {"command": self.command, "instance": system_name, **fields, "lines": lines}

