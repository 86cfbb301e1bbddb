"""Instance documents: JSON schemas, parsing, validation and serialization.

A toric instance is one JSON object::

    {
      "name": "p1xp1",
      "rays": [[1, 0], [0, -1], [-1, 0], [0, 1]],
      "max_cones": [[0, 1], [1, 2], [2, 3], [0, 3]],
      "degrees": [[0, 1, 1, 0], ...],
      "variables": ["x1", "x2", "x3", "x4"],
      "polys": [[{"exponent": [0, 1, 1, 0], "coefficient": "a0"}, ...], ...],
      "flag": [[0], [0, 1]],
      "flags": [[[1], [1, 2]]],
      "h": "x3^2*x4^2",
      "resultant": "matrix"
    }

Coefficients are ``"p/q"`` literals or named atoms (``"a0"``, ``"-a0"``,
``"3/2*a0"``). A name denotes the coefficient of one term of one equation.
``"generic": true`` replaces ``polys`` by the generic system of the degrees.
Documents with ``"kind": "global"`` describe a Laurent system for global residues.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import jsonschema

from toricres.arith.coeffpoly import Atom, CoeffPoly
from toricres.arith.polynomial import CoxPolynomial, LaurentPolynomial, format_monomial
from toricres.arith.rational import format_rational, is_rational_literal, parse_rational
from toricres.errors import DimensionError, ParseError, ValidationError
from toricres.residue.global_residue import (
    LaurentSystem,
    MacaulayRecipe,
    PowerRecipe,
    construct_from_roots,
)
from toricres.system import ToricSystem
from toricres.toric.fan import Fan, Flag
from toricres.toric.polytope import generic_system, monomial_basis

_log = logging.getLogger(__name__)

_INT_VECTOR = {"type": "array", "items": {"type": "integer"}}
_COEFFICIENT = {"type": ["string", "integer"]}
_TERM = {
    "type": "object",
    "properties": {"exponent": _INT_VECTOR, "coefficient": _COEFFICIENT},
    "required": ["exponent", "coefficient"],
    "additionalProperties": False,
}
_TERMS = {"type": "array", "items": _TERM}
_FLAG = {"type": "array", "items": _INT_VECTOR, "minItems": 1}

INSTANCE_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "kind": {"const": "toric"},
        "name": {"type": "string"},
        "description": {"type": "string"},
        "rays": {"type": "array", "items": _INT_VECTOR, "minItems": 1},
        "max_cones": {"type": "array", "items": _INT_VECTOR, "minItems": 1},
        "degrees": {"type": "array", "items": _INT_VECTOR, "minItems": 1},
        "variables": {"type": "array", "items": {"type": "string"}},
        "polys": {"type": "array", "items": _TERMS},
        "generic": {"type": "boolean"},
        "flag": _FLAG,
        "flags": {"type": "array", "items": _FLAG},
        "h": {"oneOf": [_INT_VECTOR, {"type": "string"}]},
        "P": {"oneOf": [_TERMS, {"type": "string"}]},
        "resultant": {
            "oneOf": [
                {"const": "matrix"},
                {
                    "type": "object",
                    "properties": {
                        "determinant": {"type": "array", "items": {"type": "array", "items": _COEFFICIENT}}
                    },
                    "required": ["determinant"],
                    "additionalProperties": False,
                },
            ]
        },
    },
    "required": ["rays", "max_cones", "degrees", "flag"],
    "anyOf": [
        {"required": ["polys"]},
        {"required": ["generic"], "properties": {"generic": {"const": True}}},
    ],
    "additionalProperties": False,
}

GLOBAL_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "kind": {"const": "global"},
        "name": {"type": "string"},
        "description": {"type": "string"},
        "polys": {"type": "array", "items": _TERMS, "minItems": 1},
        "lines": {
            "type": "array",
            "items": {"type": "array", "items": _COEFFICIENT, "minItems": 3, "maxItems": 3},
            "minItems": 4,
            "maxItems": 4,
        },
        "recipe": {
            "type": "object",
            "properties": {
                "type": {"enum": ["macaulay", "power"]},
                "f0_power": {"type": "integer", "minimum": 1},
                "numerator": _INT_VECTOR,
            },
            "required": ["type"],
            "additionalProperties": False,
        },
        "q": _TERMS,
        "roots": {"type": "array", "items": {"type": "array", "items": _COEFFICIENT}},
    },
    "required": ["kind"],
    "oneOf": [{"required": ["polys"]}, {"required": ["lines"]}],
    "additionalProperties": False,
}

_NAME = r"[A-Za-z_][A-Za-z0-9_\[\],]*"
_COEFFICIENT_RE = re.compile(
    rf"^\s*(?:(?P<factor>[+-]?\d+(?:/\d+)?)\s*\*\s*)?(?P<sign>[+-])?\s*(?P<name>{_NAME})\s*$"
)
_FACTOR_RE = re.compile(rf"^(?P<base>{_NAME})(?:\^(?P<power>\d+))?$")


@dataclass(frozen=True)
class GlobalInstance:
    """A Laurent system with an optional query, root list and homogenization recipe."""

    system: LaurentSystem
    name: str = "global"
    description: str = ""
    recipe: Union[MacaulayRecipe, PowerRecipe] = MacaulayRecipe()
    query: Optional[LaurentPolynomial] = None
    roots: Optional[Tuple[Tuple[Fraction, ...], ...]] = None


# -- documents --------------------------------------------------------------


def parse_document(text: str) -> Dict[str, Any]:
    if not text.strip():
        raise ParseError("empty instance document", 1, 1)
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise ParseError(error.msg, error.lineno, error.colno) from None
    if not isinstance(document, dict):
        raise ParseError("an instance document must be a JSON object", 1, 1)
    return document


def validate_document(document: Mapping[str, Any]) -> None:
    """Schema check with every violation reported at its JSON path."""
    schema = GLOBAL_SCHEMA if document.get("kind") == "global" else INSTANCE_SCHEMA
    validator = jsonschema.Draft7Validator(schema)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path))
    if errors:
        messages = [f"{e.json_path}: {e.message}" for e in errors]
        raise ParseError("; ".join(messages))


# -- coefficients and monomials ---------------------------------------------


def parse_coefficient(
    value: Union[str, int],
    registry: Dict[str, Atom],
    atom: Optional[Atom] = None,
) -> Union[Fraction, CoeffPoly]:
    """Rational literal or ``[p/q*][-]name``.

    With ``atom`` given the name is bound to that atom (and must not be bound to a
    different one); without it the name must already be known.
    """
    if isinstance(value, int) or (isinstance(value, str) and is_rational_literal(value)):
        return parse_rational(value)
    match = _COEFFICIENT_RE.match(value)
    if match is None:
        raise ParseError(f"cannot read coefficient {value!r}")
    factor = parse_rational(match.group("factor")) if match.group("factor") else Fraction(1)
    if match.group("sign") == "-":
        factor = -factor
    name = match.group("name")
    known = registry.get(name)
    if atom is None:
        if known is None:
            raise ParseError(f"unknown coefficient name {name!r}")
        atom = known
    elif known is None:
        registry[name] = atom
    elif known != atom:
        raise ParseError(f"coefficient name {name!r} is used for two different terms")
    return CoeffPoly.atom(atom, factor)


def format_coefficient(value: Union[Fraction, CoeffPoly], names: Mapping[Atom, str]) -> str:
    if not isinstance(value, CoeffPoly):
        return format_rational(value)
    single = value.single_atom()
    if single is None:
        raise ValidationError(f"coefficient {value.format(names)} is not a multiple of one atom")
    atom, factor = single
    name = names.get(atom) or atom.default_name()
    if factor == 1:
        return name
    if factor == -1:
        return f"-{name}"
    return f"{format_rational(factor)}*{name}"


def parse_monomial(text: Union[str, Sequence[int]], variables: Sequence[str]) -> Tuple[int, ...]:
    """``"x3^2*x4^2"``, ``"1"`` or an explicit exponent list."""
    if not isinstance(text, str):
        exponent = tuple(int(v) for v in text)
        if len(exponent) != len(variables):
            raise DimensionError(f"exponent has length {len(exponent)}, expected {len(variables)}")
        return exponent
    exponent = [0] * len(variables)
    stripped = text.strip()
    if stripped == "1":
        return tuple(exponent)
    lookup = {name: index for index, name in enumerate(variables)}
    for factor in stripped.split("*"):
        match = _FACTOR_RE.match(factor.strip())
        if match is None or match.group("base") not in lookup:
            raise ParseError(f"cannot read monomial factor {factor.strip()!r} in {text!r}")
        exponent[lookup[match.group("base")]] += int(match.group("power") or 1)
    return tuple(exponent)


def parse_polynomial(text: str, variables: Sequence[str], registry: Mapping[str, Atom]) -> CoxPolynomial:
    """Expression such as ``"3/2*x1*x3 - a0*x2^2 + x4^2"`` over the instance's variables."""
    lookup = {name: index for index, name in enumerate(variables)}
    pieces = re.split(r"\s*([+-])\s*", text.strip())
    if pieces and pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    if not pieces or len(pieces) % 2:
        raise ParseError(f"cannot read polynomial {text!r}")
    terms: Dict[Tuple[int, ...], Union[Fraction, CoeffPoly]] = {}
    for sign, body in zip(pieces[::2], pieces[1::2]):
        if not body:
            raise ParseError(f"empty term in polynomial {text!r}")
        coefficient: Union[Fraction, CoeffPoly] = Fraction(-1 if sign == "-" else 1)
        exponent = [0] * len(variables)
        for factor in body.split("*"):
            factor = factor.strip()
            if is_rational_literal(factor):
                coefficient = coefficient * parse_rational(factor)
                continue
            match = _FACTOR_RE.match(factor)
            if match is None:
                raise ParseError(f"cannot read factor {factor!r} in {text!r}")
            base, power = match.group("base"), int(match.group("power") or 1)
            if base in lookup:
                exponent[lookup[base]] += power
            elif base in registry:
                atom = CoeffPoly.atom(registry[base])
                for _ in range(power):
                    coefficient = atom * coefficient
            else:
                raise ParseError(f"unknown name {base!r} in {text!r}")
        key = tuple(exponent)
        terms[key] = terms.get(key, 0) + coefficient
    return CoxPolynomial(len(variables), terms)


def _parse_terms(
    terms: Sequence[Mapping[str, Any]],
    nvars: int,
    registry: Dict[str, Atom],
    eq: Optional[int],
    where: str,
    cls=CoxPolynomial,
):
    result: Dict[Tuple[int, ...], Union[Fraction, CoeffPoly]] = {}
    order: List[Tuple[int, ...]] = []
    for index, term in enumerate(terms):
        exponent = tuple(term["exponent"])
        if len(exponent) != nvars:
            raise DimensionError(
                f"{where}[{index}]: exponent has length {len(exponent)}, expected {nvars}"
            )
        if exponent in result:
            raise ParseError(f"{where}[{index}]: exponent {list(exponent)} appears twice")
        atom = Atom(eq, exponent) if eq is not None else None
        try:
            result[exponent] = parse_coefficient(term["coefficient"], registry, atom)
        except ParseError as error:
            raise ParseError(f"{where}[{index}]: {error.message}") from None
        order.append(exponent)
    return cls(nvars, result), order


def _parse_flag(fan: Fan, cones: Sequence[Sequence[int]]) -> Flag:
    return Flag.create(fan, cones)


# -- building ---------------------------------------------------------------


def build_system(document: Mapping[str, Any]) -> ToricSystem:
    fan = Fan.create(document["rays"], document["max_cones"])
    degrees = [tuple(b) for b in document["degrees"]]
    variables = tuple(document.get("variables") or (f"x{i}" for i in range(fan.nrays)))
    if len(variables) != fan.nrays:
        raise DimensionError(f"expected {fan.nrays} variable names, got {len(variables)}")
    registry: Dict[str, Atom] = {}
    if document.get("generic"):
        polys = generic_system(fan, degrees)
        orders = [list(monomial_basis(fan, b)) for b in degrees]
    else:
        polys, orders = [], []
        for eq, terms in enumerate(document["polys"]):
            poly, order = _parse_terms(terms, fan.nrays, registry, eq, f"$.polys[{eq}]")
            polys.append(poly)
            orders.append(order)
    supports = tuple(orders[0]) if orders and all(o == orders[0] for o in orders) else None
    flags = [_parse_flag(fan, document["flag"])]
    flags.extend(_parse_flag(fan, cones) for cones in document.get("flags", []))
    h = parse_monomial(document["h"], variables) if "h" in document else None
    poly = None
    if "P" in document:
        if isinstance(document["P"], str):
            poly = parse_polynomial(document["P"], variables, registry)
        else:
            poly, _ = _parse_terms(document["P"], fan.nrays, registry, None, "$.P")
    reference = None
    if "resultant" in document:
        declared = document["resultant"]
        if declared == "matrix":
            reference = "matrix"
        else:
            reference = tuple(
                tuple(parse_coefficient(v, registry) for v in row) for row in declared["determinant"]
            )
            if any(len(row) != len(reference) for row in reference):
                raise DimensionError("reference resultant determinant must be square")
    names = {atom: name for name, atom in registry.items() if name != atom.default_name()}
    system = ToricSystem.create(
        fan,
        degrees,
        polys,
        flags,
        name=document.get("name", "instance"),
        description=document.get("description", ""),
        variables=variables,
        names=names,
        supports=supports,
        h=h,
        poly=poly,
        reference=reference,
    )
    _log.info("loaded instance %s: %d rays in dimension %d", system.name, fan.nrays, fan.dim)
    return system


def _laurent_terms(terms, nvars: int, where: str) -> LaurentPolynomial:
    poly, _ = _parse_terms(terms, nvars, {}, None, where, cls=LaurentPolynomial)
    if poly.has_symbolic_coefficients():
        raise ValidationError(f"{where}: global systems take rational coefficients only")
    return poly


def build_global(document: Mapping[str, Any]) -> GlobalInstance:
    roots = None
    if "lines" in document:
        lines = [[parse_rational(v) for v in line] for line in document["lines"]]
        system, found = construct_from_roots(lines)
        roots = tuple(found)
    else:
        nvars = len(document["polys"])
        polys = [
            _laurent_terms(terms, nvars, f"$.polys[{index}]")
            for index, terms in enumerate(document["polys"])
        ]
        system = LaurentSystem.create(polys)
    if "roots" in document:
        roots = tuple(tuple(parse_rational(v) for v in root) for root in document["roots"])
    query = _laurent_terms(document["q"], system.n, "$.q") if "q" in document else None
    recipe: Union[MacaulayRecipe, PowerRecipe] = MacaulayRecipe()
    spec = document.get("recipe")
    if spec and spec["type"] == "power":
        if "f0_power" not in spec or "numerator" not in spec:
            raise ParseError("$.recipe: a power recipe needs f0_power and numerator")
        recipe = PowerRecipe(spec["f0_power"], tuple(spec["numerator"]))
    return GlobalInstance(
        system,
        name=document.get("name", "global"),
        description=document.get("description", ""),
        recipe=recipe,
        query=query,
        roots=roots,
    )


def build_instance(document: Mapping[str, Any]) -> Union[ToricSystem, GlobalInstance]:
    validate_document(document)
    if document.get("kind") == "global":
        return build_global(document)
    return build_system(document)


def parse_text(text: str) -> Union[ToricSystem, GlobalInstance]:
    return build_instance(parse_document(text))


def read_document(path: Union[str, Path]) -> Dict[str, Any]:
    """Document at ``path``; bare names fall back to the bundled instances."""
    path = Path(path)
    if path.exists():
        try:
            return parse_document(path.read_text())
        except OSError as error:
            raise ParseError(f"cannot read {path}: {error.strerror}") from None
    name = path.name if path.suffix == ".json" else f"{path.name}.json"
    bundled = resources.files("toricres.data").joinpath(name)
    if path.parent == Path(".") and bundled.is_file():
        return parse_document(bundled.read_text())
    raise ParseError(f"instance file {str(path)!r} not found")


def parse_input(path: Union[str, Path]) -> Union[ToricSystem, GlobalInstance]:
    return build_instance(read_document(path))


def bundled_names() -> List[str]:
    return sorted(
        entry.name
        for entry in resources.files("toricres.data").iterdir()
        if entry.name.endswith(".json")
    )


def load_bundled(name: str) -> Union[ToricSystem, GlobalInstance]:
    if not name.endswith(".json"):
        name += ".json"
    entry = resources.files("toricres.data").joinpath(name)
    if not entry.is_file():
        raise ParseError(f"no bundled instance {name!r}; available: {', '.join(bundled_names())}")
    return parse_text(entry.read_text())


# -- serialization ----------------------------------------------------------


def _dump_terms(poly, names: Mapping[Atom, str], order=None) -> List[Dict[str, Any]]:
    exponents = order if order is not None else poly.monomials()
    return [
        {"exponent": list(e), "coefficient": format_coefficient(poly.coefficient(e), names)}
        for e in exponents
    ]


def dump_instance(system: ToricSystem) -> Dict[str, Any]:
    """Document that parses back to an equal instance (flag index reset to 0)."""
    document: Dict[str, Any] = {
        "name": system.name,
        "rays": [list(r) for r in system.fan.rays],
        "max_cones": [list(c) for c in system.fan.max_cones],
        "degrees": [list(b) for b in system.degrees],
        "variables": list(system.variables),
        "polys": [_dump_terms(p, system.names, system.supports) for p in system.polys],
        "flag": system.flags[0].to_list(),
    }
    if system.description:
        document["description"] = system.description
    if len(system.flags) > 1:
        document["flags"] = [f.to_list() for f in system.flags[1:]]
    if system.h is not None:
        document["h"] = format_monomial(system.h, system.variables)
    if system.poly is not None:
        document["P"] = _dump_terms(system.poly, system.names)
    if system.reference == "matrix":
        document["resultant"] = "matrix"
    elif system.reference is not None:
        document["resultant"] = {
            "determinant": [[format_coefficient(v, system.names) for v in row] for row in system.reference]
        }
    return document


def dump_text(system: ToricSystem) -> str:
    return json.dumps(dump_instance(system), indent=2)
