"""Rational specializations of the coefficient atoms."""

from __future__ import annotations

import json
import logging
import random
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, Mapping, Optional, Union

from toricres.arith.coeffpoly import Atom
from toricres.arith.rational import format_rational, parse_rational, random_rational
from toricres.errors import ParseError, ValidationError

_log = logging.getLogger(__name__)

Specialization = Dict[Atom, Fraction]

_SEED_STRIDE = 1_000_003


def derive_seed(seed: int, trial: int) -> int:
    """Seed of trial ``trial`` in a run started from ``seed``."""
    return seed * _SEED_STRIDE + trial


def random_specialization(
    atoms: Iterable[Atom],
    seed: int,
    numerator_bound: int = 10**4,
    denominator_bound: int = 100,
) -> Specialization:
    """One draw per atom in sorted atom order, so a seed fixes the whole point."""
    rng = random.Random(seed)
    spec = {
        atom: random_rational(rng, numerator_bound, denominator_bound)
        for atom in sorted(set(atoms))
    }
    _log.debug("drew %d atom values from seed %d", len(spec), seed)
    return spec


def specialization_from_names(
    values: Mapping[str, Union[str, int]],
    names: Mapping[Atom, str],
    atoms: Optional[Iterable[Atom]] = None,
) -> Specialization:
    """Map ``{"a0": "3/2", ...}`` onto atoms through the instance's coefficient names."""
    by_name = {name: atom for atom, name in names.items()}
    by_name.update({atom.default_name(): atom for atom in (atoms or ())})
    spec: Specialization = {}
    for name, text in values.items():
        atom = by_name.get(name)
        if atom is None:
            raise ValidationError(f"specialization names unknown coefficient {name!r}")
        spec[atom] = parse_rational(text)
    if atoms is not None:
        missing = [a for a in atoms if a not in spec]
        if missing:
            label = names.get(missing[0]) or missing[0].default_name()
            raise ValidationError(
                f"specialization is missing {len(missing)} coefficient(s), first {label!r}"
            )
    return spec


def read_specialization(path: Union[str, Path]) -> Dict[str, Union[str, int]]:
    """Raw ``{name: "p/q"}`` mapping of a specialization file."""
    try:
        text = Path(path).read_text()
    except OSError as error:
        raise ParseError(f"cannot read specialization file {str(path)!r}: {error.strerror}") from None
    try:
        values = json.loads(text)
    except json.JSONDecodeError as error:
        raise ParseError(error.msg, error.lineno, error.colno) from None
    if not isinstance(values, dict):
        raise ParseError("a specialization file holds one JSON object of name -> \"p/q\"")
    return values


def load_specialization(
    path: Union[str, Path],
    names: Mapping[Atom, str],
    atoms: Optional[Iterable[Atom]] = None,
) -> Specialization:
    return specialization_from_names(read_specialization(path), names, atoms)


def specialization_to_json(spec: Mapping[Atom, Fraction], names: Mapping[Atom, str]) -> Dict[str, str]:
    return {
        names.get(atom) or atom.default_name(): format_rational(value)
        for atom, value in sorted(spec.items())
    }
