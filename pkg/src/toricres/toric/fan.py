"""Complete fans and complete flags of cones."""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from toricres.arith.matrix import nullspace, rank, solve_rational
from toricres.errors import DimensionError, FanError, FlagError

_log = logging.getLogger(__name__)

Ray = Tuple[int, ...]
Cone = Tuple[int, ...]


def _dot(u: Sequence, v: Sequence) -> int:
    return sum(a * b for a, b in zip(u, v))


@lru_cache(maxsize=None)
def _cone_facets(rays: Tuple[Ray, ...], cone: Cone, dim: int) -> Tuple[FrozenSet[int], ...]:
    """Facets of a full-dimensional cone as sets of ray indices."""
    found: List[FrozenSet[int]] = []
    for subset in combinations(cone, dim - 1):
        vectors = [rays[i] for i in subset]
        if vectors and rank(vectors) != dim - 1:
            continue
        basis = nullspace(vectors, ncols=dim)
        if len(basis) != 1:
            continue
        normal = basis[0]
        values = [_dot(normal, rays[i]) for i in cone]
        if all(v >= 0 for v in values):
            pass
        elif all(v <= 0 for v in values):
            values = [-v for v in values]
        else:
            continue
        facet = frozenset(i for i, v in zip(cone, values) if v == 0)
        if facet not in found:
            found.append(facet)
    return tuple(found)


@dataclass(frozen=True)
class Fan:
    """A complete fan: primitive rays and full-dimensional maximal cones.

    Ray ``i`` corresponds to the Cox ring variable ``x_i``.
    """

    dim: int
    rays: Tuple[Ray, ...]
    max_cones: Tuple[Cone, ...]

    @classmethod
    def create(cls, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]]) -> "Fan":
        if not rays:
            raise FanError("a fan needs at least one ray")
        rays = tuple(tuple(int(v) for v in r) for r in rays)
        dim = len(rays[0])
        if dim == 0:
            raise DimensionError("rays must have at least one coordinate")
        for index, ray in enumerate(rays):
            if len(ray) != dim:
                raise DimensionError(f"ray {index} has {len(ray)} coordinates, expected {dim}")
            if not any(ray):
                raise FanError(f"ray {index} is zero")
            if math.gcd(*ray) != 1:
                raise FanError(f"ray {index} {list(ray)} is not primitive")
        if len(set(rays)) != len(rays):
            raise FanError("rays must be distinct")
        if not max_cones:
            raise FanError("a fan needs at least one maximal cone")
        cones = []
        for index, cone in enumerate(max_cones):
            cone = tuple(int(i) for i in cone)
            if not cone:
                raise FanError(f"maximal cone {index} is empty")
            if len(set(cone)) != len(cone):
                raise FanError(f"maximal cone {index} repeats a ray")
            if any(i < 0 or i >= len(rays) for i in cone):
                raise FanError(f"maximal cone {index} references an unknown ray")
            if rank([rays[i] for i in cone]) != dim:
                raise FanError(f"maximal cone {index} {list(cone)} is not {dim}-dimensional")
            cones.append(tuple(sorted(cone)))
        if len(set(cones)) != len(cones):
            raise FanError("maximal cones must be distinct")
        fan = cls(dim, rays, tuple(cones))
        fan._check_complete()
        return fan

    @classmethod
    def projective_space(cls, n: int) -> "Fan":
        """Fan of P^n: ray 0 is ``-(e_1 + ... + e_n)``, ray ``i`` is ``e_i``."""
        rays = [tuple([-1] * n)]
        rays += [tuple(int(i == j) for j in range(n)) for i in range(n)]
        return cls.create(rays, list(combinations(range(n + 1), n)))

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def facets(self, cone_index: int) -> Tuple[FrozenSet[int], ...]:
        return _cone_facets(self.rays, self.max_cones[cone_index], self.dim)

    def walls(self) -> List[Tuple[int, int, FrozenSet[int]]]:
        """Pairs of adjacent maximal cones with their shared facet."""
        owners: Dict[FrozenSet[int], List[int]] = defaultdict(list)
        for index in range(len(self.max_cones)):
            for facet in self.facets(index):
                owners[facet].append(index)
        return [(a, b, facet) for facet, (a, b) in owners.items()]

    def _check_complete(self) -> None:
        owners: Dict[FrozenSet[int], List[int]] = defaultdict(list)
        for index in range(len(self.max_cones)):
            facets = self.facets(index)
            if not facets:
                raise FanError(f"maximal cone {index} is not strongly convex")
            for facet in facets:
                owners[facet].append(index)
        for facet, cones in owners.items():
            if len(cones) != 2:
                raise FanError(
                    f"facet {sorted(facet)} belongs to {len(cones)} maximal cone(s); "
                    "fan is not complete"
                )
        _log.debug("fan with %d rays and %d maximal cones is complete", self.nrays, len(self.max_cones))

    def cone_index(self, rays: Sequence[int]) -> Optional[int]:
        key = tuple(sorted(rays))
        try:
            return self.max_cones.index(key)
        except ValueError:
            return None

    def to_dict(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
        }


def irrelevant_generators(fan: Fan) -> List[Tuple[int, ...]]:
    """One square-free monomial per maximal cone: the variables outside the cone."""
    return [
        tuple(0 if i in cone else 1 for i in range(fan.nrays)) for cone in fan.max_cones
    ]


@dataclass(frozen=True)
class Flag:
    """Complete flag of cones ``sigma_1 < ... < sigma_n`` as ray-index tuples."""

    cones: Tuple[Cone, ...]

    @classmethod
    def create(cls, fan: Fan, cones: Sequence[Sequence[int]]) -> "Flag":
        if len(cones) != fan.dim:
            raise FlagError(f"flag has {len(cones)} cones, expected {fan.dim}")
        normalized: List[Cone] = []
        for index, cone in enumerate(cones, start=1):
            cone = tuple(int(i) for i in cone)
            if any(i < 0 or i >= fan.nrays for i in cone):
                raise FlagError(f"flag cone {index} references an unknown ray")
            if len(set(cone)) != len(cone):
                raise FlagError(f"flag cone {index} repeats a ray")
            if rank([fan.rays[i] for i in cone]) != index:
                raise FlagError(f"flag cone {index} {list(cone)} does not have dimension {index}")
            normalized.append(cone)
        for index in range(1, len(normalized)):
            inner, outer = set(normalized[index - 1]), set(normalized[index])
            if not inner < outer:
                raise FlagError(f"flag cone {index} is not contained in flag cone {index + 1}")
            if not _is_facet_of(fan, normalized[index - 1], normalized[index]):
                raise FlagError(f"flag cone {index} is not a face of flag cone {index + 1}")
        if fan.cone_index(normalized[-1]) is None:
            raise FlagError(f"last flag cone {list(normalized[-1])} is not a maximal cone")
        return cls(tuple(normalized))

    def to_list(self) -> List[List[int]]:
        return [list(c) for c in self.cones]


def _is_facet_of(fan: Fan, inner: Cone, outer: Cone) -> bool:
    extra = [i for i in outer if i not in inner]
    first = extra[0]
    equations = [fan.rays[i] for i in inner] + [fan.rays[first]]
    rhs = [0] * len(inner) + [1]
    normal = solve_rational(equations, rhs)
    if normal is None:
        return False
    return all(_dot(normal, fan.rays[i]) > 0 for i in extra)


def flag_z_monomials(fan: Fan, flag: Flag) -> List[Tuple[int, ...]]:
    """Exponents of z_1..z_{n+1}: the rays entering at each step, then the rest."""
    z = []
    previous: set = set()
    for cone in flag.cones:
        entering = set(cone) - previous
        z.append(tuple(int(i in entering) for i in range(fan.nrays)))
        previous = set(cone)
    z.append(tuple(int(i not in previous) for i in range(fan.nrays)))
    return z
