"""The ``verify`` command: invariant suites run over seeded trials.

Each trial draws a specialization (re-drawn on degeneration when retries are
configured), then runs every check op in a batch that keeps going past failures.
A check never raises for a failed property; it counts passes and failures.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from toricres.arith.polynomial import CoxPolynomial
from toricres.arith.rational import format_rational, random_rational
from toricres.commands.base import (
    CommandOp,
    config_of,
    load_system,
    minor_for,
    require_nonzero,
    resultant_for,
    specialization_for,
    subresultant_for,
)
from toricres.errors import ToricError
from toricres.ops.batch import FAILURES_KEY, BatchOp
from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.loop import LoopOp
from toricres.ops.metadata import OpMetadata
from toricres.ops.op import Op
from toricres.ops.wrappers.retry_wrapper import RetryWrapper
from toricres.residue.complexes import observed_constant, subresultant_nonvanishing
from toricres.residue.macaulay import (
    SelectedMinor,
    ideal_element,
    residue_monomial,
    residue_poly,
    surjectivity_ranks,
)
from toricres.specialization import Specialization, random_specialization, specialization_from_names
from toricres.system import ToricSystem

_log = logging.getLogger(__name__)

TRIAL_SEED_KEY = "trial_seed"
SCALING_FACTORS = (2, 3, -5)
LINEARITY_ROUNDS = 5
DETERMINANT_PATH_MAX_COLS = 30


@dataclass
class Outcome:
    check: str
    trial: int
    seed: Optional[int]
    passed: int = 0
    failed: int = 0
    notes: List[str] = field(default_factory=list)
    extra: Dict[str, Any] = field(default_factory=dict)

    def expect(self, condition: bool, note: str) -> None:
        if condition:
            self.passed += 1
        else:
            self.failed += 1
            self.notes.append(note)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "trial": self.trial,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "notes": self.notes,
            **self.extra,
        }


def trial_specialization(dry: DryContext, wet: WetContext, system: ToricSystem) -> Specialization:
    values = dry.get("spec", dict)
    if values is not None:
        return specialization_from_names(values, system.names, system.atoms)
    config = config_of(wet)
    seed = dry.get_required(TRIAL_SEED_KEY, int)
    return random_specialization(system.atoms, seed, config.numerator_bound, config.denominator_bound)


def sampled_monomials(system: ToricSystem, limit: int) -> List[Tuple[int, ...]]:
    """The first ``limit`` basis monomials, plus the instance's own ``h``."""
    chosen = list(system.critical_basis)[:limit]
    if system.h is not None and system.h not in chosen:
        chosen.append(system.h)
    return chosen


class PrepareTrialOp(Op[Dict[str, Any]]):
    """Draws the trial's specialization and selects its minor; degenerations raise here."""

    async def perform(self, dry: DryContext, wet: WetContext) -> Dict[str, Any]:
        system = await load_system(dry, wet)
        spec, seed = specialization_for(dry, wet, system)
        await minor_for(system, spec, dry, wet)
        dry.insert(TRIAL_SEED_KEY, seed)
        return {"trial": dry.get("trial", int) or 0, TRIAL_SEED_KEY: seed}

    def metadata(self) -> OpMetadata:
        return (
            OpMetadata.builder("prepare_trial")
            .output_schema({"type": "object", "properties": {"trial": {}, TRIAL_SEED_KEY: {}}})
            .build()
        )


class CheckOp(Op[Dict[str, Any]]):
    name = "check"

    async def perform(self, dry: DryContext, wet: WetContext) -> Dict[str, Any]:
        system = await load_system(dry, wet)
        outcome = Outcome(self.name, dry.get("trial", int) or 0, dry.get(TRIAL_SEED_KEY, int))
        try:
            spec = trial_specialization(dry, wet, system)
            minor = await minor_for(system, spec, dry, wet)
            await self.run(system, spec, minor, outcome, dry, wet)
        except ToricError as error:
            outcome.expect(False, str(error))
        _log.debug("%s trial %d: %d passed, %d failed", self.name, outcome.trial, outcome.passed, outcome.failed)
        return outcome.to_dict()

    async def run(
        self,
        system: ToricSystem,
        spec: Specialization,
        minor: SelectedMinor,
        outcome: Outcome,
        dry: DryContext,
        wet: WetContext,
    ) -> None:
        raise NotImplementedError

    def metadata(self) -> OpMetadata:
        return OpMetadata.builder(self.name).input_schema({"type": "object", "required": [TRIAL_SEED_KEY]}).build()


class SurjectivityCheck(CheckOp):
    name = "surjectivity"

    async def run(self, system, spec, minor, outcome, dry, wet):
        full, without = surjectivity_ranks(system.matrix, spec)
        ncols = system.matrix.ncols
        outcome.expect(full == ncols, f"rank with Delta row is {full}, expected {ncols}")
        outcome.expect(without == ncols - 1, f"rank of the F-rows is {without}, expected {ncols - 1}")


class DeltaNormalizationCheck(CheckOp):
    name = "delta_normalization"

    async def run(self, system, spec, minor, outcome, dry, wet):
        value = residue_poly(minor, system.delta)
        outcome.expect(value == 1, f"residue of Delta is {format_rational(value)}")


class IdealVanishingCheck(CheckOp):
    name = "ideal_vanishing"

    async def run(self, system, spec, minor, outcome, dry, wet):
        matrix = system.matrix
        for row in matrix.f_rows():
            value = residue_poly(minor, ideal_element(matrix, row))
            outcome.expect(
                value == 0,
                f"residue of {matrix.row_tags[row].label(system.variables)} is {format_rational(value)}",
            )


def _random_critical(system: ToricSystem, rng: random.Random) -> CoxPolynomial:
    return CoxPolynomial(
        system.fan.nrays, {a: random_rational(rng, 100, 10) for a in system.critical_basis}
    )


class LinearityCheck(CheckOp):
    """Linearity of the residue, and agreement of the functional and determinant paths."""

    name = "linearity"

    async def run(self, system, spec, minor, outcome, dry, wet):
        rng = random.Random(outcome.seed or 0)
        for _ in range(LINEARITY_ROUNDS):
            p, q = _random_critical(system, rng), _random_critical(system, rng)
            c = random_rational(rng, 100, 10)
            left = residue_poly(minor, p + q.scale(c))
            right = residue_poly(minor, p) + c * residue_poly(minor, q)
            outcome.expect(left == right, f"res(P + cQ) = {format_rational(left)} != {format_rational(right)}")
        if system.matrix.ncols <= DETERMINANT_PATH_MAX_COLS:
            p = _random_critical(system, rng)
            functional = residue_poly(minor, p)
            quotient = residue_poly(minor, p, method="determinant")
            outcome.expect(
                functional == quotient,
                f"functional {format_rational(functional)} != determinant quotient {format_rational(quotient)}",
            )


class MinorChoiceCheck(CheckOp):
    name = "minor_choice"

    async def run(self, system, spec, minor, outcome, dry, wet):
        preference = tuple(reversed(system.matrix.f_rows()))
        other = await minor_for(system, spec, dry, wet, preference=preference)
        for h, first, second in zip(system.critical_basis, minor.functional, other.functional):
            outcome.expect(
                first == second,
                f"residue of {system.monomial_label(h)} differs between minors: "
                f"{format_rational(first)} vs {format_rational(second)}",
            )


def _uniform_sign(first: Sequence[Fraction], second: Sequence[Fraction]) -> int:
    for a, b in zip(first, second):
        if a and b:
            return 1 if a == b else -1
    return 1


class FlagIndependenceCheck(CheckOp):
    name = "flag_independence"

    async def run(self, system, spec, minor, outcome, dry, wet):
        signs = {}
        for index in range(len(system.flags)):
            if index == system.flag_index:
                continue
            other_system = await load_system(dry, wet, flag=index)
            other = await minor_for(other_system, spec, dry, wet)
            sign = _uniform_sign(minor.functional, other.functional)
            signs[str(index)] = sign
            for h, first, second in zip(system.critical_basis, minor.functional, other.functional):
                outcome.expect(
                    second == sign * first,
                    f"flag {index}: residue of {system.monomial_label(h)} is {format_rational(second)}, "
                    f"expected {format_rational(sign * first)}",
                )
        outcome.extra["signs"] = signs


class ScalingCheck(CheckOp):
    """residue(h) of the system with F_i replaced by lambda F_i is residue(h) / lambda."""

    name = "scaling"

    async def run(self, system, spec, minor, outcome, dry, wet):
        basis = system.critical_basis
        column = next((c for c, w in enumerate(minor.functional) if w), None)
        if column is None:
            outcome.expect(False, "every basis monomial has residue 0")
            return
        h, base = basis[column], minor.functional[column]
        for factor in SCALING_FACTORS:
            for eq in range(len(system.polys)):
                scaled = system.scaled(eq, factor).minor(spec)
                value = residue_monomial(scaled, h)
                outcome.expect(
                    value == base / factor,
                    f"scaling F_{eq} by {factor} gives {format_rational(value)}, "
                    f"expected {format_rational(base / factor)}",
                )


class CrossPathCheck(CheckOp):
    """Residue from the selected minor against subresultant / resultant power."""

    name = "cross_path"

    async def run(self, system, spec, minor, outcome, dry, wet):
        resultant = require_nonzero(await resultant_for(system, spec, dry, wet), "resultant power")
        pairs = []
        for h in sampled_monomials(system, config_of(wet).cross_check_limit):
            direct = minor.functional[system.critical_basis.position(h)]
            quotient = await subresultant_for(system, h, spec, dry, wet) / resultant
            pairs.append((h, direct, quotient))
        sign = _uniform_sign([p[1] for p in pairs], [p[2] for p in pairs])
        for h, direct, quotient in pairs:
            outcome.expect(
                quotient == sign * direct,
                f"h = {system.monomial_label(h)}: residue {format_rational(direct)}, "
                f"subresultant quotient {format_rational(quotient)}",
            )
        outcome.extra["sign"] = sign


class NonvanishingCheck(CheckOp):
    name = "nonvanishing"

    async def run(self, system, spec, minor, outcome, dry, wet):
        for h in sampled_monomials(system, config_of(wet).cross_check_limit):
            value = await subresultant_for(system, h, spec, dry, wet)
            full_rank = subresultant_nonvanishing(system.matrix, h, spec)
            outcome.expect(
                full_rank == bool(value),
                f"h = {system.monomial_label(h)}: rank test says {'nonzero' if full_rank else 'zero'}, "
                f"subresultant is {format_rational(value)}",
            )


class ObservedConstantCheck(CheckOp):
    """c = resultant power / reference^ell, reported per trial."""

    name = "observed_constant"

    async def run(self, system, spec, minor, outcome, dry, wet):
        reference = system.reference_resultant(spec)
        if reference is None:
            return
        resultant = await resultant_for(system, spec, dry, wet)
        constant = observed_constant(resultant, reference, system.ell)
        outcome.extra["constant"] = format_rational(constant)
        outcome.expect(constant != 0, "observed constant is 0")


CHECKS = (
    SurjectivityCheck,
    DeltaNormalizationCheck,
    IdealVanishingCheck,
    LinearityCheck,
    MinorChoiceCheck,
    FlagIndependenceCheck,
    ScalingCheck,
    CrossPathCheck,
    NonvanishingCheck,
    ObservedConstantCheck,
)


def trial_op(retries: int, checks: Sequence[CheckOp]) -> BatchOp:
    return BatchOp(
        [RetryWrapper(PrepareTrialOp(), retries), BatchOp(list(checks), continue_on_error=True, name="checks")],
        name="trial",
    )


class VerifyOp(CommandOp):
    command = "verify"
    description = "Invariant suites over seeded trials with pass/fail counts"

    def __init__(self, checks: Optional[Sequence[type]] = None) -> None:
        self._checks = tuple(checks or CHECKS)

    async def perform(self, dry: DryContext, wet: WetContext) -> Dict[str, Any]:
        system = await load_system(dry, wet)
        config = config_of(wet)
        trials = dry.get("trials", int) or 1
        checks = [cls() for cls in self._checks]
        dry.insert("trial", 0)
        loop = LoopOp(
            "trial", trials, trial_op(config.retry, checks), config.concurrency, collect=(FAILURES_KEY,)
        )
        results = await loop.perform(dry, wet)

        totals = {check.name: {"passed": 0, "failed": 0} for check in checks}
        failures: List[str] = []
        constants: List[Dict[str, Any]] = []
        signs: Dict[str, List[int]] = {}
        for trial, (prepared, outcomes) in enumerate(results):
            for check, outcome in zip(checks, outcomes):
                if outcome is None:
                    totals[check.name]["failed"] += 1
                    failures.append(f"trial {trial}: {check.name} crashed")
                    continue
                totals[check.name]["passed"] += outcome["passed"]
                totals[check.name]["failed"] += outcome["failed"]
                failures.extend(f"trial {trial}: {check.name}: {note}" for note in outcome["notes"])
                if "constant" in outcome:
                    constants.append({"trial": trial, "seed": prepared[TRIAL_SEED_KEY], "constant": outcome["constant"]})
                if "sign" in outcome:
                    signs.setdefault(check.name, []).append(outcome["sign"])
                for index, sign in outcome.get("signs", {}).items():
                    signs.setdefault(f"{check.name} (flag {index})", []).append(sign)
        failures.extend(f"{f['op']}: {f['error']}" for f in dry.get(FAILURES_KEY, list) or [])

        stable = None
        if constants:
            stable = len({c["constant"] for c in constants}) == 1
            totals["constant_stability"] = {"passed": int(stable), "failed": int(not stable)}
            if not stable:
                failures.append("observed constant changes between specializations")
        sign_stable = None
        if signs:
            unstable = [name for name, values in signs.items() if len(set(values)) > 1]
            sign_stable = not unstable
            totals["sign_stability"] = {"passed": len(signs) - len(unstable), "failed": len(unstable)}
            failures.extend(f"{name}: sign changes between specializations" for name in unstable)
        passed = sum(t["passed"] for t in totals.values())
        failed = sum(t["failed"] for t in totals.values())

        lines = [f"verify {system.name}: {trials} trial(s), flag {system.flag_index}"]
        lines.extend(f"  {name}: {t['passed']} passed, {t['failed']} failed" for name, t in totals.items())
        for entry in constants:
            lines.append(f"  trial {entry['trial']} (seed {entry['seed']}): c = {entry['constant']}")
        lines.extend(f"  FAIL {note}" for note in failures)
        lines.append(f"{passed} passed, {failed} failed")
        _log.info("verify %s: %d passed, %d failed", system.name, passed, failed)
        return self.report(
            system.name,
            lines,
            trials=trials,
            checks=totals,
            passed=passed,
            failed=failed,
            observed_constants=constants,
            constant_stable=stable,
            signs=signs,
            sign_stable=sign_stable,
            failures=failures,
        )
