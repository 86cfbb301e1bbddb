"""Single-shot commands: delta, residue, resultant, subres, matrix and basis."""

from __future__ import annotations

import logging
from typing import Any, Dict, List

from toricres.arith.polynomial import format_monomial
from toricres.arith.rational import format_rational
from toricres.commands.base import (
    CommandOp,
    config_of,
    load_system,
    minor_for,
    query_monomials,
    query_polynomial,
    require_nonzero,
    resultant_for,
    specialization_for,
    specialization_json,
    subresultant_for,
)
from toricres.errors import ValidationError
from toricres.ops.contexts import DryContext, WetContext
from toricres.residue.complexes import observed_constant, subresultant_nonvanishing
from toricres.residue.macaulay import residue_monomial, residue_poly
from toricres.residue.symbolic import factor_evidence, symbolic_subresultant
from toricres.toric.polytope import monomial_basis

_log = logging.getLogger(__name__)


class DeltaOp(CommandOp):
    command = "delta"
    description = "Delta for the selected flag, in bracket form when possible"

    async def perform(self, dry: DryContext, wet: WetContext) -> Dict[str, Any]:
        system = await load_system(dry, wet)
        terms = system.format_delta()
        lines = [f"Delta of {system.name} (flag {system.flag_index}): {len(terms)} term(s)"] + terms
        return self.report(
            system.name,
            lines,
            flag=system.flag_index,
            critical_degree=system.rho.format(),
            terms=terms,
        )


class ResidueOp(CommandOp):
    command = "residue"
    description = "Normalized toric residue of monomials or a polynomial of critical degree"

    async def perform(self, dry: DryContext, wet: WetContext) -> Dict[str, Any]:
        system = await load_system(dry, wet)
        monomials = query_monomials(dry, system)
        poly = None if monomials else query_polynomial(dry, system)
        if not monomials and poly is None:
            raise ValidationError("nothing to evaluate: give --h, --poly or --all, or set h/P in the instance")
        spec, seed = specialization_for(dry, wet, system)
        minor = await minor_for(system, spec, dry, wet)
        _log.debug("residue queries: %d monomial(s), polynomial %s", len(monomials), poly is not None)
        results: List[Dict[str, str]] = []
        if monomials:
            for h in monomials:
                value = residue_monomial(minor, h)
                results.append({"query": system.monomial_label(h), "value": format_rational(value)})
        else:
            value = residue_poly(minor, poly)
            results.append({"query": poly.format(system.variables, system.names), "value": format_rational(value)})
        lines = [
            f"{system.name} (flag {system.flag_index}, seed {seed}, minor {minor.size}x{minor.size} "
            f"of {system.matrix.nrows}x{system.matrix.ncols})"
        ]
        lines.extend(f"residue({r['query']}) = {r['value']}" for r in results)
        return self.report(
            system.name,
            lines,
            flag=system.flag_index,
            seed=seed,
            specialization=specialization_json(spec, system),
            matrix=[system.matrix.nrows, system.matrix.ncols],
            residues=results,
        )


class ResultantOp(CommandOp):
    command = "resultant"
    description = "c * res^ell as the determinant of the resultant complex"

    async def perform(self, dry: DryContext, wet: WetContext) -> Dict[str, Any]:
        system = await load_system(dry, wet)
        spec, seed = specialization_for(dry, wet, system)
        value = await resultant_for(system, spec, dry, wet)
        ell = system.ell
        fields: Dict[str, Any] = {"seed": seed, "ell": ell, "resultant_power": format_rational(value)}
        lines = [
            f"{system.name} (seed {seed}): ell = {ell}",
            f"resultant power = {format_rational(value)}",
        ]
        reference = system.reference_resultant(spec)
        if reference is not None:
            constant = observed_constant(value, require_nonzero(reference, "reference resultant"), ell)
            fields.update(reference=format_rational(reference), constant=format_rational(constant))
            lines.append(f"reference resultant = {format_rational(reference)}")
            lines.append(f"observed constant c = {format_rational(constant)}")
        return self.report(
            system.name, lines, specialization=specialization_json(spec, system), **fields
        )


class SubresultantOp(CommandOp):
    command = "subres"
    description = "h-subresultants, their nonvanishing test and the residue they imply"

    async def perform(self, dry: DryContext, wet: WetContext) -> Dict[str, Any]:
        system = await load_system(dry, wet)
        monomials = query_monomials(dry, system)
        if not monomials:
            raise ValidationError("subres needs a monomial: give --h or --all, or set h in the instance")
        spec, seed = specialization_for(dry, wet, system)
        resultant = await resultant_for(system, spec, dry, wet)
        config = config_of(wet)
        lines = [f"{system.name} (seed {seed}): resultant power = {format_rational(resultant)}"]
        results = []
        for h in monomials:
            value = await subresultant_for(system, h, spec, dry, wet)
            nonvanishing = subresultant_nonvanishing(system.matrix, h, spec)
            entry: Dict[str, Any] = {
                "h": system.monomial_label(h),
                "value": format_rational(value),
                "nonvanishing": nonvanishing,
            }
            if resultant:
                entry["residue"] = format_rational(value / resultant)
            lines.append(f"S[{entry['h']}] = {entry['value']} (rank test: {'nonzero' if nonvanishing else 'zero'})")
            if dry.get("symbolic", bool):
                expression = symbolic_subresultant(
                    system.matrix, h, config.symbolic_validator_max_cols, system.names
                )
                entry["symbolic"] = str(expression)
                entry["factors"] = [[text, power] for text, power in factor_evidence(expression)]
                lines.append(f"  symbolic: {expression}")
            results.append(entry)
        return self.report(
            system.name,
            lines,
            seed=seed,
            resultant_power=format_rational(resultant),
            specialization=specialization_json(spec, system),
            subresultants=results,
        )


class MatrixOp(CommandOp):
    command = "matrix"
    description = "The Macaulay-style matrix with row and column labels"

    async def perform(self, dry: DryContext, wet: WetContext) -> Dict[str, Any]:
        system = await load_system(dry, wet)
        matrix = system.matrix
        lines = [f"{system.name}: {matrix.nrows}x{matrix.ncols} matrix (flag {system.flag_index})"]
        lines.extend(matrix.format(system.variables, system.names))
        return self.report(
            system.name,
            lines,
            shape=[matrix.nrows, matrix.ncols],
            rows=[tag.label(system.variables) for tag in matrix.row_tags],
            columns=[system.monomial_label(a) for a in matrix.columns],
        )


class BasisOp(CommandOp):
    command = "basis"
    description = "Monomial basis of a graded piece (the critical degree by default)"

    async def perform(self, dry: DryContext, wet: WetContext) -> Dict[str, Any]:
        system = await load_system(dry, wet)
        degree = dry.get("degree", list)
        b = tuple(degree) if degree is not None else system.rho.representative
        basis = monomial_basis(system.fan, b)
        monomials = [format_monomial(a, system.variables) for a in basis]
        lines = [f"degree {basis.degree.format()}: {len(monomials)} monomial(s)"] + monomials
        return self.report(system.name, lines, degree=list(b), monomials=monomials)
