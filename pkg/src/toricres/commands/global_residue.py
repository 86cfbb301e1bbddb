"""The ``global`` command: global residues in the torus through the toric path."""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from toricres.arith.polynomial import LaurentPolynomial
from toricres.arith.rational import format_rational
from toricres.commands.base import CommandOp, load_global
from toricres.ops.contexts import DryContext, WetContext
from toricres.residue.global_residue import (
    MacaulayRecipe,
    PowerRecipe,
    global_residue_direct,
    global_residue_toric,
    macaulay_global_residue,
)


def _dehomogenized_numerator(instance) -> Optional[LaurentPolynomial]:
    """``G(1, t)`` when the recipe's residue equals an affine global residue, else None."""
    system, recipe = instance.system, instance.recipe
    if isinstance(recipe, MacaulayRecipe):
        exponent = tuple(d - 1 for d in system.degrees())
    elif isinstance(recipe, PowerRecipe) and recipe.numerator[0] == recipe.f0_power - 1:
        exponent = tuple(recipe.numerator[1:])
    else:
        return None
    return LaurentPolynomial.monomial(exponent)


class GlobalResidueOp(CommandOp):
    command = "global"
    description = "Global residues of a Laurent system, checked against its roots when known"

    async def perform(self, dry: DryContext, wet: WetContext) -> Dict[str, Any]:
        instance = await load_global(dry, wet)
        system = instance.system
        variables = [f"t{i}" for i in range(1, system.n + 1)]
        value = macaulay_global_residue(system, instance.recipe)
        recipe_name = "macaulay" if isinstance(instance.recipe, MacaulayRecipe) else "power"
        lines = [f"{instance.name}: n = {system.n}, degrees {list(system.degrees())}"]
        lines.append(f"toric residue ({recipe_name} recipe) = {format_rational(value)}")
        fields: Dict[str, Any] = {"recipe": recipe_name, "residue": format_rational(value)}
        agreements: List[bool] = []
        numerator = _dehomogenized_numerator(instance)
        if instance.roots is not None and numerator is not None:
            direct = global_residue_direct(system, numerator, instance.roots, jacobian="affine")
            fields["direct"] = format_rational(direct)
            agreements.append(direct == value)
            lines.append(
                f"sum over {len(instance.roots)} roots of {numerator.format(variables)}/J = {format_rational(direct)}"
            )
        if instance.query is not None:
            toric = global_residue_toric(system, instance.query)
            fields["query"] = instance.query.format(variables)
            fields["query_residue"] = format_rational(toric)
            lines.append(f"global residue of {fields['query']} = {format_rational(toric)}")
            if instance.roots is not None:
                direct_query = global_residue_direct(system, instance.query, instance.roots, jacobian="torus")
                fields["query_direct"] = format_rational(direct_query)
                agreements.append(direct_query == toric)
                lines.append(f"sum over roots of {fields['query']}/J^T = {format_rational(direct_query)}")
        if agreements:
            fields["agree"] = all(agreements)
            lines.append("toric and direct values agree" if all(agreements) else "MISMATCH between toric and direct values")
        return self.report(instance.name, lines, **fields)
