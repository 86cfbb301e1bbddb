"""Command ops, one per command line subcommand."""

from typing import Dict, Type

from toricres.commands.base import CONFIG_KEY, INSTANCE_KEY, CommandOp, current_seed
from toricres.commands.global_residue import GlobalResidueOp
from toricres.commands.queries import BasisOp, DeltaOp, MatrixOp, ResidueOp, ResultantOp, SubresultantOp
from toricres.commands.verify import CHECKS, VerifyOp
from toricres.errors import ValidationError

COMMANDS: Dict[str, Type[CommandOp]] = {
    op.command: op
    for op in (DeltaOp, ResidueOp, ResultantOp, SubresultantOp, GlobalResidueOp, VerifyOp, MatrixOp, BasisOp)
}


def build_command(name: str) -> CommandOp:
    try:
        return COMMANDS[name]()
    except KeyError:
        raise ValidationError(f"unknown command {name!r}; choose from {', '.join(COMMANDS)}") from None


__all__ = [
    "CHECKS",
    "COMMANDS",
    "CONFIG_KEY",
    "INSTANCE_KEY",
    "BasisOp",
    "CommandOp",
    "DeltaOp",
    "GlobalResidueOp",
    "MatrixOp",
    "ResidueOp",
    "ResultantOp",
    "SubresultantOp",
    "VerifyOp",
    "build_command",
    "current_seed",
]
