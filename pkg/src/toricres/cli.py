"""Command line front end.

Reports go to stdout, logs to stderr. Exit codes: 0 success, 1 validation error,
2 degenerate specialization, 3 internal failure or a failed verification.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from toricres import __version__
from toricres.commands import COMMANDS, CONFIG_KEY, INSTANCE_KEY, build_command
from toricres.config import EngineConfig
from toricres.errors import ToricError, ValidationError
from toricres.instance import read_document
from toricres.ops.contexts import DryContext, WetContext
from toricres.ops.runner import perform
from toricres.ops.wrappers import RetryWrapper, TimeBoundWrapper, ValidatingWrapper
from toricres.specialization import read_specialization

_log = logging.getLogger(__name__)

EXIT_VERIFY_FAILED = 3

_HELP = {
    "delta": "print Delta for the selected flag",
    "residue": "normalized toric residue of --h, --poly or every basis monomial",
    "resultant": "resultant power and observed constant",
    "subres": "h-subresultants and their nonvanishing test",
    "global": "global residues of a Laurent system",
    "verify": "run the invariant suites over seeded trials",
    "matrix": "print the Macaulay-style matrix",
    "basis": "print the monomial basis of a graded piece",
}


def _degree(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", required=True, help="instance JSON file or bundled instance name")
    common.add_argument("--spec", metavar="FILE", help="specialization file {name: \"p/q\"}")
    common.add_argument("--random-seed", type=int, metavar="N", help="seed of the random specialization")
    common.add_argument("--flag", type=int, metavar="INDEX", help="flag to use (0 is the instance's flag)")
    common.add_argument("--retry", type=int, metavar="N", help="re-draw a degenerate specialization up to N times")
    common.add_argument("--timeout-ms", type=int, metavar="MS", help="time budget of the command")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs")

    parser = argparse.ArgumentParser(prog="toricres", description="Exact toric residues and sparse resultants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        sub = commands.add_parser(name, parents=[common], help=_HELP[name])
        if name in ("residue", "subres"):
            sub.add_argument("--h", help="monomial of critical degree, e.g. \"x3^2*x4^2\"")
            sub.add_argument("--all", action="store_true", help="every monomial of the critical degree")
        if name == "residue":
            sub.add_argument("--poly", help="polynomial of critical degree")
        if name == "subres":
            sub.add_argument("--symbolic", action="store_true", help="also compute the subresultant symbolically")
        if name == "verify":
            sub.add_argument("--trials", type=int, default=1, metavar="N")
            sub.add_argument("--max-h", type=int, metavar="N", help="monomials visited by the cross-path checks")
            sub.add_argument("--concurrency", type=int, metavar="N", help="trials run concurrently")
        if name == "basis":
            sub.add_argument("--degree", type=_degree, help="divisor coefficients, e.g. 0,1,1,0")
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def build_dry_context(args: argparse.Namespace) -> DryContext:
    dry = DryContext().with_value(INSTANCE_KEY, read_document(args.instance))
    if args.spec is not None:
        dry.insert("spec", read_specialization(args.spec))
    optional = {
        "seed": args.random_seed,
        "flag": args.flag,
        "h": getattr(args, "h", None),
        "poly": getattr(args, "poly", None),
        "all": getattr(args, "all", None) or None,
        "symbolic": getattr(args, "symbolic", None) or None,
        "trials": getattr(args, "trials", None),
        "degree": getattr(args, "degree", None),
    }
    for key, value in optional.items():
        if value is not None:
            dry.insert(key, value)
    if args.spec is None and args.random_seed is None and args.command != "global":
        _log.info("no --spec or --random-seed given; using seed 0")
    return dry


def build_op(command: str, config: EngineConfig):
    op = ValidatingWrapper.input_only(build_command(command))
    if config.timeout_ms is not None:
        if config.timeout_ms <= 0:
            raise ValidationError("--timeout-ms must be positive")
        op = TimeBoundWrapper(op, config.timeout_ms, name=command)
    # verify re-draws per trial itself
    if config.retry and command != "verify":
        op = RetryWrapper(op, config.retry)
    return op


async def run_command(command: str, dry: DryContext, config: EngineConfig) -> Dict[str, Any]:
    wet = WetContext().with_ref(CONFIG_KEY, config)
    return await perform(build_op(command, config), dry, wet)


def render(report: Dict[str, Any], as_json: bool) -> str:
    if as_json:
        return json.dumps({k: v for k, v in report.items() if k != "lines"}, indent=2)
    return "\n".join(report["lines"])


def exit_status(report: Dict[str, Any]) -> int:
    if report.get("failed") or report.get("agree") is False:
        return EXIT_VERIFY_FAILED
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = EngineConfig.from_args(args)
        if config.retry < 0:
            raise ValidationError("--retry must not be negative")
        dry = build_dry_context(args)
        report = asyncio.run(run_command(args.command, dry, config))
    except ToricError as error:
        print(str(error), file=sys.stderr)
        return error.exit_code
    print(render(report, args.json))
    return exit_status(report)
