"""Tests for commands/ — command ops run through the same path as the command line."""

import pytest

from toricres.cli import run_command
from toricres.commands import COMMANDS, CHECKS, build_command, current_seed
from toricres.commands.base import CONFIG_KEY
from toricres.commands.verify import CheckOp, SurjectivityCheck, VerifyOp
from toricres.config import EngineConfig
from toricres.errors import DegenerateSpecializationError, ValidationError
from toricres.instance import read_document
from toricres.ops.contexts import DryContext, WetContext
from toricres.specialization import derive_seed

P1_SPEC = {"a": 3, "b": 1, "c": 1, "d": 2}


def dry_for(name: str, **values) -> DryContext:
    return DryContext({"instance": read_document(f"{name}.json"), **values})


# TEST124: Every subcommand has a command op; unknown names are rejected
def test_124_build_command():
    assert sorted(COMMANDS) == ["basis", "delta", "global", "matrix", "residue", "resultant", "subres", "verify"]
    for name in COMMANDS:
        assert build_command(name).metadata().name == name
    with pytest.raises(ValidationError, match="unknown command"):
        build_command("nope")


# TEST125: Seeds default to 0 and are re-derived per trial and per attempt
def test_125_current_seed():
    assert current_seed(DryContext()) == 0
    assert current_seed(DryContext({"seed": 7})) == 7
    assert current_seed(DryContext({"seed": 7, "trial": 2})) == derive_seed(7, 2)
    assert current_seed(DryContext({"seed": 7, "trial": 2, "attempt": 1})) == derive_seed(derive_seed(7, 2), 1)


# TEST126: The residue of 1 for two linear forms is 1/(ad - bc)
async def test_126_residue_report():
    report = await run_command("residue", dry_for("p1-linear", spec=P1_SPEC), EngineConfig())
    assert report["command"] == "residue"
    assert report["instance"] == "p1-linear"
    assert report["residues"] == [{"query": "1", "value": "1/5"}]
    assert report["seed"] is None
    assert report["matrix"] == [1, 1]
    assert report["specialization"] == {"a": "3", "b": "1", "c": "1", "d": "2"}
    assert report["lines"][0] == "p1-linear (flag 0, seed None, minor 1x1 of 1x1)"
    assert report["lines"][1] == "residue(1) = 1/5"


# TEST127: Replaying a serialized dry context reproduces the report
async def test_127_replay_dry_context():
    dry = dry_for("p1xp1", seed=11, all=True)
    first = await run_command("residue", dry, EngineConfig())
    replayed = await run_command("residue", DryContext.from_json(dry.to_json()), EngineConfig())
    assert replayed == first
    assert len(first["residues"]) == 9


# TEST128: A vanishing resultant is a degenerate specialization
async def test_128_degenerate_residue():
    spec = {"a": 1, "b": 2, "c": 2, "d": 4}
    with pytest.raises(DegenerateSpecializationError):
        await run_command("residue", dry_for("p1-linear", spec=spec), EngineConfig())


# TEST129: Resultant reports carry ell and the observed constant
async def test_129_resultant_report():
    report = await run_command("resultant", dry_for("p1-linear", spec=P1_SPEC), EngineConfig())
    assert report["ell"] == 1
    assert report["resultant_power"] == "5"
    assert report["reference"] == "5"
    assert report["constant"] == "1"
    seeded = await run_command("resultant", dry_for("p1xp1", seed=3), EngineConfig())
    assert seeded["seed"] == 3
    assert seeded["constant"] in ("1", "-1")


# TEST130: Subresultant reports pair each monomial with its value and implied residue
async def test_130_subres_report():
    report = await run_command("subres", dry_for("p1-linear", spec=P1_SPEC), EngineConfig())
    assert report["resultant_power"] == "5"
    (entry,) = report["subresultants"]
    assert entry == {"h": "1", "value": "1", "nonvanishing": True, "residue": "1/5"}
    symbolic = await run_command(
        "subres", dry_for("p1-linear", spec=P1_SPEC, symbolic=True), EngineConfig()
    )
    assert symbolic["subresultants"][0]["symbolic"] == "1"
    with pytest.raises(ValidationError, match="critical degree"):
        await run_command("subres", dry_for("p1xp1", seed=1, h="x1"), EngineConfig())


# TEST131: Verification of two linear forms passes every check with a stable constant
async def test_131_verify_p1_linear():
    report = await run_command("verify", dry_for("p1-linear", seed=5, trials=2), EngineConfig())
    assert report["trials"] == 2
    assert report["failed"] == 0, report["failures"]
    assert report["passed"] > 0
    assert report["constant_stable"] is True
    assert [c["trial"] for c in report["observed_constants"]] == [0, 1]
    assert set(report["checks"]) == {cls.name for cls in CHECKS} | {"constant_stability", "sign_stability"}
    assert report["sign_stable"] is True


# TEST132: Concurrent trials give the same report as sequential ones
async def test_132_verify_concurrency():
    sequential = await run_command("verify", dry_for("p1-linear", seed=2, trials=3), EngineConfig())
    concurrent = await run_command(
        "verify", dry_for("p1-linear", seed=2, trials=3), EngineConfig(concurrency=3)
    )
    assert concurrent == sequential


# TEST133: A verify op can run a chosen subset of checks
async def test_133_verify_subset():
    checks = [cls for cls in CHECKS if cls.name in ("surjectivity", "delta_normalization")]
    dry = dry_for("p1xp1", seed=4, trials=1)
    report = await VerifyOp(checks).perform(dry, WetContext())
    assert set(report["checks"]) == {"surjectivity", "delta_normalization"}
    assert report["failed"] == 0
    assert report["constant_stable"] is None


# TEST134: The global command checks the toric path against the roots
async def test_134_global_report():
    report = await run_command("global", dry_for("global-quadrics"), EngineConfig())
    assert report["recipe"] == "macaulay"
    assert report["residue"] == "1"
    assert report["direct"] == "1"
    assert report["query_residue"] == "3"
    assert report["query_direct"] == "3"
    assert report["agree"] is True


# TEST135: Toric commands refuse global documents and the other way round
async def test_135_wrong_document_kind():
    with pytest.raises(ValidationError, match="global command"):
        await run_command("residue", dry_for("global-quadrics"), EngineConfig())
    with pytest.raises(ValidationError, match="kind"):
        await run_command("global", dry_for("p1-linear"), EngineConfig())


# TEST136: Basis, matrix and delta reports
async def test_136_basis_matrix_delta_reports():
    basis = await run_command("basis", dry_for("p1xp1"), EngineConfig())
    assert len(basis["monomials"]) == 9
    assert basis["lines"][0].endswith("9 monomial(s)")
    square = await run_command("basis", dry_for("p1xp1", degree=[0, 1, 1, 0]), EngineConfig())
    assert square["degree"] == [0, 1, 1, 0]
    assert len(square["monomials"]) == 4
    matrix = await run_command("matrix", dry_for("p1xp1"), EngineConfig())
    assert matrix["shape"] == [9, 9]
    assert len(matrix["rows"]) == 9
    assert len(matrix["columns"]) == 9
    delta = await run_command("delta", dry_for("p1-linear", flag=1), EngineConfig())
    assert delta["flag"] == 1
    assert delta["terms"] == ["-[01] 1"]
    assert delta["lines"][0] == "Delta of p1-linear (flag 1): 1 term(s)"


class AlternatingSignCheck(CheckOp):
    name = "alternating_sign"

    async def run(self, system, spec, minor, outcome, dry, wet):
        outcome.expect(True, "")
        outcome.extra["sign"] = -1 if outcome.trial % 2 else 1


class CrashingCheck(CheckOp):
    name = "crashing"

    async def run(self, system, spec, minor, outcome, dry, wet):
        raise RuntimeError("no residue today")


# TEST157: Verification passes on P1 x P1, the simplex and the octahedron
@pytest.mark.parametrize(
    "name, trials, constant_stable",
    [("p1xp1", 3, True), ("simplex-ell3", 2, True), ("octahedron", 1, None)],
)
async def test_157_verify_bundled_instances(name, trials, constant_stable):
    report = await run_command("verify", dry_for(name, seed=1, trials=trials), EngineConfig(retry=2))
    assert report["failed"] == 0, report["failures"]
    assert report["constant_stable"] is constant_stable
    assert report["sign_stable"] is True
    assert report["checks"]["scaling"]["passed"] > 0


# TEST158: A sign that flips between trials fails the sign stability check
async def test_158_verify_sign_stability_across_trials():
    report = await VerifyOp([AlternatingSignCheck]).perform(dry_for("p1-linear", seed=3, trials=3), WetContext())
    assert report["signs"] == {"alternating_sign": [1, -1, 1]}
    assert report["sign_stable"] is False
    assert report["checks"]["sign_stability"] == {"passed": 0, "failed": 1}
    assert report["failed"] == 1
    assert "alternating_sign: sign changes between specializations" in report["failures"]


# TEST159: A crashing check is reported the same way by sequential and concurrent trials
async def test_159_verify_reports_crashes_in_both_modes():
    reports = []
    for concurrency in (1, 2):
        wet = WetContext().with_ref(CONFIG_KEY, EngineConfig(concurrency=concurrency))
        dry = dry_for("p1-linear", seed=3, trials=2)
        reports.append(await VerifyOp([SurjectivityCheck, CrashingCheck]).perform(dry, wet))
    sequential, concurrent = reports
    assert concurrent == sequential
    assert sequential["checks"]["crashing"] == {"passed": 0, "failed": 2}
    assert sequential["checks"]["surjectivity"]["failed"] == 0
    assert sequential["failures"] == [
        "trial 0: crashing crashed",
        "trial 1: crashing crashed",
        "crashing: no residue today",
        "crashing: no residue today",
    ]
