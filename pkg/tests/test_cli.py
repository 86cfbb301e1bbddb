"""Tests for cli.py — argument parsing, rendering and exit codes."""

import json

import pytest

from toricres.cli import build_dry_context, build_op, build_parser, exit_status, main, render
from toricres.config import EngineConfig
from toricres.errors import ValidationError
from toricres.ops.wrappers import RetryWrapper, TimeBoundWrapper, ValidatingWrapper


def write_spec(tmp_path, values, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(values))
    return str(path)


# TEST137: A residue with a specialization file prints the value and exits 0
def test_137_residue_with_spec_file(tmp_path, capsys):
    spec = write_spec(tmp_path, {"a": "3", "b": "1", "c": "1", "d": "2"})
    assert main(["residue", "--instance", "p1-linear", "--spec", spec]) == 0
    out = capsys.readouterr().out
    assert "residue(1) = 1/5" in out


# TEST138: Degenerate specializations exit 2, validation errors exit 1
def test_138_error_exit_codes(tmp_path, capsys):
    degenerate = write_spec(tmp_path, {"a": "1", "b": "1", "c": "1", "d": "1"})
    assert main(["residue", "--instance", "p1-linear", "--spec", degenerate]) == 2
    assert "Degenerate specialization" in capsys.readouterr().err
    assert main(["residue", "--instance", str(tmp_path / "absent.json")]) == 1
    assert "not found" in capsys.readouterr().err
    assert main(["residue", "--instance", "p1-linear", "--timeout-ms", "0"]) == 1
    assert main(["residue", "--instance", "p1-linear", "--retry", "-1"]) == 1
    assert main(["residue", "--instance", "global-quadrics"]) == 1


# TEST139: JSON reports leave out the printable lines
def test_139_global_json(capsys):
    assert main(["global", "--instance", "global-quadrics", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["query_residue"] == "3"
    assert report["agree"] is True
    assert "lines" not in report


# TEST140: verify over several trials reports no failures and a stable constant
def test_140_verify_json(capsys):
    assert main(["verify", "--instance", "p1-linear", "--trials", "3", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["failed"] == 0
    assert report["trials"] == 3
    assert {entry["constant"] for entry in report["observed_constants"]} == {"1"}


# TEST141: delta, basis and matrix print their reports
def test_141_structure_commands(capsys):
    assert main(["delta", "--instance", "octahedron"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Delta of octahedron (flag 0): 4 term(s)")
    assert main(["basis", "--instance", "p1xp1"]) == 0
    assert "9 monomial(s)" in capsys.readouterr().out
    assert main(["basis", "--instance", "p1xp1", "--degree", "0,1,1,0"]) == 0
    assert "4 monomial(s)" in capsys.readouterr().out
    assert main(["matrix", "--instance", "p1xp1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["shape"] == [9, 9]


# TEST142: A monomial query with a random seed names the monomial in the output
def test_142_residue_monomial_query(capsys):
    assert main(["residue", "--instance", "p1xp1", "--h", "x3^2*x4^2", "--random-seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "seed 1" in out
    assert "residue(x3^2*x4^2) = " in out


# TEST143: Parsed arguments become dry values and engine configuration
def test_143_dry_context_and_config():
    args = build_parser().parse_args(
        ["verify", "--instance", "p1-linear", "--random-seed", "9", "--trials", "4", "--max-h", "2", "--retry", "1"]
    )
    dry = build_dry_context(args)
    assert dry.get("seed") == 9
    assert dry.get("trials") == 4
    assert dry.get("instance")["name"] == "p1-linear"
    assert not dry.contains("h")
    config = EngineConfig.from_args(args)
    assert config.cross_check_limit == 2
    assert config.retry == 1
    with pytest.raises(SystemExit):
        build_parser().parse_args(["basis", "--instance", "p1xp1", "--degree", "a,b"])


# TEST144: Ops are wrapped for validation, time bounds and retries
def test_144_build_op():
    assert isinstance(build_op("residue", EngineConfig()), ValidatingWrapper)
    assert isinstance(build_op("residue", EngineConfig(timeout_ms=500)), TimeBoundWrapper)
    assert isinstance(build_op("residue", EngineConfig(retry=2)), RetryWrapper)
    assert isinstance(build_op("verify", EngineConfig(retry=2)), ValidatingWrapper)
    with pytest.raises(ValidationError, match="timeout"):
        build_op("residue", EngineConfig(timeout_ms=-5))


# TEST145: Rendering and exit status of reports
def test_145_render_and_exit_status():
    report = {"command": "verify", "failed": 2, "lines": ["a", "b"]}
    assert render(report, as_json=False) == "a\nb"
    assert json.loads(render(report, as_json=True)) == {"command": "verify", "failed": 2}
    assert exit_status(report) == 3
    assert exit_status({"agree": False}) == 3
    assert exit_status({"agree": True, "failed": 0}) == 0
