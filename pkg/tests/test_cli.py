"""
Command Line Integration Tests
"""

import json
import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest

from orchestration.cli import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_SOLVER_INFEASIBLE,
    EXIT_VALIDATION_FAILED,
    main,
)

FIGURE3_POINT = {
    "rho_db": 35.0, "alpha1": 0.2, "T": 3, "n1": 300, "n2": 300, "m": 500.0,
    "eps1_req": 1e-5, "eps2_req": 1e-5, "delta": 0.1, "nu": 1e-7,
}


def write_json(path: Path, document) -> str:
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


def test_unknown_command():
    """Unknown subcommands are input errors"""
    assert main(["figure9"]) == EXIT_INPUT_ERROR


def test_malformed_config_writes_nothing(tmp_path):
    """Malformed JSON exits 2 before any output"""
    config = tmp_path / "bad.json"
    config.write_text("{not json", encoding="utf-8")
    out = tmp_path / "figure2.csv"
    assert main(["figure2", "--config", str(config), "--out", str(out)]) == EXIT_INPUT_ERROR
    assert not out.exists()


def test_unknown_config_key(tmp_path):
    """Unknown keys in the configuration are rejected"""
    config = write_json(tmp_path / "extra.json", {"rho_db": 20.0, "colour": "red"})
    assert main(["figure2", "--config", config, "--out", str(tmp_path / "x.csv")]) == EXIT_INPUT_ERROR


def test_gamma_inverse_only_for_solver_commands(tmp_path):
    """--gamma-inverse is refused by figure2"""
    args = ["figure2", "--gamma-inverse", "literal", "--out", str(tmp_path / "x.csv")]
    assert main(args) == EXIT_INPUT_ERROR


def test_figure2_table(tmp_path):
    """A two-point sweep writes provenance, header and two rows"""
    out = tmp_path / "figure2.csv"
    assert main(["figure2", "--sweep", "500:600:100", "--out", str(out)]) == EXIT_OK

    lines = out.read_text(encoding="utf-8").splitlines()
    provenance = json.loads(lines[0][2:])
    assert provenance["command"] == "figure2"
    assert provenance["m"] == [500.0, 600.0]
    assert lines[1].startswith("m,noma_u1")
    assert len(lines) == 4


def test_solve_requires_tolerance(tmp_path):
    """nu has no default"""
    document = {k: v for k, v in FIGURE3_POINT.items() if k != "nu"}
    config = write_json(tmp_path / "solve.json", document)
    assert main(["solve", "--config", config]) == EXIT_INPUT_ERROR


def test_solve_prints_solution(tmp_path, capsys):
    """Converged solve prints the operating point and the OMA gap"""
    config = write_json(tmp_path / "solve.json", FIGURE3_POINT)
    assert main(["solve", "--config", config]) == EXIT_OK

    output = json.loads(capsys.readouterr().out)
    assert abs(output["residual"]) <= 1e-7
    assert 0 < output["alpha1_star"] < 0.5
    assert output["m_req_ceil"] >= 100
    assert output["gap"] > 0
    assert output["gamma_inverse"] == "regularized"


def test_solve_infeasible(tmp_path, capsys):
    """Loose targets leave the blocklength regime and exit 4"""
    document = {**FIGURE3_POINT, "eps1_req": 0.9, "eps2_req": 0.9}
    config = write_json(tmp_path / "solve.json", document)
    assert main(["solve", "--config", config]) == EXIT_SOLVER_INFEASIBLE

    output = json.loads(capsys.readouterr().out)
    assert output["status"] == "infeasible"


def test_validate_is_deterministic(tmp_path, capsys):
    """Two runs of one criterion produce identical reports"""
    first_out = tmp_path / "first.txt"
    second_out = tmp_path / "second.txt"
    assert main(["validate", "--criteria", "4", "--out", str(first_out)]) == EXIT_OK
    assert main(["validate", "--criteria", "4", "--out", str(second_out)]) == EXIT_OK

    first = first_out.read_text(encoding="utf-8")
    assert first == second_out.read_text(encoding="utf-8")
    assert "4,antiderivative_identities,PASS" in first
    assert capsys.readouterr().out == first + first


def test_validate_detects_corruption(tmp_path):
    """Corrupted series weights fail validation"""
    args = ["validate", "--criteria", "1", "--corrupt-omega", "--trials", "1000", "--out", str(tmp_path / "r.txt")]
    assert main(args) == EXIT_VALIDATION_FAILED


def test_validate_rejects_bad_criteria():
    """Criteria are integers between 1 and 9"""
    assert main(["validate", "--criteria", "one"]) == EXIT_INPUT_ERROR
    assert main(["validate", "--criteria", "12"]) == EXIT_INPUT_ERROR
