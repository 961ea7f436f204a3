"""
Tests for the Figures Module
"""

import json
import time

import pytest
from pydantic import ValidationError

from backend.figures import (
    FIGURE2_DEFAULTS,
    FIGURE3_DEFAULTS,
    Figure2Row,
    SweepOrchestrator,
    SweepPointError,
    SweepSpec,
    ValidationHarness,
    figure1_rows,
    figure2_rows,
    figure3_rows,
    run_validation,
    write_rows,
)
from backend.model import RunConfig, SolveConfig
from configs.settings import settings


def test_sweep_spec_grid():
    """Inclusive arithmetic grid"""
    sweep = SweepSpec.parse("rho_db", "10:40:2.5")
    points = sweep.points()
    assert sweep.count == 13
    assert points[0] == 10.0 and points[-1] == 40.0
    assert points[1] == 12.5


def test_sweep_spec_rejections():
    """Empty, malformed and oversized grids are refused"""
    with pytest.raises(ValidationError):
        SweepSpec.parse("rho_db", "40:10:2.5")
    with pytest.raises(ValueError, match="START:STOP:STEP"):
        SweepSpec.parse("m", "500-1500")
    with pytest.raises(ValidationError, match="limit"):
        SweepSpec.parse("rho_db", "10:40:0.0001")
    with pytest.raises(ValidationError):
        SweepSpec.parse("alpha1", "0.1:0.4:0.1")


def test_orchestrator_preserves_order():
    """Results come back in sweep order whatever the finishing order"""
    def evaluate(point):
        time.sleep(0.01 * (5 - point))
        return point * point

    results = SweepOrchestrator(workers=3).run([0, 1, 2, 3, 4], evaluate)
    assert results == [0, 1, 4, 9, 16]


def test_orchestrator_isolates_failures():
    """A failing point becomes a SweepPointError in its slot"""
    def evaluate(point):
        if point == 2:
            raise ValueError("bad point")
        return point

    results = SweepOrchestrator(workers=2).run([1, 2, 3], evaluate)
    assert results[0] == 1 and results[2] == 3
    failure = results[1]
    assert isinstance(failure, SweepPointError)
    assert failure.index == 1
    assert isinstance(failure.cause, ValueError)


def test_write_rows(tmp_path):
    """Provenance line, header in field order, empty cells for missing values"""
    path = tmp_path / "out" / "table.csv"
    rows = [Figure2Row(m=500.0, noma_u1=1e-3), Figure2Row(m=600.0, status="error:FeasibilityError")]
    write_rows(path, Figure2Row, rows, {"command": "figure2", "seed": 1})

    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# ")
    assert json.loads(lines[0][2:]) == {"command": "figure2", "seed": 1}
    assert lines[1] == "m,noma_u1,noma_u2,oma20_u1,oma20_u2,oma50_u1,oma50_u2,status"
    assert lines[2] == "500.0,0.001,,,,,,ok"
    assert lines[3].endswith(",error:FeasibilityError")


def test_figure1_rows_small_grid():
    """Two users per (T, rho) with analytic and simulated values"""
    base = RunConfig(trials=2_000, seed=5)
    rows = figure1_rows(base, [20.0], rounds=(2,))
    assert [(r.rho_db, r.T, r.user) for r in rows] == [(20.0, 2, 1), (20.0, 2, 2)]
    assert all(r.status == "ok" for r in rows)
    assert all(r.mc_stderr is not None for r in rows)
    near, far = rows
    assert far.bler_analytic <= near.bler_analytic


def test_figure2_noma_beats_short_oma_share():
    """Near user does better under NOMA than with a 20% OMA share"""
    rows = figure2_rows(RunConfig(**FIGURE2_DEFAULTS), [500.0, 600.0])
    assert [r.m for r in rows] == [500.0, 600.0]
    for row in rows:
        assert row.status == "ok"
        assert row.noma_u1 < row.oma20_u1
    assert rows[1].noma_u2 <= rows[0].noma_u2


def test_figure2_short_share_marks_row():
    """A share below 100 channel uses is reported in the status column"""
    rows = figure2_rows(RunConfig(**FIGURE2_DEFAULTS), [400.0])
    assert rows[0].status.startswith("error:")


def test_figure3_rows_single_point():
    """NOMA saves blocklength at 35 dB"""
    rows = figure3_rows(SolveConfig(**FIGURE3_DEFAULTS), [35.0], (1e-5,))
    assert len(rows) == 1
    row = rows[0]
    assert row.status == "ok"
    assert row.gap > 0
    assert row.m_oma == pytest.approx(row.m_noma + row.gap)


def test_validation_subset_passes():
    """Closed-form and antiderivative checks pass; report is deterministic"""
    base = RunConfig(trials=20_000)
    first = run_validation(base, [2, 4, 9])
    second = run_validation(base, [2, 4, 9])
    assert first.passed
    assert [r.number for r in first.results] == [2, 4, 9]
    assert first.render() == second.render()
    assert first.render().endswith("# overall: PASS\n")


def test_corrupted_series_weights_are_detected():
    """Negated series weights fail the far-series equivalence"""
    report = ValidationHarness(RunConfig(trials=1_000), corrupt_omega=True).run([1])
    assert not report.passed
    assert report.results[0].name == "far_series_equivalence"


def test_validation_rejects_unknown_criterion():
    """Only criteria 1 to 9 exist"""
    with pytest.raises(ValueError, match="Unknown criteria"):
        run_validation(RunConfig(), [10])


def test_far_series_equivalence_passes():
    """Unmodified weights meet the 1e-9 far-series check"""
    report = ValidationHarness(RunConfig(trials=1_000)).run([1])
    assert report.passed
    assert report.results[0].threshold == f"<= {settings.FAR_SERIES_RTOL:g}"


def test_figure3_criteria_report_both_readings(monkeypatch):
    """Round trip reads its tolerance from settings; the gap lists both Gamma readings"""
    monkeypatch.setattr(settings, "ROUND_TRIP_RTOL", 1e-9)
    report = ValidationHarness(RunConfig(trials=1_000)).run([6, 7])
    round_trip, gap = report.results
    assert round_trip.passed
    assert round_trip.threshold.endswith("rel <= 1e-09")
    assert len([d for d in round_trip.details if "alpha1*=" in d]) == 6

    regularized = [d for d in gap.details if d.startswith("regularized rho=")]
    literal = [d for d in gap.details if d.startswith("literal rho=")]
    assert len(regularized) == 6
    assert len(literal) == 6
    assert gap.details.index(regularized[-1]) < gap.details.index(literal[0])
