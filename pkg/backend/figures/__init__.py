"""
Figures Module
Sweeps, CSV tables and the validation harness
"""

from .builders import (
    FIGURE1_DEFAULTS,
    FIGURE1_SWEEP,
    FIGURE2_DEFAULTS,
    FIGURE2_SWEEP,
    FIGURE3_DEFAULTS,
    FIGURE3_EPS2_TARGETS,
    FIGURE3_SWEEP,
    figure1_rows,
    figure2_rows,
    figure3_rows,
    solve_inputs,
)
from .csv_writer import write_rows
from .orchestrator import SweepOrchestrator, SweepPointError
from .schemas import CriterionResult, Figure1Row, Figure2Row, Figure3Row, SweepSpec, ValidationReport
from .validation import ALL_CRITERIA, ValidationHarness, run_validation, window_quadrature

__all__ = [
    "ALL_CRITERIA",
    "CriterionResult",
    "FIGURE1_DEFAULTS",
    "FIGURE1_SWEEP",
    "FIGURE2_DEFAULTS",
    "FIGURE2_SWEEP",
    "FIGURE3_DEFAULTS",
    "FIGURE3_EPS2_TARGETS",
    "FIGURE3_SWEEP",
    "Figure1Row",
    "Figure2Row",
    "Figure3Row",
    "SweepOrchestrator",
    "SweepPointError",
    "SweepSpec",
    "ValidationHarness",
    "ValidationReport",
    "figure1_rows",
    "figure2_rows",
    "figure3_rows",
    "run_validation",
    "solve_inputs",
    "window_quadrature",
    "write_rows",
]
