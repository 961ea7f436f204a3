"""
NomaHarq Command Line
Figure tables, the power/blocklength solver and the validation harness
"""

import sys
from pathlib import Path

# Add parent directory to Python path for backend imports
sys.path.insert(0, str(Path(__file__).parent.parent))

import argparse
import json
import logging
from typing import Any, Dict, List, Optional, Type

from pydantic import BaseModel, ValidationError

from backend.analytic import QuadratureConfig
from backend.asymptotic_solver import (
    BlocklengthRegimeError,
    ConvergenceError,
    GammaInversionError,
    InfeasibleTargetsError,
    compare_blocklengths,
)
from backend.figures import (
    FIGURE1_DEFAULTS,
    FIGURE1_SWEEP,
    FIGURE2_DEFAULTS,
    FIGURE2_SWEEP,
    FIGURE3_DEFAULTS,
    FIGURE3_EPS2_TARGETS,
    FIGURE3_SWEEP,
    Figure1Row,
    Figure2Row,
    Figure3Row,
    SweepSpec,
    figure1_rows,
    figure2_rows,
    figure3_rows,
    run_validation,
    solve_inputs,
    write_rows,
)
from backend.model import RunConfig, SolveConfig
from configs.logging_config import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_SWEEP_INFEASIBLE = 3
EXIT_SOLVER_INFEASIBLE = 4

SOLVER_ERRORS = (InfeasibleTargetsError, ConvergenceError, BlocklengthRegimeError, GammaInversionError)


class InputError(Exception):
    """Bad command-line input or configuration file"""
    pass


def load_config(
    model: Type[BaseModel],
    defaults: Dict[str, Any],
    path: Optional[str],
    overrides: Dict[str, Any],
) -> BaseModel:
    """
    Resolve a configuration: built-in defaults, then the JSON file, then flags

    Raises:
        InputError: If the file is unreadable or the merged document is invalid
    """
    data = dict(defaults)
    if path:
        try:
            document = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"Cannot read config file {path}: {e}") from e
        if not isinstance(document, dict):
            raise InputError(f"Config file {path} must hold a JSON object")
        data.update(document)
    data.update({k: v for k, v in overrides.items() if v is not None})

    try:
        return model(**data)
    except ValidationError as e:
        raise InputError(f"Invalid configuration: {e}") from e


def _overrides(args: argparse.Namespace, with_gamma: bool = False) -> Dict[str, Any]:
    overrides = {"seed": args.seed, "trials": args.trials, "quad_n": args.quad_n, "quad_l": args.quad_l}
    if with_gamma:
        overrides["gamma_inverse"] = args.gamma_inverse
    elif args.gamma_inverse is not None:
        raise InputError("--gamma-inverse only applies to figure3 and solve")
    return overrides


def _grid(variable: str, text: str) -> List[float]:
    try:
        return SweepSpec.parse(variable, text).points()
    except (ValueError, ValidationError) as e:
        raise InputError(str(e)) from e


def _provenance(command: str, config: BaseModel, **extra: Any) -> Dict[str, Any]:
    return {"command": command, "config": config.model_dump(mode="json"), **extra}


def _finish_table(path: str, row_model, rows, provenance) -> int:
    write_rows(Path(path), row_model, rows, provenance)
    failed = [r for r in rows if r.status != "ok"]
    if failed:
        logger.error(f"{len(failed)} of {len(rows)} rows could not be evaluated")
        return EXIT_SWEEP_INFEASIBLE
    return EXIT_OK


def cmd_figure1(args: argparse.Namespace) -> int:
    config = load_config(RunConfig, FIGURE1_DEFAULTS, args.config, _overrides(args))
    grid = _grid("rho_db", args.sweep or FIGURE1_SWEEP)
    rows = figure1_rows(config, grid)
    return _finish_table(args.out or "results/figure1.csv", Figure1Row, rows,
                         _provenance("figure1", config, rho_db=grid))


def cmd_figure2(args: argparse.Namespace) -> int:
    config = load_config(RunConfig, FIGURE2_DEFAULTS, args.config, _overrides(args))
    grid = _grid("m", args.sweep or FIGURE2_SWEEP)
    rows = figure2_rows(config, grid)
    return _finish_table(args.out or "results/figure2.csv", Figure2Row, rows,
                         _provenance("figure2", config, m=grid))


def cmd_figure3(args: argparse.Namespace) -> int:
    config = load_config(SolveConfig, FIGURE3_DEFAULTS, args.config, _overrides(args, with_gamma=True))
    grid = _grid("rho_db", args.sweep or FIGURE3_SWEEP)
    targets = FIGURE3_EPS2_TARGETS
    if args.eps2_targets:
        try:
            targets = tuple(float(v) for v in args.eps2_targets.split(","))
        except ValueError as e:
            raise InputError(f"Invalid --eps2-targets: {args.eps2_targets}") from e
    rows = figure3_rows(config, grid, targets)
    return _finish_table(args.out or "results/figure3.csv", Figure3Row, rows,
                         _provenance("figure3", config, rho_db=grid, eps2_targets=list(targets)))


def cmd_solve(args: argparse.Namespace) -> int:
    config = load_config(SolveConfig, {}, args.config, _overrides(args, with_gamma=True))
    scenario, targets = solve_inputs(config)
    quad = QuadratureConfig(n_nodes=config.quad_n, l_terms=config.quad_l)
    try:
        solution, comparison = compare_blocklengths(
            scenario, targets, config.n1, config.n2, quad, config.gamma_inverse
        )
    except SOLVER_ERRORS as e:
        logger.error(f"Solver failed: {e}")
        print(json.dumps({"status": "infeasible", "reason": type(e).__name__, "message": str(e)}))
        return EXIT_SOLVER_INFEASIBLE

    output = solution.model_dump(mode="json")
    output.update({"m_oma": comparison.m_oma, "gap": comparison.gap})
    print(json.dumps(output, sort_keys=True))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    config = load_config(RunConfig, {}, args.config, _overrides(args))
    criteria = None
    if args.criteria:
        try:
            criteria = [int(c) for c in args.criteria.split(",")]
        except ValueError as e:
            raise InputError(f"Invalid --criteria: {args.criteria}") from e

    try:
        report = run_validation(config, criteria, corrupt_omega=args.corrupt_omega)
    except ValueError as e:
        raise InputError(str(e)) from e

    text = report.render()
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK if report.passed else EXIT_VALIDATION_FAILED


COMMANDS = {
    "figure1": cmd_figure1,
    "figure2": cmd_figure2,
    "figure3": cmd_figure3,
    "solve": cmd_solve,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nomaharq",
        description="Finite-blocklength BLER of two-user NOMA with HARQ chase combining",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument("--out", help="Output path (CSV for figures, report for validate)")
    parser.add_argument("--seed", type=int, help="Monte Carlo seed")
    parser.add_argument("--trials", type=int, help="Monte Carlo trials")
    parser.add_argument("--quad-n", dest="quad_n", type=int, help="Chebyshev node count N")
    parser.add_argument("--quad-l", dest="quad_l", type=int, help="Series length L (even)")
    parser.add_argument("--gamma-inverse", dest="gamma_inverse", choices=["regularized", "literal"])
    parser.add_argument("--sweep", help="START:STOP:STEP of the figure's swept variable")
    parser.add_argument("--eps2-targets", dest="eps2_targets", help="Comma-separated far-user targets (figure3)")
    parser.add_argument("--criteria", help="Comma-separated criteria to validate (default all)")
    parser.add_argument("--log-level", dest="log_level", help="Logging level")
    parser.add_argument("--corrupt-omega", dest="corrupt_omega", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else EXIT_OK

    setup_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except InputError as e:
        logger.error(str(e))
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
