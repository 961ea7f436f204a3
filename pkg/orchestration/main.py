"""
NomaHarq FastAPI Application
HTTP surface for the closed-form evaluator and the solver
"""

import sys
from pathlib import Path

# Add parent directory to Python path for backend imports
sys.path.insert(0, str(Path(__file__).parent.parent))

import asyncio
import logging

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import ValidationError

from backend.analytic import CompositionLimitError, QuadratureConfig, user_bler_summary
from backend.asymptotic_solver import ConvergenceError, compare_blocklengths
from backend.figures import solve_inputs
from backend.model import RunConfig, SolveConfig
from configs.logging_config import setup_logging
from configs.settings import settings

# Configure logging
setup_logging()
logger = logging.getLogger(__name__)

# Domain failures are reported as unprocessable input
DOMAIN_ERRORS = (ValueError, ArithmeticError, ConvergenceError, CompositionLimitError, ValidationError)

# Initialize FastAPI app
app = FastAPI(
    title=settings.APP_NAME,
    description="Finite-blocklength BLER and blocklength planning for NOMA with HARQ chase combining",
    version=settings.APP_VERSION,
)

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/api/health")
async def health_check():
    """Health check endpoint"""
    return {'status': 'healthy', 'app': settings.APP_NAME, 'version': settings.APP_VERSION}


@app.post("/api/bler")
async def evaluate_bler(config: RunConfig):
    """
    Closed-form average BLER of every SIC stage and both users

    Body is the run configuration document; unknown keys are rejected.
    """
    try:
        system = config.system()
        quad = QuadratureConfig(n_nodes=config.quad_n, l_terms=config.quad_l)
        report = await asyncio.to_thread(user_bler_summary, system, config.coding(), quad)
        logger.info(f"BLER evaluated at rho={config.rho_db} dB, T={config.T}")
        return {
            'config': config.model_dump(),
            'report': report.model_dump(mode="json"),
        }

    except DOMAIN_ERRORS as e:
        logger.warning(f"BLER request rejected: {e}")
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        logger.error(f"BLER evaluation error: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")


@app.post("/api/solve")
async def solve(config: SolveConfig):
    """
    Power split and required blocklength meeting both targets

    Also returns the OMA blocklength and the OMA-minus-NOMA gap.
    """
    try:
        scenario, targets = solve_inputs(config)
        quad = QuadratureConfig(n_nodes=config.quad_n, l_terms=config.quad_l)
        solution, comparison = await asyncio.to_thread(
            compare_blocklengths, scenario, targets, config.n1, config.n2, quad, config.gamma_inverse
        )
        return {
            'solution': solution.model_dump(mode="json"),
            'comparison': comparison.model_dump(mode="json"),
        }

    except DOMAIN_ERRORS as e:
        logger.warning(f"Solve request rejected: {type(e).__name__}: {e}")
        raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")
    except Exception as e:
        logger.error(f"Solver error: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")
