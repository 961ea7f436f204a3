"""
Clamping Diagnostics
Boundary clamp of closed-form probabilities with an excess counter
"""

import logging
import math
import threading
from typing import Any, Dict, Optional

from backend.analytic.schemas import BlerEstimate, BlerMethod
from configs.settings import settings

logger = logging.getLogger(__name__)


class NumericalRegimeError(ArithmeticError):
    """Raised when a closed form is evaluated where double precision breaks down"""
    pass


class ClampDiagnostics:
    """Thread-safe record of how far raw closed-form values left [0, 1]"""

    def __init__(self):
        self._lock = threading.Lock()
        self.reset()

    def reset(self) -> None:
        with self._lock:
            self._evaluations = 0
            self._clamped = 0
            self._over_tolerance = 0
            self._max_excess = 0.0
            self._stage_excess: Dict[str, float] = {}

    def record(self, excess: float, tolerance: float, stage: Optional[str] = None) -> None:
        with self._lock:
            self._evaluations += 1
            if excess > 0:
                self._clamped += 1
                self._max_excess = max(self._max_excess, excess)
                key = stage or "unknown"
                self._stage_excess[key] = max(self._stage_excess.get(key, 0.0), excess)
            if excess > tolerance:
                self._over_tolerance += 1

    def snapshot(self) -> Dict[str, Any]:
        with self._lock:
            return {
                "evaluations": self._evaluations,
                "clamped": self._clamped,
                "over_tolerance": self._over_tolerance,
                "max_excess": self._max_excess,
                "stage_excess": dict(self._stage_excess),
            }


clamp_diagnostics = ClampDiagnostics()


def clamp_estimate(raw: float, method: BlerMethod, stage: Optional[str] = None) -> BlerEstimate:
    """Clamp a raw closed-form value into [0, 1] and record the excess"""
    if not math.isfinite(raw):
        raise NumericalRegimeError(f"Stage {stage} closed form is not finite: {raw}")
    excess = max(raw - 1.0, -raw, 0.0)
    tolerance = settings.CLAMP_TOLERANCE
    clamp_diagnostics.record(excess, tolerance, stage)
    if excess > tolerance:
        logger.warning(f"Stage {stage} raw BLER {raw:.6e} left [0, 1] by {excess:.3e}")

    value = min(max(raw, 0.0), 1.0)
    return BlerEstimate(value=value, method=method, raw_value=raw, stage=stage)
