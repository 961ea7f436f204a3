"""
Sweep Orchestrator
Evaluates sweep points concurrently and returns them in sweep order
"""

import asyncio
import logging
from typing import Any, Callable, List, Optional, Sequence, TypeVar, Union

from configs.settings import settings

logger = logging.getLogger(__name__)

P = TypeVar("P")
R = TypeVar("R")


class SweepPointError(RuntimeError):
    """A sweep point that could not be evaluated"""

    def __init__(self, index: int, point: Any, cause: BaseException):
        self.index = index
        self.point = point
        self.cause = cause
        super().__init__(f"Sweep point {index} ({point}) failed: {type(cause).__name__}: {cause}")


class SweepOrchestrator:
    """Runs pure per-point computations on worker threads"""

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers or settings.SWEEP_WORKERS

    async def run_points(
        self,
        points: Sequence[P],
        evaluate: Callable[[P], R],
    ) -> List[Union[R, SweepPointError]]:
        """
        Evaluate every point, at most ``workers`` at a time

        Args:
            points: Sweep points in sweep order
            evaluate: Pure function of one point

        Returns:
            Results in sweep order; failed points are SweepPointError entries
        """
        logger.info(f"Starting sweep of {len(points)} points on {self.workers} workers")
        semaphore = asyncio.Semaphore(self.workers)

        tasks = [self._run_point(index, point, evaluate, semaphore) for index, point in enumerate(points)]
        results = await asyncio.gather(*tasks, return_exceptions=True)

        ordered: List[Union[R, SweepPointError]] = []
        failures = 0
        for index, result in enumerate(results):
            if isinstance(result, SweepPointError):
                failures += 1
                logger.warning(str(result))
                ordered.append(result)
            elif isinstance(result, Exception):
                failures += 1
                logger.error(f"Sweep point {index} raised unexpectedly: {result}")
                ordered.append(SweepPointError(index, points[index], result))
            else:
                ordered.append(result)

        logger.info(f"Sweep finished: {len(points) - failures} ok, {failures} failed")
        return ordered

    async def _run_point(self, index: int, point: P, evaluate: Callable[[P], R], semaphore: asyncio.Semaphore) -> R:
        async with semaphore:
            try:
                return await asyncio.to_thread(evaluate, point)
            except Exception as e:
                raise SweepPointError(index, point, e) from e

    def run(self, points: Sequence[P], evaluate: Callable[[P], R]) -> List[Union[R, SweepPointError]]:
        """Blocking entry point for synchronous callers"""
        return asyncio.run(self.run_points(points, evaluate))
