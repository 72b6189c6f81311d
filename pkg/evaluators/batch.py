import asyncio
import logging
from typing import List, Optional, Sequence, Union

from config import DEFAULT_WORKERS
from exceptions import ZetaError
from evaluators.continuation import zeta_continuation
from models.evaluation import EvalOptions, EvalResult
from models.space import SpaceSpec

logger = logging.getLogger(__name__)

BatchOutcome = Union[EvalResult, ZetaError]


async def _evaluate_point(spec: SpaceSpec, s: complex, opts: EvalOptions, gate: asyncio.Semaphore) -> EvalResult:
    """Evaluate one point on a worker thread"""
    async with gate:
        return await asyncio.to_thread(zeta_continuation, spec, s, opts)


async def evaluate_batch_async(spec: SpaceSpec, points: Sequence[complex], opts: Optional[EvalOptions] = None,
                               workers: int = DEFAULT_WORKERS) -> List[BatchOutcome]:
    """
    Evaluate many points concurrently.

    Args:
        spec: Which zeta function
        points: Arguments, in output order
        opts: Accuracy controls shared by every point
        workers: Maximum number of points in flight

    Returns:
        List: One EvalResult or ZetaError per point, in the order of points
    """
    opts = opts or EvalOptions()
    gate = asyncio.Semaphore(max(1, workers))
    tasks = [_evaluate_point(spec, complex(s), opts, gate) for s in points]
    results = await asyncio.gather(*tasks, return_exceptions=True)

    outcomes: List[BatchOutcome] = []
    for s, result in zip(points, results):
        if isinstance(result, ZetaError):
            logger.info(f"{spec.label}({s}): {result}")
        elif isinstance(result, BaseException):
            logger.error(f"Unexpected failure evaluating {spec.label}({s}): {str(result)}")
            raise result
        outcomes.append(result)
    return outcomes


def evaluate_batch(spec: SpaceSpec, points: Sequence[complex], opts: Optional[EvalOptions] = None,
                   workers: int = DEFAULT_WORKERS) -> List[BatchOutcome]:
    """Synchronous wrapper around evaluate_batch_async"""
    return asyncio.run(evaluate_batch_async(spec, points, opts, workers))
