"""Parameter sweeps: grid construction and order-preserving parallel execution."""
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Iterable, List, Optional

import numpy as np

from .errors import CCPBError, InvalidParameterError

logger = logging.getLogger(__name__)

SWEEP_PARAMETERS = ("L", "V", "eps", "delta")
SCALES = ("linear", "log")


@dataclass(frozen=True)
class SweepSpec:
    """Grid of values for one parameter."""
    parameter: str
    start: float
    stop: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise InvalidParameterError(f"Unknown sweep parameter: {self.parameter}")
        if self.scale not in SCALES:
            raise InvalidParameterError(f"Unknown scale: {self.scale}")
        if self.points < 2:
            raise InvalidParameterError("a sweep needs at least 2 points")
        if not self.start < self.stop:
            raise InvalidParameterError("sweep start must be below stop")
        if self.scale == "log" and self.start <= 0:
            raise InvalidParameterError("log sweeps need positive endpoints")

    def values(self) -> List[float]:
        if self.scale == "log":
            grid = np.geomspace(self.start, self.stop, self.points)
        else:
            grid = np.linspace(self.start, self.stop, self.points)
        return [float(v) for v in grid]


@dataclass
class RowOutcome:
    """Result of one sweep row; value is None when the row failed."""
    value: Any
    status: str = "ok"
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def _guarded(task: Callable[[Any], Any], item: Any) -> RowOutcome:
    try:
        return RowOutcome(task(item))
    except CCPBError as e:
        return RowOutcome(None, status=type(e).__name__, error=str(e))


class _GuardedTask:
    """Picklable wrapper turning library errors into failed rows."""

    def __init__(self, task: Callable[[Any], Any]):
        self.task = task

    def __call__(self, item: Any) -> RowOutcome:
        return _guarded(self.task, item)


def resolve_jobs(jobs: Optional[int]) -> int:
    if jobs is None:
        return os.cpu_count() or 1
    if jobs < 1:
        raise InvalidParameterError("jobs must be at least 1")
    return jobs


class SweepExecutor:
    """Runs independent sweep rows, serially or in worker processes."""

    def __init__(self, jobs: Optional[int] = None):
        """
        Args:
            jobs: Worker processes; None uses all cores, 1 runs in-process
        """
        self.jobs = resolve_jobs(jobs)

    def run(self, task: Callable[[Any], Any], items: Iterable[Any]) -> List[RowOutcome]:
        """
        Apply task to every item, returning outcomes in item order.

        task must be a module-level function so it can reach worker
        processes. Rows raising a library error are reported, not re-raised.
        """
        items = list(items)
        if self.jobs == 1 or len(items) <= 1:
            outcomes = [_guarded(task, item) for item in items]
        else:
            workers = min(self.jobs, len(items))
            logger.debug("Running %d rows on %d workers", len(items), workers)
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(_GuardedTask(task), items))
        failed = [o for o in outcomes if not o.ok]
        for outcome in failed:
            logger.warning("Sweep row failed (%s): %s", outcome.status, outcome.error)
        return outcomes


def nan_row(width: int) -> List[float]:
    return [math.nan] * width
