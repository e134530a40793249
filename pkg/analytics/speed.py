"""
Front speed estimation from record-extent series.

The extent max ⟨x, u⟩ is sampled at the births that set a new record. Each
run contributes a least-squares slope over the trailing window; replicas are
pooled by the between-replica spread of those slopes, since increments along
one path are dependent.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from analytics.schemas import SpeedEstimate
from utils.errors import InsufficientDataError, InvalidArgumentError

logger = logging.getLogger(__name__)

MIN_WINDOW_POINTS = 10


def _window_points(run, direction, t_lo: float, t_hi: float):
    times, extents = run.front_series(direction)
    keep = (times >= t_lo) & (times <= t_hi)
    return times[keep], extents[keep]


def _fit(times: np.ndarray, extents: np.ndarray):
    if np.ptp(times) == 0.0:
        raise InsufficientDataError("All window points share one time; the slope is undefined")
    fit = stats.linregress(times, extents)
    stderr = float(fit.stderr) if np.isfinite(fit.stderr) else 0.0
    return float(fit.slope), stderr


def estimate_speed(
    runs: Sequence,
    direction=None,
    window_fraction: float = 0.5,
    label: Optional[str] = None,
) -> SpeedEstimate:
    """
    Pooled front speed over the last `window_fraction` of the common time span.

    `runs` may mix EventLogs and FrontTraces. One run gives the regression
    standard error; several give the standard error of the mean slope.

    Raises:
        InsufficientDataError: a run has fewer than 10 record points in the window.
    """
    if not runs:
        raise InvalidArgumentError("estimate_speed needs at least one run")
    if not 0.0 < window_fraction < 1.0:
        raise InvalidArgumentError(f"window_fraction must lie in (0, 1), got {window_fraction}")
    t_hi = min(float(run.t_end) for run in runs)
    t_lo = (1.0 - window_fraction) * t_hi
    if not t_lo < t_hi:
        raise InsufficientDataError(f"Runs end at t={t_hi:g}; there is no window to regress over")
    slopes, stderrs = [], []
    for i, run in enumerate(runs):
        times, extents = _window_points(run, direction, t_lo, t_hi)
        if len(times) < MIN_WINDOW_POINTS:
            raise InsufficientDataError(
                f"Run {i} has {len(times)} record points in [{t_lo:g}, {t_hi:g}], need {MIN_WINDOW_POINTS}"
            )
        slope, stderr = _fit(times, extents)
        slopes.append(slope)
        stderrs.append(stderr)
    if len(slopes) == 1:
        slope, stderr = slopes[0], stderrs[0]
    else:
        slope = float(np.mean(slopes))
        stderr = float(np.std(slopes, ddof=1) / math.sqrt(len(slopes)))
    label = label if label is not None else getattr(runs[0], "kernel", "")
    logger.debug(f"Speed of {label}: {slope:.5f} ± {stderr:.5f} over [{t_lo:g}, {t_hi:g}] from {len(runs)} runs")
    return SpeedEstimate(slope=slope, stderr=stderr, window=(t_lo, t_hi), replicas=len(runs),
                         per_replica=slopes if len(slopes) > 1 else [], label=label)
