"""
EXPLORATORY: compare s(b1) + s(b2) with s(b1 + b2) for 1D kernels.

Nothing here is a proven property; the report measures the conjectured
inequality within pooled Monte Carlo error and says so in its status.
"""

import logging
import math
from typing import Optional

import numpy as np

from analytics.schemas import SpeedEstimate, SuperadditivityReport
from analytics.speed import estimate_speed
from engine.replicas import replica_map
from engine.simulation import run_front
from model.configuration import Configuration
from model.kernel_spec import kernel_spec
from model.kernels import ZeroKernel, add_kernels

logger = logging.getLogger(__name__)

N_STDERR = 3.0


def measure_speed(kernel, replicas: int, t_end: float, seed: int, *, n_jobs: Optional[int] = None,
                  window_fraction: float = 0.5) -> SpeedEstimate:
    """Pooled 1D front speed of `kernel` from the origin; the zero kernel has speed 0 exactly."""
    spec = kernel_spec(kernel)
    if isinstance(kernel, ZeroKernel):
        return SpeedEstimate(slope=0.0, stderr=0.0, window=((1.0 - window_fraction) * t_end, t_end),
                             replicas=replicas, per_replica=[0.0] * replicas if replicas > 1 else [], label=spec)
    traces = replica_map(run_front, replicas, seed, n_jobs=n_jobs, kernel=kernel,
                         initial=Configuration.origin(1), t_end=t_end)
    return estimate_speed(traces, window_fraction=window_fraction, label=spec)


def _paired_stderr(combined: SpeedEstimate, *parts: SpeedEstimate) -> float:
    """
    Standard error of s(combined) - sum s(parts).

    All kernels run on the same replica streams, so with several replicas the
    error comes from the per-replica differences; one replica falls back to
    the regression errors added in quadrature.
    """
    if combined.per_replica and all(p.per_replica for p in parts):
        diffs = np.asarray(combined.per_replica) - sum(np.asarray(p.per_replica) for p in parts)
        return float(np.std(diffs, ddof=1) / math.sqrt(len(diffs)))
    return math.sqrt(combined.stderr ** 2 + sum(p.stderr ** 2 for p in parts))


def superadditivity_experiment(b1, b2, replicas: int, t_end: float, seed: int, *,
                               n_jobs: Optional[int] = None) -> SuperadditivityReport:
    combined_kernel = add_kernels(b1, b2)
    first = measure_speed(b1, replicas, t_end, seed, n_jobs=n_jobs)
    second = measure_speed(b2, replicas, t_end, seed, n_jobs=n_jobs)
    combined = measure_speed(combined_kernel, replicas, t_end, seed, n_jobs=n_jobs)
    margin = combined.slope - first.slope - second.slope
    margin_stderr = _paired_stderr(combined, first, second)
    monotone = all(
        part.slope <= combined.slope + N_STDERR * _paired_stderr(combined, part)
        for part in (first, second)
    )
    report = SuperadditivityReport(
        first=first,
        second=second,
        combined=combined,
        margin=margin,
        margin_stderr=margin_stderr,
        holds=margin >= -N_STDERR * margin_stderr,
        monotone=monotone,
    )
    message = (
        f"[EXPLORATORY] s({first.label})={first.slope:.4f}, s({second.label})={second.slope:.4f}, "
        f"s(sum)={combined.slope:.4f}; margin {margin:+.4f} ± {margin_stderr:.4f}"
    )
    if report.holds and report.monotone:
        logger.info(message)
    else:
        logger.warning(f"{message}: conjectured inequality not supported")
    return report
