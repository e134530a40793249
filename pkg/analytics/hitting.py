"""
Hitting times T_λ(x) = inf{t : η_t ∩ B(x, λ|x|) ≠ ∅}, the subadditive ratio
series built from them, and the pathwise subadditivity check.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from analytics.schemas import UNREACHED, HittingRecord, PathwiseSubadditivity, SubadditiveSeries
from config.settings import settings
from engine.event_log import EventLog
from engine.rng import STREAM_MAIN, stream
from engine.samplers import make_sampler
from engine.simulation import SharedMarkCoupling, birth_stream
from model.configuration import Configuration
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

MIN_SERIES_LENGTH = 8


def _target(x, lam: float, dimension: int) -> Tuple[np.ndarray, float]:
    x = np.asarray(x, dtype=float).ravel()
    if x.size != dimension:
        raise InvalidArgumentError(f"Target {x.tolist()} does not have dimension {dimension}")
    if not 0.0 < lam < 1.0:
        raise InvalidArgumentError(f"λ must lie in (0, 1), got {lam}")
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise InvalidArgumentError("Target x must be nonzero")
    return x, lam * norm


def hitting_times(log: EventLog, targets: Iterable[Tuple[Sequence[float], float]]) -> List[HittingRecord]:
    """
    Exact first-entry times of the closed balls B(x, λ|x|).

    A ball already holding an initial particle has T = 0; a ball not entered by
    t_end gets T = UNREACHED.
    """
    births = ~log.removals
    times = log.times[births]
    positions = log.positions[births]
    records = []
    for x, lam in targets:
        centre, radius = _target(x, lam, log.dimension)
        initial_hit = np.flatnonzero(np.linalg.norm(log.initial.array - centre, axis=1) <= radius)
        if len(initial_hit):
            T, z = 0.0, log.initial.array[initial_hit[0]]
        else:
            hit = np.flatnonzero(np.linalg.norm(positions - centre, axis=1) <= radius)
            T, z = (float(times[hit[0]]), positions[hit[0]]) if len(hit) else (UNREACHED, None)
        records.append(HittingRecord(
            x=tuple(float(c) for c in centre),
            lam=lam,
            T=T,
            z=None if z is None else tuple(float(c) for c in z),
        ))
    return records


def hitting_series(log: EventLog, x: Sequence[float], lam: float, n_max: int) -> List[HittingRecord]:
    """T_λ(n x) for n = 1..n_max."""
    x = np.asarray(x, dtype=float)
    return hitting_times(log, [(n * x, lam) for n in range(1, n_max + 1)])


def subadditive_ratios(records: Sequence[HittingRecord]) -> SubadditiveSeries:
    """
    s_{0,n}/n = T_λ(n x)/n from records ordered n = 1..N, with the relative
    change between n and 2n as the stabilization diagnostic.
    """
    N = len(records)
    if N < MIN_SERIES_LENGTH:
        raise InvalidArgumentError(f"Need records for n = 1..N with N >= {MIN_SERIES_LENGTH}, got N={N}")
    base = np.asarray(records[0].x)
    for n, record in enumerate(records, start=1):
        if not np.allclose(record.x, n * base, rtol=1e-12, atol=1e-12) or record.lam != records[0].lam:
            raise InvalidArgumentError(f"Record {n} is not the target n·x with the common λ")
    ratios = [record.T / n for n, record in enumerate(records, start=1)]
    stabilization = {}
    for n in range(1, N // 2 + 1):
        r_n, r_2n = ratios[n - 1], ratios[2 * n - 1]
        if np.isfinite(r_n) and np.isfinite(r_2n) and r_n > 0:
            stabilization[n] = abs(r_2n - r_n) / r_n
    return SubadditiveSeries(n=list(range(1, N + 1)), ratios=ratios, stabilization=stabilization)


def pathwise_subadditivity(
    kernel,
    x: Sequence[float],
    lam: float,
    t_end: float,
    seed: int,
    *,
    initial: Optional[Configuration] = None,
    stream_id: int = STREAM_MAIN,
    max_events: Optional[int] = None,
) -> PathwiseSubadditivity:
    """
    T_λ(2x), T_λ(x) and T_λ(x, 2x) on one probability space.

    The process runs until it enters B(x, λ|x|) through the particle z. From
    then on a copy started from {z} alone is driven by the same marks as the
    full process; T_λ(x, 2x) is the time it takes that copy to enter
    B(z + x, λ|x|). The copy stays inside the full process, so
    T_λ(2x) ≤ T_λ(x) + T_λ(x, 2x) on every path.
    """
    initial = initial if initial is not None else Configuration.origin(1)
    first_centre, first_radius = _target(x, lam, initial.dimension)
    double_centre, double_radius = 2.0 * first_centre, 2.0 * first_radius
    max_events = settings.max_events if max_events is None else max_events
    rng = stream(seed, stream_id)

    def inside(p, centre, radius) -> bool:
        return float(np.linalg.norm(np.asarray(p) - centre)) <= radius

    T_x = T_2x = UNREACHED
    z = next((p for p in initial.array if inside(p, first_centre, first_radius)), None)
    if z is not None:
        T_x = 0.0
    if any(inside(p, double_centre, double_radius) for p in initial.array):
        T_2x = 0.0
    points = [tuple(float(c) for c in p) for p in initial.array]
    if z is None:
        sampler = make_sampler(kernel, initial.array)
        for t, p in birth_stream(sampler, rng, t_end, max_events):
            points.append(tuple(float(c) for c in p))
            if T_2x == UNREACHED and inside(p, double_centre, double_radius):
                T_2x = t
            if inside(p, first_centre, first_radius):
                T_x, z = t, np.asarray(p, dtype=float)
                break
    T_x_2x = UNREACHED
    if z is not None:
        restart_centre = z + first_centre
        coupling = SharedMarkCoupling(
            kernel, kernel,
            Configuration(dimension=initial.dimension, points=(tuple(float(c) for c in z),)),
            Configuration(dimension=initial.dimension, points=tuple(points)),
        )
        for t, p, lower in coupling.events(rng, t_end, max_events, t_start=T_x):
            if T_2x == UNREACHED and inside(p, double_centre, double_radius):
                T_2x = t
            if lower and inside(p, restart_centre, first_radius):
                T_x_2x = t - T_x
                break
    result = PathwiseSubadditivity(seed=seed, stream_id=stream_id, x=tuple(float(c) for c in first_centre),
                                   lam=lam, T_x=T_x, T_2x=T_2x, T_x_2x=T_x_2x)
    if not result.holds:
        logger.warning(f"Subadditivity failed for seed {seed}: T(2x)={T_2x:.6g} > {T_x:.6g} + {T_x_2x:.6g}")
    return result
