"""
Branching random walk on R with a population cap.

Free indicator dynamics with radius 1 (each particle reproduces at rate 2,
offspring uniform on [x - 1, x + 1]); whenever the population exceeds n_cap
the leftmost particle is removed.
"""

import bisect
import logging
import time
from typing import Iterator, Optional, Tuple

import numpy as np

from config.settings import settings
from engine.event_log import EventBuffer, EventLog, FrontTrace
from engine.rng import STREAM_MAIN, stream
from model.configuration import Configuration
from utils.errors import ExplosionGuardError, InvalidArgumentError
from utils.logging import run_fields

logger = logging.getLogger(__name__)

BRW_RADIUS = 1.0


def brw_label(n_cap: int) -> str:
    return f"restricted-brw:n={n_cap},r={BRW_RADIUS!r}"


def _steps(n_cap: int, t_end: float, rng: np.random.Generator,
           max_events: int) -> Iterator[Tuple[float, float, Optional[float]]]:
    """Yield (time, newborn position, removed position or None) per birth."""
    population = [0.0]
    t, n = 0.0, 0
    rate_per_particle = 2.0 * BRW_RADIUS
    while True:
        t += rng.exponential(1.0 / (rate_per_particle * len(population)))
        if t > t_end:
            return
        n += 1
        if n > max_events:
            logger.error(f"Explosion guard tripped after {max_events} events at t={t:.6g}")
            raise ExplosionGuardError(max_events, t)
        parent = population[int(rng.integers(len(population)))]
        child = parent + rng.uniform(-BRW_RADIUS, BRW_RADIUS)
        bisect.insort(population, child)
        removed = population.pop(0) if len(population) > n_cap else None
        yield t, child, removed


def _check(n_cap: int, t_end: float) -> None:
    if n_cap < 1:
        raise InvalidArgumentError(f"n_cap must be >= 1, got {n_cap}")
    if t_end < 0:
        raise InvalidArgumentError(f"t_end must be nonnegative, got {t_end}")


def simulate_restricted_brw(n_cap: int, t_end: float, seed: int, *, stream_id: int = STREAM_MAIN,
                            max_events: Optional[int] = None) -> EventLog:
    """Run from a single particle at 0; the log records births and removals in time order."""
    _check(n_cap, t_end)
    max_events = settings.max_events if max_events is None else max_events
    rng = stream(seed, stream_id)
    events = EventBuffer(1)
    for t, child, removed in _steps(n_cap, t_end, rng, max_events):
        events.append(t, [child])
        if removed is not None:
            # the removal is simultaneous with the birth; nudge it to keep times strictly increasing
            events.append(np.nextafter(t, np.inf), [removed], removal=True)
    logger.info(f"Restricted BRW n_cap={n_cap}: {len(events)} events to t={t_end:g}")
    return events.to_log(initial=Configuration.origin(1), kernel=brw_label(n_cap), seed=seed,
                         stream_id=stream_id, t_end=t_end)


def run_restricted_brw_front(n_cap: int, t_end: float, seed: int, *, stream_id: int = STREAM_MAIN,
                             max_events: Optional[int] = None) -> FrontTrace:
    """Rightmost-particle record trace of the capped walk, without storing events."""
    _check(n_cap, t_end)
    max_events = settings.max_events if max_events is None else max_events
    started = time.perf_counter()
    rng = stream(seed, stream_id)
    times, extents = [0.0], [0.0]
    record, n = 0.0, 0
    for t, child, _ in _steps(n_cap, t_end, rng, max_events):
        n += 1
        if child > record:
            record = child
            times.append(t)
            extents.append(child)
    logger.info(
        f"Restricted BRW front n_cap={n_cap}: extent {record:.4g} after {n} births "
        f"in {time.perf_counter() - started:.2f}s",
        extra=run_fields(brw_label(n_cap), seed, stream_id, t_end, n),
    )
    return FrontTrace(kernel=brw_label(n_cap), seed=seed, stream_id=stream_id, t_end=t_end, n_events=n,
                      times=np.array(times), extents=np.array(extents))
