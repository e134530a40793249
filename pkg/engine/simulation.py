"""
Exact event-driven simulation of spatial birth processes.

`simulate` records every birth; `run_front` keeps only the record extent in
one direction; `simulate_coupled` drives two processes with one stream of
Poisson marks so that the smaller process stays inside the larger one.
"""

import logging
import time
from typing import Iterator, Optional, Tuple

import numpy as np

from config.settings import settings
from engine.event_log import EventBuffer, EventLog, FrontTrace, unit_direction
from engine.grid_index import GridIndex
from engine.rng import STREAM_MAIN, stream
from engine.samplers import BirthSampler, EnvelopeCellSampler, make_sampler
from model.configuration import Configuration
from model.kernel_spec import kernel_spec
from utils.errors import ExplosionGuardError, InclusionViolationError, InvalidArgumentError
from utils.logging import run_fields

logger = logging.getLogger(__name__)


def _check_run(initial: Configuration, t_end: float) -> None:
    if t_end < 0 or not np.isfinite(t_end):
        raise InvalidArgumentError(f"t_end must be a finite nonnegative time, got {t_end}")
    if len(initial) == 0:
        raise InvalidArgumentError("The initial configuration must be nonempty")


def birth_stream(
    sampler: BirthSampler,
    rng: np.random.Generator,
    t_end: float,
    max_events: int,
    t_start: float = 0.0,
) -> Iterator[Tuple[float, np.ndarray]]:
    """Yield successive births (and register them with the sampler) until the next one would pass t_end."""
    t, n = t_start, 0
    while True:
        birth = sampler.next_birth(rng, t, t_end)
        if birth is None:
            return
        t, x = birth
        n += 1
        if n > max_events:
            logger.error(f"Explosion guard tripped after {max_events} events at t={t:.6g}")
            raise ExplosionGuardError(max_events, t)
        sampler.add(x)
        yield t, x


def simulate(
    kernel,
    initial: Configuration,
    t_end: float,
    seed: int,
    *,
    stream_id: int = STREAM_MAIN,
    max_events: Optional[int] = None,
) -> EventLog:
    """
    Exact simulation of the birth process from `initial` up to `t_end`.

    Deterministic given (kernel, initial, t_end, seed, stream_id).

    Raises:
        InvalidArgumentError: negative t_end, empty initial configuration, or a lattice-only kernel.
        ExplosionGuardError: more than `max_events` births (default from settings).
    """
    _check_run(initial, t_end)
    max_events = settings.max_events if max_events is None else max_events
    started = time.perf_counter()
    rng = stream(seed, stream_id)
    sampler = make_sampler(kernel, initial.array)
    events = EventBuffer(initial.dimension)
    for t, x in birth_stream(sampler, rng, t_end, max_events):
        events.append(t, x)
    log = events.to_log(initial=initial, kernel=kernel_spec(kernel), seed=seed, stream_id=stream_id, t_end=t_end)
    extent = float(np.max(np.linalg.norm(log.positions, axis=1))) if len(log) else 0.0
    logger.info(
        f"Simulated {len(log)} births of {log.kernel} to t={t_end:g} "
        f"(max |x| {extent:.4g}) in {time.perf_counter() - started:.2f}s",
        extra=run_fields(log.kernel, seed, stream_id, t_end, len(log)),
    )
    return log


def run_front(
    kernel,
    initial: Configuration,
    t_end: float,
    seed: int,
    direction=None,
    *,
    stream_id: int = STREAM_MAIN,
    max_events: Optional[int] = None,
) -> FrontTrace:
    """
    Record-extent trace max ⟨x, direction⟩ without storing events.

    In 1D the interior births that can neither change a rate nor set a record
    are skipped, so the cost follows the front rather than the bulk.
    """
    _check_run(initial, t_end)
    max_events = settings.max_events if max_events is None else max_events
    started = time.perf_counter()
    u = unit_direction(direction, initial.dimension)
    rng = stream(seed, stream_id)
    sampler = make_sampler(kernel, initial.array, prune_interior=True)
    record = float(np.max(initial.array @ u))
    times, extents = [0.0], [record]
    n = 0
    for t, x in birth_stream(sampler, rng, t_end, max_events):
        n += 1
        projected = float(x @ u)
        if projected > record:
            record = projected
            times.append(t)
            extents.append(record)
    logger.info(
        f"Front run of {kernel_spec(kernel)} to t={t_end:g}: extent {record:.4g} after {n} births "
        f"in {time.perf_counter() - started:.2f}s",
        extra=run_fields(kernel_spec(kernel), seed, stream_id, t_end, n),
    )
    return FrontTrace(kernel=kernel_spec(kernel), seed=seed, stream_id=stream_id, t_end=t_end, n_events=n,
                      times=np.array(times), extents=np.array(extents))


class SharedMarkCoupling:
    """
    Two birth processes driven by one stream of Poisson marks (s, x, u).

    Marks are proposed from the upper process's cell envelope, taken over both
    kernels. The upper process accepts a mark iff u < b_hi(x, η_hi), the lower
    one iff u < b_lo(x, η_lo). Inclusion η_lo ⊆ η_hi holds at every event as
    long as no mark is accepted by the lower process alone; such a mark raises.
    """

    def __init__(self, kernel_lo, kernel_hi, initial_lo: Configuration, initial_hi: Configuration):
        if initial_lo.dimension != initial_hi.dimension:
            raise InvalidArgumentError("Coupled configurations must share a dimension")
        if not initial_lo.is_subset_of(initial_hi):
            raise InvalidArgumentError("The lower initial configuration must be a subset of the upper one")
        self.kernel_lo = kernel_lo
        self.kernel_hi = kernel_hi
        self.upper = EnvelopeCellSampler(kernel_hi, initial_hi.array, kernels=[kernel_lo])
        self.lower = GridIndex(self.upper.grid.cell_size, initial_lo.dimension)
        self.lower.add_many(initial_lo.array)

    def next_event(self, rng: np.random.Generator, t: float, t_end: float) -> Optional[Tuple[float, np.ndarray, bool]]:
        """Next mark accepted by the upper process: (time, position, accepted by the lower one too)."""
        while True:
            mark = self.upper.propose(rng)
            if mark is None:
                return None
            dt, x, level = mark
            t += dt
            if t > t_end:
                return None
            hi = level < self.upper.grid.rate(self.kernel_hi, x)
            lo = level < self.lower.rate(self.kernel_lo, x)
            if lo and not hi:
                logger.error(f"Inclusion violated at t={t:.6g}, x={x.tolist()}")
                raise InclusionViolationError(
                    f"Mark at t={t:.6g}, x={x.tolist()} accepted by the lower process only; "
                    "the kernels are not ordered on these configurations"
                )
            if hi:
                return t, x, lo

    def add(self, x: np.ndarray, lower: bool) -> None:
        self.upper.add(x)
        if lower:
            self.lower.add(x)

    def events(self, rng: np.random.Generator, t_end: float, max_events: int,
               t_start: float = 0.0) -> Iterator[Tuple[float, np.ndarray, bool]]:
        t, n = t_start, 0
        while True:
            event = self.next_event(rng, t, t_end)
            if event is None:
                return
            t, x, lower = event
            n += 1
            if n > max_events:
                logger.error(f"Explosion guard tripped after {max_events} coupled events at t={t:.6g}")
                raise ExplosionGuardError(max_events, t)
            self.add(x, lower)
            yield event


def simulate_coupled(
    kernel_lo,
    kernel_hi,
    initial_lo: Configuration,
    initial_hi: Configuration,
    t_end: float,
    seed: int,
    *,
    stream_id: int = STREAM_MAIN,
    max_events: Optional[int] = None,
) -> Tuple[EventLog, EventLog]:
    """
    Simulate two ordered processes on one probability space.

    Returns (log_lo, log_hi); every event of log_lo appears in log_hi with the
    same time and position.

    Raises:
        InclusionViolationError: a mark was accepted by the lower process only.
    """
    _check_run(initial_lo, t_end)
    _check_run(initial_hi, t_end)
    max_events = settings.max_events if max_events is None else max_events
    rng = stream(seed, stream_id)
    coupling = SharedMarkCoupling(kernel_lo, kernel_hi, initial_lo, initial_hi)
    lo_events, hi_events = EventBuffer(initial_lo.dimension), EventBuffer(initial_hi.dimension)
    for t, x, lower in coupling.events(rng, t_end, max_events):
        hi_events.append(t, x)
        if lower:
            lo_events.append(t, x)
    log_lo = lo_events.to_log(initial=initial_lo, kernel=kernel_spec(kernel_lo), seed=seed,
                              stream_id=stream_id, t_end=t_end)
    log_hi = hi_events.to_log(initial=initial_hi, kernel=kernel_spec(kernel_hi), seed=seed,
                              stream_id=stream_id, t_end=t_end)
    logger.info(
        f"Coupled run to t={t_end:g}: {len(log_lo)} lower and {len(log_hi)} upper births, "
        f"{coupling.upper.proposals} marks"
    )
    return log_lo, log_hi
