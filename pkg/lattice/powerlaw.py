"""
The discrete power-law model on Z: a particle is added at site x at rate
min(k, Σ_y n(y)·a_pow(x - y)), several particles per site allowed.

The uncapped field Σ_y n(y)·a_pow(x - y) is kept on a window covering every
site within the truncation radius of a particle, and updated in place by one
slice of the weights per birth.
"""

import logging
import time
from typing import Dict, List, Optional

import numpy as np

from config.settings import settings
from engine.rng import STREAM_MAIN, stream
from lattice.state import LatticeRun, LatticeState
from model.kernel_spec import kernel_spec
from model.kernels import DiscretePowerLaw
from utils.errors import ExplosionGuardError, InvalidArgumentError

logger = logging.getLogger(__name__)


class _FieldWindow:
    """Uncapped field on sites offset..offset+len-1; zero everywhere outside."""

    def __init__(self, weights: np.ndarray):
        self.weights = weights
        self.R = (len(weights) - 1) // 2
        self.offset = 0
        self.field = np.zeros(0)

    def add(self, site: int) -> None:
        lo, hi = site - self.R, site + self.R
        if not len(self.field):
            self.offset = lo
            self.field = np.zeros(hi - lo + 1)
        else:
            self._cover(lo, hi)
        i = lo - self.offset
        self.field[i:i + len(self.weights)] += self.weights

    def _cover(self, lo: int, hi: int) -> None:
        end = self.offset + len(self.field) - 1
        if lo >= self.offset and hi <= end:
            return
        pad = max(self.R, len(self.field) // 2)
        new_lo = min(self.offset, lo - pad) if lo < self.offset else self.offset
        new_end = max(end, hi + pad) if hi > end else end
        grown = np.zeros(new_end - new_lo + 1)
        start = self.offset - new_lo
        grown[start:start + len(self.field)] = self.field
        self.offset, self.field = new_lo, grown


def simulate_discrete_powerlaw(
    alpha: float,
    cap: float,
    t_end: float,
    seed: int,
    *,
    r_max: Optional[int] = None,
    stop_after: Optional[int] = None,
    stream_id: int = STREAM_MAIN,
    max_events: Optional[int] = None,
) -> LatticeRun:
    """
    Run the capped power-law model from one particle at the origin.

    With `stop_after`, the run ends after that many births, which gives runs
    with different α matched event counts.
    """
    if t_end < 0:
        raise InvalidArgumentError(f"t_end must be nonnegative, got {t_end}")
    if stop_after is not None and stop_after < 0:
        raise InvalidArgumentError(f"stop_after must be nonnegative, got {stop_after}")
    try:
        kernel = DiscretePowerLaw(alpha=alpha, cap=cap, r_max=r_max)
    except ValueError as e:
        raise InvalidArgumentError(str(e)) from e
    max_events = settings.max_events if max_events is None else max_events
    started = time.perf_counter()
    rng = stream(seed, stream_id)
    window = _FieldWindow(kernel.weights)
    window.add(0)
    first: Dict[tuple, float] = {(0,): 0.0}
    times: List[float] = []
    sites: List[int] = []
    t = 0.0
    stopped = stop_after == 0
    while not stopped:
        rates = np.minimum(kernel.cap, window.field)
        cumulative = np.cumsum(rates)
        t += rng.exponential(1.0 / cumulative[-1])
        if t > t_end:
            break
        if len(times) >= max_events:
            logger.error(f"Explosion guard tripped after {max_events} power-law events at t={t:.6g}")
            raise ExplosionGuardError(max_events, t)
        i = min(int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right")), len(rates) - 1)
        site = window.offset + i
        window.add(site)
        first.setdefault((site,), t)
        times.append(t)
        sites.append(site)
        stopped = stop_after is not None and len(times) >= stop_after
    t_final = t if stopped and times else t_end
    logger.info(
        f"Power-law run {kernel_spec(kernel)}: {len(times)} births on {len(first)} sites to t={t_final:.4g} "
        f"(R={kernel.truncation}) in {time.perf_counter() - started:.2f}s"
    )
    return LatticeRun(
        dimension=1,
        process=kernel_spec(kernel),
        seed=seed,
        stream_id=stream_id,
        t_end=t_final,
        exclusive=False,
        initial={(0,): 1},
        times=np.array(times, dtype=float),
        sites=np.array(sites, dtype=np.int64).reshape(len(sites), 1),
        first_occupation=first,
        stopped_early=stopped,
    )


def gap_fraction(state: LatticeState) -> float:
    """Vacant sites inside the convex hull of the occupied set, over the hull length."""
    if state.dimension != 1:
        raise InvalidArgumentError("Gap fraction is defined for 1D lattice states")
    if not state.occupancy:
        return 0.0
    occupied = [site[0] for site in state.occupancy]
    hull = max(occupied) - min(occupied) + 1
    return (hull - len(occupied)) / hull
