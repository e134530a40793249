"""
Eden growth on Z^d: a vacant site with at least one occupied neighbor becomes
occupied at rate λ.

Simulated through the boundary set (vacant sites next to the occupied set):
the total rate is λ·|boundary| and the next site is uniform on the boundary.
"""

import logging
import math
import time
from typing import Dict, List, Optional, Set

import numpy as np

from config.settings import settings
from engine.rng import STREAM_MAIN, stream
from lattice.state import LatticeRun, LatticeState, Site, neighbors
from utils.errors import ExplosionGuardError, InvalidArgumentError

logger = logging.getLogger(__name__)


class _Boundary:
    """Vacant sites adjacent to the occupied set, with O(1) uniform choice and removal."""

    def __init__(self):
        self.sites: List[Site] = []
        self.index: Dict[Site, int] = {}

    def __len__(self) -> int:
        return len(self.sites)

    def add(self, site: Site) -> None:
        if site not in self.index:
            self.index[site] = len(self.sites)
            self.sites.append(site)

    def remove(self, site: Site) -> None:
        i = self.index.pop(site)
        last = self.sites.pop()
        if i < len(self.sites):
            self.sites[i] = last
            self.index[last] = i


def eden_label(lam: float) -> str:
    return f"eden:lambda={float(lam)!r}"


def simulate_eden(
    lam: float,
    d: int,
    t_end: float,
    seed: int,
    *,
    target: Optional[Site] = None,
    stream_id: int = STREAM_MAIN,
    max_events: Optional[int] = None,
) -> LatticeRun:
    """
    Eden growth from a single occupied origin.

    With `target`, the run stops as soon as that site is occupied.
    """
    if d not in (1, 2):
        raise InvalidArgumentError(f"Eden growth is implemented for d in (1, 2), got d={d}")
    if lam <= 0:
        raise InvalidArgumentError(f"lambda must be positive, got {lam}")
    if t_end < 0:
        raise InvalidArgumentError(f"t_end must be nonnegative, got {t_end}")
    if target is not None and len(target) != d:
        raise InvalidArgumentError(f"Target {target} does not have dimension {d}")
    max_events = settings.max_events if max_events is None else max_events
    started = time.perf_counter()
    rng = stream(seed, stream_id)
    origin: Site = (0,) * d
    occupied: Set[Site] = {origin}
    first: Dict[Site, float] = {origin: 0.0}
    boundary = _Boundary()
    for n in neighbors(origin):
        boundary.add(n)
    times: List[float] = []
    sites: List[Site] = []
    target = tuple(target) if target is not None else None
    stopped = target in occupied
    t = 0.0
    while not stopped:
        t += rng.exponential(1.0 / (lam * len(boundary)))
        if t > t_end:
            break
        if len(times) >= max_events:
            logger.error(f"Explosion guard tripped after {max_events} Eden events at t={t:.6g}")
            raise ExplosionGuardError(max_events, t)
        site = boundary.sites[int(rng.integers(len(boundary)))]
        boundary.remove(site)
        occupied.add(site)
        first[site] = t
        times.append(t)
        sites.append(site)
        for n in neighbors(site):
            if n not in occupied:
                boundary.add(n)
        stopped = site == target
    logger.debug(
        f"Eden d={d} λ={lam:g}: {len(times)} sites to t={t if stopped else t_end:.4g} "
        f"in {time.perf_counter() - started:.2f}s"
    )
    return LatticeRun(
        dimension=d,
        process=eden_label(lam),
        seed=seed,
        stream_id=stream_id,
        t_end=t if stopped else t_end,
        exclusive=True,
        initial={origin: 1},
        times=np.array(times, dtype=float),
        sites=np.array(sites, dtype=np.int64).reshape(len(sites), d),
        first_occupation=first,
        stopped_early=stopped,
    )


def covered_radius(state: LatticeState) -> float:
    """
    Radius of the largest Euclidean ball around the origin whose lattice sites are all occupied.

    The vacant site nearest the origin always has an occupied neighbor, so it
    is enough to scan the vacant neighbors of occupied sites.
    """
    if not state.is_occupied((0,) * state.dimension):
        return 0.0
    nearest = math.inf
    for site in state.occupancy:
        for n in neighbors(site):
            if n not in state.occupancy:
                nearest = min(nearest, math.sqrt(sum(c * c for c in n)))
    return nearest


def vacancy_bound(site: Site, lam: float, t: float) -> float:
    """e^{|z|_1} e^{-λ(1 - 1/e) t}, an upper bound on P(site vacant at t)."""
    l1 = sum(abs(c) for c in site)
    return math.exp(l1 - lam * (1.0 - math.exp(-1.0)) * t)
