"""
Projection of continuum runs onto a lattice of cells, and the coupled run in
which a lattice growth process is dominated by a continuum one.

A point x belongs to the cell of site z when x ∈ h·z + (-h/2, h/2]^d.
"""

import logging
import math
from typing import Dict, Optional, Set

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config.settings import settings
from engine.event_log import EventBuffer, EventLog
from engine.rng import STREAM_MAIN, stream
from engine.samplers import EnvelopeCellSampler
from lattice.state import LatticeRun, Site, neighbors
from model.configuration import Configuration
from model.kernel_spec import kernel_spec
from utils.errors import ExplosionGuardError, InclusionViolationError, InvalidArgumentError

logger = logging.getLogger(__name__)


def cell_of(x, cell: float) -> Site:
    """Site z with x ∈ cell·z + (-cell/2, cell/2]^d."""
    return tuple(int(math.ceil(float(c) / cell - 0.5)) for c in np.asarray(x).ravel())


def project_to_lattice(log: EventLog, cell: float) -> LatticeRun:
    """Bin every particle of a continuum run into its cell; counts per site may exceed one."""
    if cell <= 0:
        raise InvalidArgumentError(f"cell must be positive, got {cell}")
    if log.dimension not in (1, 2):
        raise InvalidArgumentError(f"Projection is implemented for d in (1, 2), got d={log.dimension}")
    if log.removals.any():
        raise InvalidArgumentError("Runs with removals have no lattice projection")
    initial: Dict[Site, int] = {}
    for x in log.initial.array:
        z = cell_of(x, cell)
        initial[z] = initial.get(z, 0) + 1
    first: Dict[Site, float] = {z: 0.0 for z in initial}
    sites = []
    for t, x in zip(log.times, log.positions):
        z = cell_of(x, cell)
        first.setdefault(z, float(t))
        sites.append(z)
    return LatticeRun(
        dimension=log.dimension,
        process=f"projection:cell={cell!r}|{log.kernel}",
        seed=log.seed,
        stream_id=log.stream_id,
        t_end=log.t_end,
        exclusive=False,
        initial=initial,
        times=log.times.copy(),
        sites=np.array(sites, dtype=np.int64).reshape(len(sites), log.dimension),
        first_occupation=first,
    )


class ProjectionCouplingReport(BaseModel):
    """Continuum run, the lattice run it dominates, and the domination checks made along the way."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kernel: str
    cell: float = Field(..., gt=0, description="Lattice spacing r/(2d)")
    c0: float = Field(..., gt=0, description="Acceptance level of the lattice process")
    site_rate: float = Field(..., gt=0, description="Per-site rate λ = c0·cell^d of the lattice process")
    continuum: EventLog
    lattice: LatticeRun
    checks: int = Field(..., ge=0, description="Sitewise comparisons made")
    violations: int = Field(..., ge=0, description="Sites where the lattice count exceeded the projected continuum count")

    @property
    def dominated(self) -> bool:
        return self.violations == 0


def simulate_projection_coupling(
    kernel,
    t_end: float,
    seed: int,
    *,
    initial: Optional[Configuration] = None,
    stream_id: int = STREAM_MAIN,
    max_events: Optional[int] = None,
) -> ProjectionCouplingReport:
    """
    Run a continuum process and a lattice growth process on one mark stream.

    With (c0, r) the kernel's non-degeneracy witness and cell side h = r/(2d),
    the lattice process accepts a mark at x iff the cell of x or one of its
    lattice neighbors already holds a lattice particle and u < c0. Any two
    points in neighboring cells are within r of each other, so the continuum
    process accepts every such mark too. Binned into cells, the lattice
    process grows at rate c0·h^d at every site next to an occupied one.

    Raises:
        InclusionViolationError: a mark was accepted by the lattice process only.
    """
    if t_end < 0:
        raise InvalidArgumentError(f"t_end must be nonnegative, got {t_end}")
    witness = kernel.witness()
    if witness is None:
        raise InvalidArgumentError(f"Kernel {kernel_spec(kernel)} has no non-degeneracy witness")
    initial = initial if initial is not None else Configuration.origin(1)
    d = initial.dimension
    if len(initial) == 0:
        raise InvalidArgumentError("Initial configuration must be non-empty")
    cell = witness.r / (2 * d)
    max_events = settings.max_events if max_events is None else max_events
    rng = stream(seed, stream_id)

    upper = EnvelopeCellSampler(kernel, initial.array)
    counts_hi: Dict[Site, int] = {}
    counts_lo: Dict[Site, int] = {}
    for x in initial.array:
        z = cell_of(x, cell)
        counts_hi[z] = counts_hi.get(z, 0) + 1
        counts_lo[z] = counts_lo.get(z, 0) + 1
    initial_lo = dict(counts_lo)
    occupied_lo: Set[Site] = set(counts_lo)
    first: Dict[Site, float] = {z: 0.0 for z in counts_lo}
    continuum = EventBuffer(d)
    lattice_times, lattice_sites = [], []
    checks = violations = 0
    t = 0.0
    while True:
        mark = upper.propose(rng)
        if mark is None:
            break
        dt, x, level = mark
        t += dt
        if t > t_end:
            break
        z = cell_of(x, cell)
        hi = level < upper.grid.rate(kernel, x)
        lo = level < witness.c0 and (z in occupied_lo or any(n in occupied_lo for n in neighbors(z)))
        if lo and not hi:
            logger.error(f"Lattice-only acceptance at t={t:.6g}, x={x.tolist()}")
            raise InclusionViolationError(
                f"Mark at t={t:.6g}, x={x.tolist()} accepted by the lattice process only; "
                f"c0={witness.c0:g} is not a lower bound of {kernel_spec(kernel)} here"
            )
        if not hi:
            continue
        if len(continuum) >= max_events:
            logger.error(f"Explosion guard tripped after {max_events} coupled events at t={t:.6g}")
            raise ExplosionGuardError(max_events, t)
        upper.add(x)
        continuum.append(t, x)
        counts_hi[z] = counts_hi.get(z, 0) + 1
        if lo:
            counts_lo[z] = counts_lo.get(z, 0) + 1
            occupied_lo.add(z)
            first.setdefault(z, t)
            lattice_times.append(t)
            lattice_sites.append(z)
        checks += 1
        if counts_lo.get(z, 0) > counts_hi[z]:
            violations += 1

    spec = kernel_spec(kernel)
    site_rate = witness.c0 * cell ** d
    lattice = LatticeRun(
        dimension=d,
        process=f"projection-lattice:lambda={site_rate!r},cell={cell!r}",
        seed=seed,
        stream_id=stream_id,
        t_end=t_end,
        exclusive=False,
        initial=initial_lo,
        times=np.array(lattice_times, dtype=float),
        sites=np.array(lattice_sites, dtype=np.int64).reshape(len(lattice_sites), d),
        first_occupation=first,
    )
    log = continuum.to_log(initial=initial, kernel=spec, seed=seed, stream_id=stream_id, t_end=t_end)
    logger.info(
        f"Projection coupling {spec} to t={t_end:g}: {len(log)} continuum and {len(lattice)} lattice births, "
        f"{violations} violations in {checks} checks"
    )
    return ProjectionCouplingReport(kernel=spec, cell=cell, c0=witness.c0, site_rate=site_rate, continuum=log,
                                    lattice=lattice, checks=checks, violations=violations)
