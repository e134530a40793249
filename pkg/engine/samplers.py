"""
Exact next-birth samplers.

Each sampler owns the state it needs to draw the next birth of a configuration
under one kernel. `next_birth(rng, t, t_end)` returns the next (time, position)
or None once the next event would fall after t_end; `add(x)` registers the
birth. Three strategies:

  - StepCellSampler     1D indicator-type kernels: exact piecewise-constant
                        rate per cell, inverse-CDF over cells and within a cell.
  - EnvelopeCellSampler anything else in 1D/2D: uniform proposals in each grid
                        cell at the cell's rate envelope, thinned by b(x)/envelope.
  - BranchingSampler    uncapped linear kernels: total rate |η|·∫a, birth at a
                        uniformly chosen parent plus an offset drawn from a.
"""

import bisect
import logging
import math
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from engine.grid_index import Cell, GridIndex
from model.kernels import DiscretePowerLaw, IndicatorSum, TruncatedIndicator, ZeroKernel
from model.step_profile import profile_mass, sample_step, step_profile
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

Birth = Tuple[float, np.ndarray]


class BirthSampler(ABC):
    dimension: int

    @property
    @abstractmethod
    def total_rate(self) -> float:
        """Current total birth rate c(η) (for the thinning sampler, the proposal rate)."""

    @abstractmethod
    def next_birth(self, rng: np.random.Generator, t: float, t_end: float) -> Optional[Birth]:
        ...

    @abstractmethod
    def add(self, x: np.ndarray) -> None:
        ...


def saturation_count(kernel) -> Optional[int]:
    """Smallest particle count at which an indicator kernel reaches its cap; None if it never does."""
    if isinstance(kernel, TruncatedIndicator):
        return max(1, math.ceil(kernel.cap))
    if isinstance(kernel, IndicatorSum):
        if not all(isinstance(c, TruncatedIndicator) for c in kernel.components):
            return None
        return max(saturation_count(c) for c in kernel.components)
    if isinstance(kernel, ZeroKernel):
        return 0
    return None


class StepCellSampler(BirthSampler):
    """
    Exact 1D sampler for b(x, η) = g(#{y : |x - y| <= r}).

    The line is cut into cells of width r. A cell's rate profile depends only
    on particles in the cell and its two neighbors, so a birth refreshes three
    cells. A cell whose profile sits at the cap everywhere is saturated: it
    stays so forever, its mass is cap·r and positions in it are uniform. Only
    the `saturation_count` extreme particles on each side of a saturated cell
    can influence its neighbors, so the rest are dropped.

    With `prune_interior`, cells that are saturated along with both neighbors
    are removed from the total: births there change no rate anywhere and
    cannot set a record extent, so by Poisson superposition skipping them
    leaves the law of the front unchanged.
    """

    dimension = 1

    def __init__(self, kernel, initial: np.ndarray, prune_interior: bool = False):
        self.kernel = kernel
        self.width = float(kernel.interaction_range)
        self.prune_interior = prune_interior
        self.keep = saturation_count(kernel)
        self.rate_cap = float(kernel.rate_from_count(self.keep)) if self.keep else math.inf
        self.cells: Dict[int, List[float]] = {}
        self.saturated: Set[int] = set()
        self.frozen: Set[int] = set()
        self.profiles: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}
        self._lo = 0
        self._masses = np.zeros(0)
        points = np.asarray(initial, dtype=float).ravel()
        touched: Set[int] = set()
        for p in points:
            c = self._insert(float(p))
            touched.update((c - 1, c, c + 1))
        for c in sorted(touched):
            self._refresh(c)

    def cell_of(self, x: float) -> int:
        return math.floor(x / self.width)

    def _slot(self, c: int) -> int:
        if not len(self._masses):
            self._lo = c - 8
            self._masses = np.zeros(17)
        if c < self._lo:
            pad = max(self._lo - c, len(self._masses))
            self._masses = np.concatenate([np.zeros(pad), self._masses])
            self._lo -= pad
        elif c >= self._lo + len(self._masses):
            pad = max(c - self._lo - len(self._masses) + 1, len(self._masses))
            self._masses = np.concatenate([self._masses, np.zeros(pad)])
        return c - self._lo

    def _insert(self, x: float) -> int:
        c = self.cell_of(x)
        members = self.cells.setdefault(c, [])
        bisect.insort(members, x)
        if c in self.saturated and len(members) > 2 * self.keep:
            del members[self.keep:-self.keep]
        return c

    def _block_points(self, c: int) -> np.ndarray:
        return np.array(self.cells.get(c - 1, []) + self.cells.get(c, []) + self.cells.get(c + 1, []))

    def _refresh(self, c: int) -> None:
        if c in self.saturated:
            return
        lo = c * self.width
        edges, values = step_profile(self._block_points(c), self.width, self.kernel.rate_from_count,
                                     lo=lo, hi=lo + self.width)
        mass = profile_mass(edges, values)
        slot = self._slot(c)
        if values.size and np.all(values >= self.rate_cap):
            self.saturated.add(c)
            self.profiles.pop(c, None)
            members = self.cells.get(c)
            if members and len(members) > 2 * self.keep:
                del members[self.keep:-self.keep]
            self._masses[slot] = self.rate_cap * self.width
            if self.prune_interior:
                for n in (c - 1, c, c + 1):
                    self._freeze_if_interior(n)
        else:
            self.profiles[c] = (edges, values)
            self._masses[slot] = mass

    def _freeze_if_interior(self, c: int) -> None:
        if c in self.frozen or not {c - 1, c, c + 1} <= self.saturated:
            return
        self.frozen.add(c)
        self._masses[self._slot(c)] = 0.0

    @property
    def total_rate(self) -> float:
        return float(self._masses.sum())

    def next_birth(self, rng: np.random.Generator, t: float, t_end: float) -> Optional[Birth]:
        cumulative = np.cumsum(self._masses)
        total = cumulative[-1] if len(cumulative) else 0.0
        if total <= 0.0:
            return None
        t = t + rng.exponential(1.0 / total)
        if t > t_end:
            return None
        slot = int(np.searchsorted(cumulative, rng.random() * total, side="right"))
        slot = min(slot, len(cumulative) - 1)
        while self._masses[slot] <= 0.0:
            slot -= 1
        c = slot + self._lo
        if c in self.saturated:
            x = (c + rng.random()) * self.width
        else:
            edges, values = self.profiles[c]
            x = sample_step(edges, values, rng.random())
        return t, np.array([x])

    def add(self, x: np.ndarray) -> None:
        c = self._insert(float(np.asarray(x).ravel()[0]))
        for n in (c - 1, c, c + 1):
            self._refresh(n)


class EnvelopeCellSampler(BirthSampler):
    """
    Exact thinning sampler on a grid with cell size equal to the interaction range.

    Marks (s, x, u) are proposed at rate env(c)·|c| in every cell c, with
    env(c) = max over `kernels` of kernel.envelope(particles in the 3^d block
    around c). A mark at x is accepted by a kernel iff u·env(c) < b(x, η).
    Passing several kernels lets one mark stream drive coupled processes.
    """

    def __init__(self, kernel, initial: np.ndarray, kernels: Sequence = ()):
        initial = np.asarray(initial, dtype=float)
        self.dimension = initial.shape[1]
        self.kernel = kernel
        self.kernels = [kernel, *kernels]
        width = max(float(k.interaction_range) for k in self.kernels)
        self.grid = GridIndex(width, self.dimension)
        self.cell_volume = width ** self.dimension
        self._slots: Dict[Cell, int] = {}
        self._cells: List[Cell] = []
        self._env = np.zeros(64)
        self.proposals = 0
        for x in initial:
            self.add(x)

    def _set_envelope(self, cell: Cell) -> None:
        slot = self._slots.get(cell)
        if slot is None:
            slot = len(self._cells)
            self._slots[cell] = slot
            self._cells.append(cell)
            if slot == len(self._env):
                self._env = np.concatenate([self._env, np.zeros_like(self._env)])
        n = self.grid.near_count(cell)
        self._env[slot] = max(k.envelope(n) for k in self.kernels)

    def add(self, x: np.ndarray) -> None:
        for cell in self.grid.add(np.asarray(x, dtype=float).ravel()):
            self._set_envelope(cell)

    @property
    def total_rate(self) -> float:
        return float(self._env[: len(self._cells)].sum() * self.cell_volume)

    def propose(self, rng: np.random.Generator) -> Optional[Tuple[float, np.ndarray, float]]:
        """One proposal mark: (waiting time, location, level u·env)."""
        env = self._env[: len(self._cells)]
        cumulative = np.cumsum(env)
        if not len(cumulative) or cumulative[-1] <= 0.0:
            return None
        dt = rng.exponential(1.0 / (cumulative[-1] * self.cell_volume))
        slot = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
        slot = min(slot, len(cumulative) - 1)
        while env[slot] <= 0.0:
            slot -= 1
        corner = np.array(self._cells[slot], dtype=float)
        x = (corner + rng.random(self.dimension)) * self.grid.cell_size
        self.proposals += 1
        return dt, x, rng.random() * env[slot]

    def next_birth(self, rng: np.random.Generator, t: float, t_end: float) -> Optional[Birth]:
        while True:
            mark = self.propose(rng)
            if mark is None:
                return None
            dt, x, level = mark
            t += dt
            if t > t_end:
                return None
            if level < self.grid.rate(self.kernel, x):
                return t, x


class BranchingSampler(BirthSampler):
    """Births of an uncapped linear kernel: every particle reproduces at rate ∫a, offspring displaced by a."""

    def __init__(self, kernel, initial: np.ndarray):
        initial = np.asarray(initial, dtype=float)
        self.dimension = initial.shape[1]
        self.profile = kernel.profile
        self.rate_per_particle = kernel.dominating_integral(self.dimension)
        self.points: List[np.ndarray] = [p.copy() for p in initial]

    @property
    def total_rate(self) -> float:
        return len(self.points) * self.rate_per_particle

    def next_birth(self, rng: np.random.Generator, t: float, t_end: float) -> Optional[Birth]:
        total = self.total_rate
        if total <= 0.0:
            return None
        t = t + rng.exponential(1.0 / total)
        if t > t_end:
            return None
        parent = self.points[int(rng.integers(len(self.points)))]
        return t, parent + self.profile.sample_offset(rng, self.dimension)

    def add(self, x: np.ndarray) -> None:
        self.points.append(np.asarray(x, dtype=float).ravel())


def make_sampler(kernel, initial: np.ndarray, prune_interior: bool = False) -> BirthSampler:
    """Pick the exact sampler for a kernel and dimension."""
    if isinstance(kernel, DiscretePowerLaw):
        raise InvalidArgumentError("The discrete power-law kernel is lattice-only; use lattice.simulate_discrete_powerlaw")
    initial = np.asarray(initial, dtype=float)
    d = initial.shape[1]
    if d not in (1, 2):
        raise InvalidArgumentError(f"Simulation is implemented for d in (1, 2), got d={d}")
    if kernel.is_linear:
        sampler: BirthSampler = BranchingSampler(kernel, initial)
    elif d == 1 and kernel.is_step:
        sampler = StepCellSampler(kernel, initial, prune_interior=prune_interior)
    else:
        sampler = EnvelopeCellSampler(kernel, initial)
    logger.debug(f"Using {type(sampler).__name__} for {kernel.kind} kernel in d={d}")
    return sampler
