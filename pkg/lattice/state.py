"""
Occupancy states of lattice growth processes and the runs that produce them.
"""

from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from engine.event_log import EventBuffer, EventLog
from model.configuration import Configuration

Site = Tuple[int, ...]


class LatticeState(BaseModel):
    """Occupancy counts on Z^d at one time; only nonzero sites are stored."""
    model_config = ConfigDict(frozen=True)

    dimension: int = Field(..., ge=1)
    occupancy: Dict[Site, int] = Field(default_factory=dict)
    t: float = Field(0.0, ge=0.0)
    exclusive: bool = Field(False, description="At most one particle per site (Eden)")

    @model_validator(mode="after")
    def validate_counts(self):
        for site, count in self.occupancy.items():
            if len(site) != self.dimension:
                raise ValueError(f"Site {site} does not have dimension {self.dimension}")
            if count <= 0:
                raise ValueError(f"Stored counts must be positive, got {count} at {site}")
            if self.exclusive and count != 1:
                raise ValueError(f"Exclusive occupancy allows one particle per site, got {count} at {site}")
        return self

    @property
    def total(self) -> int:
        return sum(self.occupancy.values())

    @property
    def sites(self) -> List[Site]:
        return sorted(self.occupancy)

    def is_occupied(self, site: Site) -> bool:
        return site in self.occupancy

    def count(self, site: Site) -> int:
        return self.occupancy.get(tuple(site), 0)


class LatticeRun(BaseModel):
    """
    Event history of a lattice run.

    Event i places one particle at sites[i] at times[i]; `first_occupation`
    maps each site to the time it first became occupied (0 for the start).
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dimension: int
    process: str = Field(..., description="Process label, e.g. 'eden:lambda=1.0' or a kernel spec")
    seed: int
    stream_id: int = 0
    t_end: float
    exclusive: bool
    initial: Dict[Site, int]
    times: np.ndarray
    sites: np.ndarray
    first_occupation: Dict[Site, float]
    stopped_early: bool = Field(False, description="Run ended at a stopping condition before t_end")

    def __len__(self) -> int:
        return len(self.times)

    def state_at(self, t: float) -> LatticeState:
        upto = int(np.searchsorted(self.times, t, side="right"))
        occupancy = dict(self.initial)
        for site in self.sites[:upto]:
            key = tuple(int(c) for c in site)
            occupancy[key] = occupancy.get(key, 0) + 1
        return LatticeState(dimension=self.dimension, occupancy=occupancy, t=min(t, self.t_end),
                            exclusive=self.exclusive)

    def final_state(self) -> LatticeState:
        return self.state_at(self.t_end)

    def occupation_time(self, site: Site) -> Optional[float]:
        return self.first_occupation.get(tuple(site))

    def to_event_log(self) -> EventLog:
        """The run in the engine's JSON-lines schema, with integer sites."""
        initial_points = []
        for site, count in self.initial.items():
            if count != 1:
                raise ValueError("Only runs started from single-occupancy sites map onto an event log")
            initial_points.append(tuple(float(c) for c in site))
        buffer = EventBuffer(self.dimension)
        for t, site in zip(self.times, self.sites):
            buffer.append(t, site)
        return buffer.to_log(initial=Configuration(dimension=self.dimension, points=tuple(initial_points)),
                             kernel=self.process, seed=self.seed, stream_id=self.stream_id, t_end=self.t_end,
                             lattice=True)


def neighbors(site: Site) -> List[Site]:
    """Nearest neighbors of a site in Z^d."""
    out = []
    for axis in range(len(site)):
        for step in (-1, 1):
            n = list(site)
            n[axis] += step
            out.append(tuple(n))
    return out
