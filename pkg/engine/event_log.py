"""
Event logs of birth (and removal) events, their JSON-lines codec and the
record-extent front extracted from them.

JSON-lines layout: one header record, then one record per event.

    {"type": "header", "dimension": 1, "kernel": "trunc:k=2.0,r=1.0", "seed": 7,
     "stream_id": 0, "t_end": 100.0, "lattice": false, "initial": [[0.0]]}
    {"t": 0.4127, "x": [0.3311], "op": "birth"}
    {"t": 0.9023, "x": [-0.1207], "op": "remove"}

Floats are written with their shortest round-trip repr, so parsing a file and
writing it back yields the same bytes.
"""

import hashlib
import io
import json
import logging
from pathlib import Path
from typing import IO, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from model.configuration import Configuration
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

OP_BIRTH = "birth"
OP_REMOVE = "remove"


class EventLog(BaseModel):
    """Ordered events of one run; times strictly increase and the first is positive."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dimension: int = Field(..., ge=1)
    initial: Configuration
    kernel: str = Field(..., description="Kernel spec string, or a process label such as 'restricted-brw:n=8'")
    seed: int = Field(..., ge=0)
    stream_id: int = Field(0, ge=0)
    t_end: float = Field(..., ge=0)
    lattice: bool = Field(False, description="Positions are integer sites")
    times: np.ndarray
    positions: np.ndarray
    removals: np.ndarray = Field(..., description="True where the event is a removal rather than a birth")

    @model_validator(mode="after")
    def validate_events(self):
        n = len(self.times)
        if self.positions.shape != (n, self.dimension) or self.removals.shape != (n,):
            raise ValueError(
                f"Event arrays disagree: {n} times, positions {self.positions.shape}, removals {self.removals.shape}"
            )
        if n and self.times[0] <= 0:
            raise ValueError("First event time must be positive")
        if n > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("Event times must strictly increase")
        return self

    @classmethod
    def from_events(
        cls,
        *,
        initial: Configuration,
        kernel: str,
        seed: int,
        t_end: float,
        events: List[Tuple[float, np.ndarray]],
        removals: Optional[List[bool]] = None,
        stream_id: int = 0,
        lattice: bool = False,
    ) -> "EventLog":
        buffer = EventBuffer(initial.dimension)
        flags = removals if removals is not None else [False] * len(events)
        for (t, x), flag in zip(events, flags):
            buffer.append(t, x, flag)
        return buffer.to_log(initial=initial, kernel=kernel, seed=seed, t_end=t_end,
                             stream_id=stream_id, lattice=lattice)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def n_births(self) -> int:
        return int(np.count_nonzero(~self.removals))

    @property
    def birth_times(self) -> np.ndarray:
        return self.times[~self.removals]

    @property
    def birth_positions(self) -> np.ndarray:
        return self.positions[~self.removals]

    def occupancy_at(self, t: float) -> Dict[Tuple[float, ...], int]:
        """
        Replay the initial configuration and every event at time <= t as a multiset.

        Keys keep the order in which positions first appeared. Lattice runs may
        place several particles on one site; the count says how many.

        Raises:
            InvalidArgumentError: a removal names a position that is not occupied.
        """
        upto = int(np.searchsorted(self.times, t, side="right"))
        counts: Dict[Tuple[float, ...], int] = {tuple(p): 1 for p in self.initial.points}
        for flag, p in zip(self.removals[:upto], self.positions[:upto]):
            key = tuple(map(float, p))
            if not flag:
                counts[key] = counts.get(key, 0) + 1
            elif key not in counts:
                raise InvalidArgumentError(f"Removal of {key} which is not occupied")
            elif counts[key] == 1:
                del counts[key]
            else:
                counts[key] -= 1
        return counts

    def configuration_at(self, t: float) -> Configuration:
        """Occupied positions at time t; repeated lattice sites appear once."""
        return Configuration(dimension=self.dimension, points=tuple(self.occupancy_at(t)))

    def final_configuration(self) -> Configuration:
        return self.configuration_at(np.inf)

    def front_series(self, direction=None) -> Tuple[np.ndarray, np.ndarray]:
        """
        Record extent max ⟨x, direction⟩ over the particles present.

        Returns (times, extents) at t = 0 and at every birth that sets a new
        record. Removals take the leftmost particle, which is never the
        rightmost while two or more are present, so in 1D the record is the
        current maximum.
        """
        u = unit_direction(direction, self.dimension)
        current = float(np.max(self.initial.array @ u))
        times, extents = [0.0], [current]
        projected = self.positions @ u
        births = ~self.removals
        # running maximum over births, keep the points where it increases
        if births.any():
            bt = self.times[births]
            bp = projected[births]
            running = np.maximum.accumulate(np.maximum(bp, current))
            rises = np.flatnonzero(np.diff(np.concatenate([[current], running])) > 0)
            times.extend(bt[rises].tolist())
            extents.extend(running[rises].tolist())
        return np.array(times), np.array(extents)

    # codec

    def header(self) -> dict:
        return {
            "type": "header",
            "dimension": self.dimension,
            "kernel": self.kernel,
            "seed": self.seed,
            "stream_id": self.stream_id,
            "t_end": float(self.t_end),
            "lattice": self.lattice,
            "initial": [self._coords(p) for p in self.initial.array],
        }

    def _coords(self, p: np.ndarray) -> list:
        return [int(c) for c in p] if self.lattice else [float(c) for c in p]

    def iter_lines(self) -> Iterable[str]:
        yield json.dumps(self.header())
        for t, p, flag in zip(self.times, self.positions, self.removals):
            yield json.dumps({"t": float(t), "x": self._coords(p), "op": OP_REMOVE if flag else OP_BIRTH})

    def write_jsonl(self, target: Union[str, Path, IO[str]]) -> None:
        if isinstance(target, (str, Path)):
            path = Path(target)
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("w", encoding="utf-8") as fh:
                self.write_jsonl(fh)
            logger.info(f"Wrote {len(self)} events to {path}")
            return
        for line in self.iter_lines():
            target.write(line + "\n")

    def to_jsonl(self) -> str:
        buffer = io.StringIO()
        self.write_jsonl(buffer)
        return buffer.getvalue()

    def digest(self) -> str:
        """sha256 of the JSON-lines serialization."""
        h = hashlib.sha256()
        for line in self.iter_lines():
            h.update(line.encode("utf-8"))
            h.update(b"\n")
        return h.hexdigest()

    @classmethod
    def read_jsonl(cls, source: Union[str, Path, IO[str]]) -> "EventLog":
        if isinstance(source, (str, Path)):
            with Path(source).open("r", encoding="utf-8") as fh:
                return cls.read_jsonl(fh)
        lines = [line for line in source if line.strip()]
        if not lines:
            raise InvalidArgumentError("Event log is empty: missing header record")
        header = json.loads(lines[0])
        if header.get("type") != "header":
            raise InvalidArgumentError("First record of an event log must be the header")
        d = int(header["dimension"])
        initial = Configuration(dimension=d, points=tuple(tuple(float(c) for c in p) for p in header["initial"]))
        events, removals = [], []
        for line in lines[1:]:
            record = json.loads(line)
            if record.get("op") not in (OP_BIRTH, OP_REMOVE):
                raise InvalidArgumentError(f"Unknown event op {record.get('op')!r}")
            events.append((float(record["t"]), np.array(record["x"], dtype=float)))
            removals.append(record["op"] == OP_REMOVE)
        return cls.from_events(initial=initial, kernel=header["kernel"], seed=int(header["seed"]),
                               t_end=float(header["t_end"]), events=events, removals=removals,
                               stream_id=int(header.get("stream_id", 0)), lattice=bool(header.get("lattice", False)))

    @classmethod
    def from_jsonl(cls, text: str) -> "EventLog":
        return cls.read_jsonl(io.StringIO(text))


def unit_direction(direction, dimension: int) -> np.ndarray:
    if direction is None:
        u = np.zeros(dimension)
        u[0] = 1.0
        return u
    u = np.asarray(direction, dtype=float).ravel()
    if u.size != dimension:
        raise InvalidArgumentError(f"Direction has {u.size} coordinates, log has dimension {dimension}")
    norm = np.linalg.norm(u)
    if norm == 0:
        raise InvalidArgumentError("Direction must be nonzero")
    return u / norm


class FrontTrace(BaseModel):
    """Record-extent times of one run, without the events themselves."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kernel: str
    seed: int
    stream_id: int = 0
    t_end: float
    n_events: int = Field(..., ge=0, description="Births simulated; interior births that cannot move the front may be skipped")
    times: np.ndarray
    extents: np.ndarray

    def front_series(self, direction=None) -> Tuple[np.ndarray, np.ndarray]:
        return self.times, self.extents


class EventBuffer:
    """Flat append-only storage for events while a run is in progress."""

    def __init__(self, dimension: int):
        self.dimension = dimension
        self.times: List[float] = []
        self.coords: List[float] = []
        self.removals: List[bool] = []

    def __len__(self) -> int:
        return len(self.times)

    def append(self, t: float, x, removal: bool = False) -> None:
        self.times.append(float(t))
        self.coords.extend(float(c) for c in np.asarray(x).ravel())
        self.removals.append(removal)

    def to_log(self, *, initial: Configuration, kernel: str, seed: int, t_end: float,
               stream_id: int = 0, lattice: bool = False) -> EventLog:
        return EventLog(
            dimension=self.dimension,
            initial=initial,
            kernel=kernel,
            seed=seed,
            stream_id=stream_id,
            t_end=t_end,
            lattice=lattice,
            times=np.array(self.times, dtype=float),
            positions=np.array(self.coords, dtype=float).reshape(len(self.times), self.dimension),
            removals=np.array(self.removals, dtype=bool),
        )
