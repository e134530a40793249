"""
Finite particle configurations η ⊂ R^d.
"""

from functools import cached_property
from typing import Iterable, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

Point = Tuple[float, ...]


class Configuration(BaseModel):
    """
    An immutable, duplicate-free, ordered list of particle positions.

    Births at an occupied point have probability zero, so exact duplicates are
    rejected rather than counted with multiplicity.
    """
    model_config = ConfigDict(frozen=True)

    dimension: int = Field(..., ge=1, description="Spatial dimension d")
    points: Tuple[Point, ...] = Field(default_factory=tuple, description="Particle positions, each with d coordinates")

    @model_validator(mode="after")
    def validate_points(self):
        for p in self.points:
            if len(p) != self.dimension:
                raise ValueError(f"Point {p} has {len(p)} coordinates, expected {self.dimension}")
        if len(set(self.points)) != len(self.points):
            raise ValueError("Configuration contains duplicate points")
        return self

    @classmethod
    def from_array(cls, positions: np.ndarray | Sequence, dimension: int | None = None) -> "Configuration":
        arr = np.asarray(positions, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1) if dimension in (None, 1) else arr.reshape(1, -1)
        return cls(dimension=dimension or arr.shape[1], points=tuple(tuple(map(float, p)) for p in arr))

    @classmethod
    def origin(cls, dimension: int) -> "Configuration":
        return cls(dimension=dimension, points=((0.0,) * dimension,))

    @cached_property
    def array(self) -> np.ndarray:
        """Positions as an (n, d) float array; read-only."""
        arr = np.array(self.points, dtype=float).reshape(len(self.points), self.dimension)
        arr.setflags(write=False)
        return arr

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point) -> bool:
        return tuple(map(float, point)) in set(self.points)

    def is_subset_of(self, other: "Configuration") -> bool:
        return self.dimension == other.dimension and set(self.points) <= set(other.points)

    def with_points(self, extra: Iterable[Sequence[float]]) -> "Configuration":
        return Configuration(dimension=self.dimension, points=self.points + tuple(tuple(map(float, p)) for p in extra))

    def subset(self, indices: Iterable[int]) -> "Configuration":
        return Configuration(dimension=self.dimension, points=tuple(self.points[i] for i in indices))

    def transformed(self, matrix: np.ndarray | None = None, shift: np.ndarray | None = None) -> "Configuration":
        """Apply x -> M x + v to every point (rigid motions for the invariance checks)."""
        arr = self.array if matrix is None else self.array @ np.asarray(matrix, dtype=float).T
        if shift is not None:
            arr = arr + np.asarray(shift, dtype=float)
        return Configuration.from_array(arr, self.dimension)
