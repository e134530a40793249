"""
Uniform grid over R^d with cell size equal to the kernel's interaction range.

Every interaction partner of a point lies in the 3^d block of cells around the
point's own cell, so rate evaluation only ever touches that block.
"""

import itertools
import math
from collections import defaultdict
from typing import Dict, List, Tuple

import numpy as np

Cell = Tuple[int, ...]


class GridIndex:
    def __init__(self, cell_size: float, dimension: int):
        if cell_size <= 0:
            raise ValueError(f"cell_size must be positive, got {cell_size}")
        self.cell_size = float(cell_size)
        self.dimension = dimension
        self.offsets: List[Cell] = list(itertools.product((-1, 0, 1), repeat=dimension))
        self.cells: Dict[Cell, List[int]] = defaultdict(list)
        # particles in the 3^d block around each cell; only cells with a nonzero count are present
        self.near_counts: Dict[Cell, int] = defaultdict(int)
        self._points = np.empty((64, dimension))
        self._n = 0

    def __len__(self) -> int:
        return self._n

    @property
    def points(self) -> np.ndarray:
        return self._points[: self._n]

    def cell_of(self, x) -> Cell:
        return tuple(math.floor(float(c) / self.cell_size) for c in x)

    def block(self, cell: Cell) -> List[Cell]:
        return [tuple(c + o for c, o in zip(cell, off)) for off in self.offsets]

    def add(self, x) -> List[Cell]:
        """Register a particle; returns the cells whose neighbor count changed."""
        if self._n == len(self._points):
            self._points = np.concatenate([self._points, np.empty_like(self._points)])
        self._points[self._n] = x
        cell = self.cell_of(x)
        self.cells[cell].append(self._n)
        self._n += 1
        touched = self.block(cell)
        for c in touched:
            self.near_counts[c] += 1
        return touched

    def add_many(self, points: np.ndarray) -> None:
        for x in np.asarray(points, dtype=float):
            self.add(x)

    def block_indices(self, cell: Cell) -> List[int]:
        indices: List[int] = []
        for c in self.block(cell):
            found = self.cells.get(c)
            if found:
                indices.extend(found)
        return indices

    def neighbors(self, x) -> np.ndarray:
        """Positions of every particle in the 3^d block around x's cell (a superset of x's partners)."""
        return self._points[self.block_indices(self.cell_of(x))]

    def distances(self, x) -> np.ndarray:
        near = self.neighbors(x)
        if len(near) == 0:
            return np.empty(0)
        return np.sqrt(np.sum((near - np.asarray(x, dtype=float)) ** 2, axis=1))

    def rate(self, kernel, x) -> float:
        d = self.distances(x)
        return kernel.rate_at(d) if d.size else 0.0

    def near_count(self, cell: Cell) -> int:
        return self.near_counts.get(cell, 0)
