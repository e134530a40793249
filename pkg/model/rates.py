"""
Pointwise and total birth rates.
"""

import logging
import math
from typing import Callable, List, Sequence

import numpy as np
from scipy import integrate

from model.configuration import Configuration
from model.kernels import DiscretePowerLaw, SumKernel, ZeroKernel
from model.step_profile import profile_mass, step_profile
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

TOTAL_RATE_RTOL = 1e-9


def evaluate_rate(kernel, x: Sequence[float], config: Configuration) -> float:
    """b(x, η) for one location."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size != config.dimension:
        raise InvalidArgumentError(f"Location has {x.size} coordinates, configuration has dimension {config.dimension}")
    if len(config) == 0:
        raise InvalidArgumentError("Rate evaluation needs a nonempty configuration")
    distances = np.sqrt(np.sum((config.array - x) ** 2, axis=1))
    return kernel.rate_at(distances)


def total_rate(kernel, config: Configuration) -> float:
    """
    c(η) = ∫ b(x, η) dx.

    Exact for 1D indicator kernels and for uncapped linear kernels; strip
    decomposition with adaptive quadrature for 2D indicator kernels; adaptive
    quadrature for capped sum kernels; a lattice sum for the power-law kernel.
    """
    if len(config) == 0:
        raise InvalidArgumentError("Total rate needs a nonempty configuration")
    d = config.dimension
    if isinstance(kernel, ZeroKernel):
        return 0.0
    if isinstance(kernel, DiscretePowerLaw):
        return _powerlaw_total(kernel, config)
    if kernel.is_linear:
        return len(config) * kernel.dominating_integral(d)
    if d == 1:
        if kernel.is_step:
            edges, values = step_profile(config.array[:, 0], kernel.interaction_range, kernel.rate_from_count)
            return profile_mass(edges, values)
        return _quad_1d(kernel, config.array[:, 0])
    if d == 2:
        if kernel.is_step:
            return _strip_total(config.array, kernel.interaction_range,
                                lambda pts, r, lo, hi: _step_slice(pts, r, lo, hi, kernel))
        return _strip_total(config.array, kernel.interaction_range,
                            lambda pts, r, lo, hi: _sum_slice(pts, r, lo, hi, kernel))
    raise InvalidArgumentError(f"Total rate is implemented for d in (1, 2), got d={d}")


def _quad_1d(kernel: SumKernel, points: np.ndarray) -> float:
    R = kernel.interaction_range
    pts = np.sort(points)

    def rate(x: float) -> float:
        return kernel.rate_at(np.abs(pts - x))

    total = 0.0
    for lo, hi in _merge_intervals(pts - R, pts + R):
        inner = [p for p in np.unique(np.concatenate([pts - R, pts, pts + R])) if lo < p < hi]
        value, _ = integrate.quad(rate, lo, hi, points=inner or None, limit=500,
                                  epsabs=0.0, epsrel=1e-12)
        total += value
    return total


def _merge_intervals(starts: np.ndarray, ends: np.ndarray) -> List[tuple]:
    order = np.argsort(starts)
    merged: List[list] = []
    for s, e in zip(starts[order], ends[order]):
        if merged and s <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], e)
        else:
            merged.append([float(s), float(e)])
    return [tuple(m) for m in merged]


def _critical_levels(points: np.ndarray, r: float) -> np.ndarray:
    """y-levels where the slice structure changes: disk tops/bottoms and pairwise circle crossings."""
    levels = [points[:, 1] - r, points[:, 1] + r]
    diff = points[None, :, :] - points[:, None, :]
    dist = np.sqrt(np.sum(diff ** 2, axis=2))
    i, j = np.nonzero(np.triu((dist > 0) & (dist < 2 * r), k=1))
    if i.size:
        mid = 0.5 * (points[i] + points[j])
        half = np.sqrt(np.maximum(r * r - (dist[i, j] / 2) ** 2, 0.0))
        unit_perp = np.stack([-diff[i, j, 1], diff[i, j, 0]], axis=1) / dist[i, j][:, None]
        levels.append(mid[:, 1] + half * unit_perp[:, 1])
        levels.append(mid[:, 1] - half * unit_perp[:, 1])
    return np.unique(np.concatenate(levels))


def _chords(points: np.ndarray, r: float, y: float):
    dy = points[:, 1] - y
    active = np.abs(dy) < r
    h = np.sqrt(r * r - dy[active] ** 2)
    cx = points[active, 0]
    return cx - h, cx + h


def _step_slice(points, r, lo, hi, kernel) -> Callable[[float], float]:
    def length(y: float) -> float:
        a, b = _chords(points, r, y)
        if a.size == 0:
            return 0.0
        return profile_mass(*_chord_profile(a, b, kernel))
    return length


def _chord_profile(a: np.ndarray, b: np.ndarray, kernel):
    starts, ends = np.sort(a), np.sort(b)
    edges = np.unique(np.concatenate([starts, ends]))
    mids = 0.5 * (edges[:-1] + edges[1:])
    counts = np.searchsorted(starts, mids, side="right") - np.searchsorted(ends, mids, side="right")
    return edges, np.asarray(kernel.rate_from_count(counts), dtype=float)


def _sum_slice(points, r, lo, hi, kernel) -> Callable[[float], float]:
    def length(y: float) -> float:
        a, b = _chords(points, r, y)
        if a.size == 0:
            return 0.0

        def rate(x: float) -> float:
            return kernel.rate_at(np.sqrt((points[:, 0] - x) ** 2 + (points[:, 1] - y) ** 2))

        total = 0.0
        for s, e in _merge_intervals(a, b):
            inner = sorted(p for p in np.concatenate([a, b]) if s < p < e)
            value, _ = integrate.quad(rate, s, e, points=inner or None, limit=200, epsabs=0.0, epsrel=1e-11)
            total += value
        return total
    return length


def _strip_total(points: np.ndarray, r: float, make_slice) -> float:
    """Integrate slice lengths over y, one quadrature per strip between critical levels."""
    levels = _critical_levels(points, r)
    slice_fn = make_slice(points, r, levels[0], levels[-1])
    total = 0.0
    for y0, y1 in zip(levels[:-1], levels[1:]):
        if y1 - y0 <= 0.0:
            continue
        value, _ = integrate.quad(slice_fn, y0, y1, limit=200, epsabs=0.0, epsrel=TOTAL_RATE_RTOL * 1e-3)
        total += value
    logger.debug(f"2D total rate over {len(levels) - 1} strips: {total:.12g}")
    return total


def powerlaw_field(kernel: DiscretePowerLaw, sites: np.ndarray, counts: np.ndarray | None = None):
    """
    Uncapped field Σ_y n(y) a_pow(x - y) on the window [min - R, max + R].

    Returns (offset, field) where field[i] is the value at site offset + i.
    """
    sites = np.asarray(sites, dtype=np.int64).ravel()
    counts = np.ones_like(sites) if counts is None else np.asarray(counts, dtype=float).ravel()
    R = kernel.truncation
    lo, hi = int(sites.min()), int(sites.max())
    occupancy = np.zeros(hi - lo + 1)
    np.add.at(occupancy, sites - lo, counts)
    return lo - R, np.convolve(occupancy, kernel.weights)


def _powerlaw_total(kernel: DiscretePowerLaw, config: Configuration) -> float:
    if config.dimension != 1:
        raise InvalidArgumentError("The discrete power-law kernel lives on Z")
    sites = config.array[:, 0]
    if not np.all(sites == np.round(sites)):
        raise InvalidArgumentError("The discrete power-law kernel needs integer sites")
    _, field = powerlaw_field(kernel, sites)
    return float(np.minimum(kernel.cap, field).sum())


def union_volume(points: np.ndarray, r: float) -> float:
    """Vol(∪ B(y, r)) in d = 1, 2; the c0-weighted lower bound of the non-degeneracy condition."""
    points = np.asarray(points, dtype=float)
    if points.shape[1] == 1:
        return sum(e - s for s, e in _merge_intervals(points[:, 0] - r, points[:, 0] + r))
    return _strip_total(points, r, lambda pts, rr, lo, hi: _union_slice(pts, rr))


def _union_slice(points, r) -> Callable[[float], float]:
    def length(y: float) -> float:
        a, b = _chords(points, r, y)
        return sum(e - s for s, e in _merge_intervals(a, b)) if a.size else 0.0
    return length


def ball_volume(dimension: int, r: float) -> float:
    return 2.0 * r if dimension == 1 else math.pi * r * r
