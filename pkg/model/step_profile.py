"""
Exact piecewise-constant rate profiles in one dimension.

For indicator-type kernels b(x, η) = g(#{y : |x - y| <= r}) the profile is a
step function with breakpoints at y ± r. The same structure backs the exact
total rate, the engine's inverse-CDF sampler and the gap chain's jump law.
"""

from typing import Callable, Optional, Tuple

import numpy as np


def step_profile(
    points: np.ndarray,
    radius: float,
    rate_from_count: Callable[[np.ndarray], np.ndarray],
    lo: Optional[float] = None,
    hi: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Breakpoint decomposition of x -> g(count within radius of x).

    Args:
        points: 1D particle positions (any order).
        radius: Interaction radius.
        rate_from_count: Vectorized g, with g(0) = 0.
        lo, hi: Optional clipping window.

    Returns:
        (edges, values): len(values) == len(edges) - 1; the profile equals
        values[i] on (edges[i], edges[i+1]).
    """
    points = np.asarray(points, dtype=float).ravel()
    starts = np.sort(points - radius)
    ends = np.sort(points + radius)
    edges = np.unique(np.concatenate([starts, ends]))
    if lo is not None or hi is not None:
        lo = edges[0] if lo is None else lo
        hi = edges[-1] if hi is None else hi
        inner = edges[(edges > lo) & (edges < hi)]
        edges = np.concatenate([[lo], inner, [hi]])
    if edges.size < 2:
        return edges, np.zeros(0)
    mids = 0.5 * (edges[:-1] + edges[1:])
    counts = np.searchsorted(starts, mids, side="right") - np.searchsorted(ends, mids, side="right")
    values = np.asarray(rate_from_count(counts), dtype=float)
    return edges, values


def profile_mass(edges: np.ndarray, values: np.ndarray) -> float:
    """∫ of the step function."""
    if values.size == 0:
        return 0.0
    return float(np.dot(values, np.diff(edges)))


def sample_step(edges: np.ndarray, values: np.ndarray, u: float) -> float:
    """Inverse-CDF draw from the density proportional to the step function; u ∈ [0, 1)."""
    masses = values * np.diff(edges)
    cumulative = np.cumsum(masses)
    target = u * cumulative[-1]
    i = int(np.searchsorted(cumulative, target, side="right"))
    i = min(i, len(values) - 1)
    while values[i] <= 0.0:
        i -= 1
    before = cumulative[i - 1] if i > 0 else 0.0
    return float(min(edges[i] + (target - before) / values[i], edges[i + 1]))
