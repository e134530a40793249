"""
Time-weighted occupation of a gap trajectory against the invariant density.
"""

import logging

import numpy as np

from analytics.density import density_mass
from analytics.schemas import OccupationReport
from engine.reduced import GapTrajectory
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

MIN_TOTAL_TIME = 1e3


def binned_density_mass(bins: int) -> np.ndarray:
    """∫ g over each of `bins` equal bins of [0, 1]."""
    edges = np.linspace(0.0, 1.0, bins + 1)
    return np.array([density_mass(a, b) for a, b in zip(edges[:-1], edges[1:])])


def gap_occupation_vs_g(trajectory: GapTrajectory, bins: int = 20) -> OccupationReport:
    """Fraction of time the gap spends in each bin, compared with ∫ g over the bin."""
    if bins < 1:
        raise InvalidArgumentError(f"bins must be positive, got {bins}")
    total = float(trajectory.t_end - trajectory.t[0])
    if total < MIN_TOTAL_TIME:
        raise InvalidArgumentError(f"Trajectory covers t={total:g}; need at least {MIN_TOTAL_TIME:g}")
    edges = np.linspace(0.0, 1.0, bins + 1)
    weights, _ = np.histogram(trajectory.z, bins=edges, weights=trajectory.holding_times)
    occupation = weights / weights.sum()
    g_mass = binned_density_mass(bins)
    sup_norm = float(np.max(np.abs(occupation - g_mass)))
    chi2 = float(np.sum((occupation - g_mass) ** 2 / g_mass))
    logger.info(f"Gap occupation over t={total:g}, {len(trajectory) - 1} jumps: sup-norm {sup_norm:.4f}")
    return OccupationReport(edges=edges.tolist(), occupation=occupation.tolist(), g_mass=g_mass.tolist(),
                            sup_norm=sup_norm, chi2=chi2, total_time=total, jumps=len(trajectory) - 1)
