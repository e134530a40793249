"""
Shape and isotropy statistics of 2D runs.

The occupied region ξ_t is the union of closed balls of radius r around the
particles; its radius in a sector is max |x| + r over the particles there.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from analytics.schemas import IsotropyReport, ShapeReport
from engine.event_log import EventLog
from model.kernel_spec import parse_kernel_spec
from utils.errors import InsufficientDataError, InvalidArgumentError

logger = logging.getLogger(__name__)

MIN_PARTICLES = 1_000


def _ball_radius(log: EventLog, r: Optional[float]) -> float:
    if r is not None:
        return float(r)
    try:
        witness = parse_kernel_spec(log.kernel).witness()
    except InvalidArgumentError as e:
        raise InvalidArgumentError(f"Cannot infer r from '{log.kernel}'; pass r explicitly") from e
    return witness.r if witness is not None else 0.0


def sector_index(points: np.ndarray, sectors: int) -> np.ndarray:
    angles = np.mod(np.arctan2(points[:, 1], points[:, 0]), 2.0 * math.pi)
    return np.minimum((angles / (2.0 * math.pi / sectors)).astype(int), sectors - 1)


def _sector_radii(points: np.ndarray, sectors: int, r: float, t: float) -> np.ndarray:
    idx = sector_index(points, sectors)
    norms = np.linalg.norm(points, axis=1)
    radii = np.zeros(sectors)
    np.maximum.at(radii, idx, norms)
    return (radii + r) / t


def shape_statistics(log: EventLog, sectors: int = 12, r: Optional[float] = None) -> ShapeReport:
    """
    Sector radii of ξ_t/t at t = t_end, the χ² uniformity statistic of the
    particle angles over sectors, and the change of the mean radius since t/2.

    Particle angles within one run are dependent, so the per-run χ² is a
    descriptive statistic; `pooled_isotropy` gives the test across runs.
    """
    if log.dimension != 2:
        raise InvalidArgumentError(f"Shape statistics need a 2D log, got d={log.dimension}")
    if sectors < 2:
        raise InvalidArgumentError(f"sectors must be >= 2, got {sectors}")
    if log.t_end <= 0:
        raise InsufficientDataError("The run has zero duration")
    r = _ball_radius(log, r)
    points = log.final_configuration().array
    if len(points) < MIN_PARTICLES:
        raise InsufficientDataError(f"Shape statistics need >= {MIN_PARTICLES} particles, got {len(points)}")
    t = float(log.t_end)
    radii = _sector_radii(points, sectors, r, t)
    counts = np.bincount(sector_index(points, sectors), minlength=sectors)
    chi2, p_value = stats.chisquare(counts)
    half = log.configuration_at(t / 2.0).array
    radius_half = float(np.mean(_sector_radii(half, sectors, r, t / 2.0)))
    mean_radius = float(np.mean(radii))
    report = ShapeReport(
        t=t,
        n_particles=len(points),
        sectors=sectors,
        sector_radii=radii.tolist(),
        sector_counts=counts.tolist(),
        chi2=float(chi2),
        p_value=float(p_value),
        relative_spread=float((radii.max() - radii.min()) / mean_radius),
        radius_half_time=radius_half,
        stabilization=abs(mean_radius - radius_half) / mean_radius,
    )
    logger.debug(f"Shape of {log.kernel} at t={t:g}: mean radius {mean_radius:.4f}, spread {report.relative_spread:.3f}")
    return report


def farthest_angle(log: EventLog) -> float:
    """Angle of the particle farthest from the origin at t_end."""
    points = log.final_configuration().array
    i = int(np.argmax(np.linalg.norm(points, axis=1)))
    return float(np.mod(math.atan2(points[i, 1], points[i, 0]), 2.0 * math.pi))


def pooled_isotropy(logs: Sequence[EventLog], sectors: int = 12, r: Optional[float] = None) -> IsotropyReport:
    """
    χ² uniformity test of one direction per run (the farthest particle) over
    sectors, pooled across independent runs, plus the largest per-run spread
    of sector radii.
    """
    if not logs:
        raise InvalidArgumentError("pooled_isotropy needs at least one log")
    angles = np.array([farthest_angle(log) for log in logs])
    idx = np.minimum((angles / (2.0 * math.pi / sectors)).astype(int), sectors - 1)
    counts = np.bincount(idx, minlength=sectors)
    chi2, p_value = stats.chisquare(counts)
    spreads = [shape_statistics(log, sectors, r).relative_spread for log in logs]
    report = IsotropyReport(sectors=sectors, runs=len(logs), sector_counts=counts.tolist(), chi2=float(chi2),
                            p_value=float(p_value), max_relative_spread=float(max(spreads)))
    if report.rejected():
        logger.warning(f"Isotropy rejected at level 0.01 over {len(logs)} runs: p={p_value:.4g}")
    return report
