"""
Measurements and closed-form checks: front speeds, hitting times, the
invariant density of the gap process, the branching random walk speed, shape
statistics and the superadditivity experiment.
"""

from analytics.biggins import biggins_speed, biggins_speed_newton, inner_minimum
from analytics.density import (
    density_table,
    invariant_density,
    theoretical_speed_k2,
    verify_balance,
    x1_increment_by_quadrature,
    x1_increment_mean,
)
from analytics.hitting import hitting_series, hitting_times, pathwise_subadditivity, subadditive_ratios
from analytics.occupation import gap_occupation_vs_g
from analytics.schemas import (
    UNREACHED,
    BalanceReport,
    BigginsResult,
    DensityTable,
    HittingRecord,
    IsotropyReport,
    OccupationReport,
    PathwiseSubadditivity,
    ShapeReport,
    SpeedEstimate,
    SubadditiveSeries,
    SuperadditivityReport,
)
from analytics.shape import pooled_isotropy, shape_statistics
from analytics.speed import estimate_speed
from analytics.superadditivity import measure_speed, superadditivity_experiment

__all__ = [
    "UNREACHED",
    "BalanceReport",
    "BigginsResult",
    "DensityTable",
    "HittingRecord",
    "IsotropyReport",
    "OccupationReport",
    "PathwiseSubadditivity",
    "ShapeReport",
    "SpeedEstimate",
    "SubadditiveSeries",
    "SuperadditivityReport",
    "biggins_speed",
    "biggins_speed_newton",
    "density_table",
    "estimate_speed",
    "gap_occupation_vs_g",
    "hitting_series",
    "hitting_times",
    "inner_minimum",
    "invariant_density",
    "measure_speed",
    "pathwise_subadditivity",
    "pooled_isotropy",
    "shape_statistics",
    "subadditive_ratios",
    "superadditivity_experiment",
    "theoretical_speed_k2",
    "verify_balance",
    "x1_increment_by_quadrature",
    "x1_increment_mean",
]
