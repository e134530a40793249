"""
Plot-ready CSV tables for the analytics results.

    front series   replica, t, extent[, theory]
    speed sweep    <parameter>, speed, stderr, replicas
    density        bin_lo, bin_hi, occupation, g_mass
    shape          sector, radius, count
    hitting        n, x_0[, x_1], lambda, T
"""

from pathlib import Path
from typing import Dict, Optional, Sequence, Union

from analytics.schemas import HittingRecord, OccupationReport, ShapeReport, SpeedEstimate
from utils.csv_tables import write_csv

PathLike = Union[str, Path]


def write_front_series(runs: Sequence, path: PathLike, direction=None, theory_speed: Optional[float] = None) -> Path:
    """Record extents of every run; with `theory_speed`, a theory column theory_speed·t."""
    fields = ["replica", "t", "extent"] + (["theory"] if theory_speed is not None else [])
    rows = []
    for replica, run in enumerate(runs):
        times, extents = run.front_series(direction)
        for t, extent in zip(times, extents):
            row = {"replica": replica, "t": float(t), "extent": float(extent)}
            if theory_speed is not None:
                row["theory"] = theory_speed * float(t)
            rows.append(row)
    return write_csv(path, fields, rows)


def write_speed_table(estimates: Dict[float, SpeedEstimate], path: PathLike, parameter: str = "k") -> Path:
    rows = [
        {parameter: key, "speed": est.slope, "stderr": est.stderr, "replicas": est.replicas}
        for key, est in estimates.items()
    ]
    return write_csv(path, [parameter, "speed", "stderr", "replicas"], rows)


def write_density_table(report: OccupationReport, path: PathLike) -> Path:
    rows = [
        {"bin_lo": lo, "bin_hi": hi, "occupation": occ, "g_mass": mass}
        for lo, hi, occ, mass in zip(report.edges[:-1], report.edges[1:], report.occupation, report.g_mass)
    ]
    return write_csv(path, ["bin_lo", "bin_hi", "occupation", "g_mass"], rows)


def write_shape_table(report: ShapeReport, path: PathLike) -> Path:
    rows = [
        {"sector": i, "radius": radius, "count": count}
        for i, (radius, count) in enumerate(zip(report.sector_radii, report.sector_counts))
    ]
    return write_csv(path, ["sector", "radius", "count"], rows)


def write_hitting_table(records: Sequence[HittingRecord], path: PathLike) -> Path:
    d = len(records[0].x) if records else 1
    fields = ["n"] + [f"x_{i}" for i in range(d)] + ["lambda", "T"]
    rows = []
    for n, record in enumerate(records, start=1):
        row = {"n": n, "lambda": record.lam, "T": record.T}
        row.update({f"x_{i}": c for i, c in enumerate(record.x)})
        rows.append(row)
    return write_csv(path, fields, rows)
