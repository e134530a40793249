"""
CSV export of lattice runs.

    site_0[,site_1],first_occupation_time,count
"""

from pathlib import Path
from typing import Optional, Union

from lattice.state import LatticeRun
from utils.csv_tables import write_csv


def occupation_table(run: LatticeRun, t: Optional[float] = None) -> list:
    """One row per site occupied by time t (default: the end of the run), ordered by first occupation."""
    state = run.state_at(run.t_end if t is None else t)
    rows = []
    for site in sorted(state.occupancy, key=lambda s: (run.first_occupation[s], s)):
        row = {f"site_{i}": c for i, c in enumerate(site)}
        row["first_occupation_time"] = run.first_occupation[site]
        row["count"] = state.count(site)
        rows.append(row)
    return rows


def occupation_fieldnames(dimension: int) -> list:
    return [f"site_{i}" for i in range(dimension)] + ["first_occupation_time", "count"]


def write_occupation_csv(run: LatticeRun, path: Union[str, Path], t: Optional[float] = None) -> Path:
    return write_csv(path, occupation_fieldnames(run.dimension), occupation_table(run, t))
