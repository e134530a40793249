"""
Lattice growth: Eden growth, the discrete power-law model and the projection
of continuum runs onto a lattice.
"""

from lattice.eden import covered_radius, simulate_eden, vacancy_bound
from lattice.export import occupation_table, write_occupation_csv
from lattice.powerlaw import gap_fraction, simulate_discrete_powerlaw
from lattice.projection import (
    ProjectionCouplingReport,
    cell_of,
    project_to_lattice,
    simulate_projection_coupling,
)
from lattice.state import LatticeRun, LatticeState, neighbors

__all__ = [
    "LatticeRun",
    "LatticeState",
    "ProjectionCouplingReport",
    "cell_of",
    "covered_radius",
    "gap_fraction",
    "neighbors",
    "occupation_table",
    "project_to_lattice",
    "simulate_discrete_powerlaw",
    "simulate_eden",
    "simulate_projection_coupling",
    "vacancy_bound",
    "write_occupation_csv",
]
