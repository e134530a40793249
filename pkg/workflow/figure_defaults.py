"""
Frozen default parameters of every figure reproduction.

Bump `version` whenever a default changes so bundles produced under the old
parameters can be told apart.
"""

from enum import Enum
from types import MappingProxyType
from typing import List, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field


class FigureId(str, Enum):
    FIG1 = "fig1"
    FIG2 = "fig2"
    FIG3 = "fig3"
    FIG4_6 = "fig4-6"
    FIG7_8 = "fig7-8"


class FigureDefaults(BaseModel):
    model_config = ConfigDict(frozen=True)

    version: str
    description: str
    kernel: Optional[str] = None
    dimension: int = 1
    t_end: float
    replicas: int = 1
    seed: int = 0
    k_grid: List[float] = Field(default_factory=list)
    n_caps: List[int] = Field(default_factory=list)
    alphas: List[float] = Field(default_factory=list)
    cap: Optional[float] = None
    stop_after: Optional[int] = None
    sectors: int = 12
    window_fraction: float = 0.5
    hitting_lambda: float = 0.1


FIGURE_DEFAULTS: Mapping[FigureId, FigureDefaults] = MappingProxyType({
    FigureId.FIG1: FigureDefaults(
        version="1",
        description="Distance to the furthest particle against time, 10 runs of the cap-2 model, with the exact speed line",
        kernel="trunc:k=2.0,r=1.0",
        t_end=1000.0,
        replicas=10,
        seed=1,
    ),
    FigureId.FIG2: FigureDefaults(
        version="1",
        description="Front speed s(k) of the truncated indicator model against the cap k",
        t_end=1000.0,
        replicas=10,
        seed=2,
        k_grid=[1.2, 1.5, 2.0, 3.0, 5.0],
    ),
    FigureId.FIG3: FigureDefaults(
        version="1",
        description="Front speed of the branching random walk with a population cap against the cap (log scale)",
        t_end=1000.0,
        replicas=4,
        seed=3,
        n_caps=[1, 2, 8, 32, 128, 512, 2048, 8192],
    ),
    FigureId.FIG4_6: FigureDefaults(
        version="1",
        description="Occupied sites against time in the discrete power-law model for three exponents",
        t_end=1e6,
        seed=4,
        alphas=[2.8, 3.5, 4.2],
        cap=1.0,
        stop_after=20_000,
    ),
    FigureId.FIG7_8: FigureDefaults(
        version="1",
        description="Two snapshots of the 2D truncated indicator model with cap 5, with sector radii",
        kernel="trunc:k=5.0,r=1.0",
        dimension=2,
        t_end=15.0,
        seed=5,
    ),
})
