"""
Result schemas for every measurement and verification in the analytics package.
"""

import math
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Unreached hitting targets carry this time explicitly.
UNREACHED = math.inf


# =============================================================================
# SPEED AND HITTING TIMES
# =============================================================================

class SpeedEstimate(BaseModel):
    """Least-squares front speed over a trailing time window, pooled across replicas."""
    model_config = ConfigDict(frozen=True)

    slope: float = Field(..., allow_inf_nan=False, description="Estimated speed")
    stderr: float = Field(..., ge=0.0, description="Standard error of the slope")
    window: Tuple[float, float] = Field(..., description="(t_lo, t_hi) of the regression window")
    replicas: int = Field(..., ge=1)
    per_replica: List[float] = Field(default_factory=list, description="Per-replica slopes when pooled")
    label: str = Field("", description="What was measured, e.g. a kernel spec")

    @field_validator("window")
    @classmethod
    def validate_window(cls, v):
        if not v[0] < v[1]:
            raise ValueError(f"Window must satisfy t_lo < t_hi, got {v}")
        return v

    def within(self, value: float, n_stderr: float = 3.0, atol: float = 0.0) -> bool:
        """|slope - value| within n_stderr standard errors (plus atol)."""
        return abs(self.slope - value) <= n_stderr * self.stderr + atol


class HittingRecord(BaseModel):
    """T_λ(x): first time a particle lies in the closed ball B(x, λ|x|)."""
    model_config = ConfigDict(frozen=True)

    x: Tuple[float, ...]
    lam: float = Field(..., gt=0.0, lt=1.0, description="λ")
    T: float = Field(..., ge=0.0, description="Hitting time, UNREACHED (inf) if not reached by the end of the run")
    z: Optional[Tuple[float, ...]] = Field(None, description="The particle that entered the ball first")

    @property
    def reached(self) -> bool:
        return math.isfinite(self.T)


class SubadditiveSeries(BaseModel):
    """s_{0,n}/n for n = 1..N together with the n versus 2n relative changes."""
    model_config = ConfigDict(frozen=True)

    n: List[int]
    ratios: List[float]
    stabilization: Dict[int, float] = Field(
        default_factory=dict, description="n -> |r(2n) - r(n)| / r(n) for every n with 2n <= N"
    )

    @property
    def last_change(self) -> Optional[float]:
        return self.stabilization[max(self.stabilization)] if self.stabilization else None


class PathwiseSubadditivity(BaseModel):
    """T(2x) ≤ T(x) + T(x, 2x) on one probability space."""
    model_config = ConfigDict(frozen=True)

    seed: int
    stream_id: int = 0
    x: Tuple[float, ...]
    lam: float
    T_x: float = Field(..., description="T_λ(x) for the full process")
    T_2x: float = Field(..., description="T_λ(2x) for the full process")
    T_x_2x: float = Field(..., description="Time for the process restarted from the hitting particle to reach B(2x, λ|x|)")

    @property
    def holds(self) -> bool:
        return self.T_2x <= self.T_x + self.T_x_2x


# =============================================================================
# INVARIANT DENSITY OF THE GAP PROCESS
# =============================================================================

class DensityTable(BaseModel):
    """g tabulated on a grid; normalization is the trapezoid integral of the values."""
    model_config = ConfigDict(frozen=True)

    grid: List[float]
    values: List[float]
    normalization: float

    @model_validator(mode="after")
    def validate_table(self):
        if len(self.grid) != len(self.values) or len(self.grid) < 2:
            raise ValueError("grid and values must have the same length >= 2")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")
        if self.grid[0] < 0.0 or self.grid[-1] > 1.0:
            raise ValueError("grid must lie in [0, 1]")
        if any(v < 0.0 for v in self.values):
            raise ValueError("density values must be nonnegative")
        trapezoid = sum((b - a) * (u + v) / 2.0 for a, b, u, v in
                        zip(self.grid, self.grid[1:], self.values, self.values[1:]))
        if abs(trapezoid - self.normalization) > 1e-10:
            raise ValueError(f"normalization {self.normalization} differs from the trapezoid integral {trapezoid}")
        return self


class BalanceReport(BaseModel):
    """Sup-norm residuals of the stationarity identities over a grid."""
    model_config = ConfigDict(frozen=True)

    grid_size: int = Field(..., ge=64)
    balance: float = Field(..., ge=0.0, description="∫ q(x, y) g(x) dx - q(y) g(y)")
    integral_equations: float = Field(..., ge=0.0, description="The two integral equations for f = q·g")
    ode: float = Field(..., ge=0.0, description="f'(x) + 2 f(x)/(2 + x) + f(1 - x)/(3 - x)")
    phi_identity: float = Field(..., ge=0.0, description="The linear solution φ(x) = c(4 - 3x) of the reflected ODE")
    normalization: float = Field(..., ge=0.0, description="|∫ g - 1|")
    tolerance: float = 1e-8

    @property
    def residuals(self) -> Dict[str, float]:
        return {
            "balance": self.balance,
            "integral_equations": self.integral_equations,
            "ode": self.ode,
            "phi_identity": self.phi_identity,
            "normalization": self.normalization,
        }

    @property
    def failures(self) -> List[str]:
        return [name for name, value in self.residuals.items() if not value < self.tolerance]

    @property
    def passed(self) -> bool:
        return not self.failures


class OccupationReport(BaseModel):
    """Time-weighted occupation histogram of a gap trajectory against binned ∫g."""
    model_config = ConfigDict(frozen=True)

    edges: List[float]
    occupation: List[float] = Field(..., description="Fraction of time spent in each bin; sums to 1")
    g_mass: List[float] = Field(..., description="∫ g over each bin")
    sup_norm: float = Field(..., ge=0.0)
    chi2: float = Field(..., ge=0.0, description="Σ (occupation - g_mass)^2 / g_mass")
    total_time: float = Field(..., gt=0.0)
    jumps: int = Field(..., ge=0)


class BigginsResult(BaseModel):
    """Critical a* where min over θ > 0 of e^θ - e^-θ - aθ² changes sign."""
    model_config = ConfigDict(frozen=True)

    a_star: float
    theta_star: float = Field(..., description="Minimizer of the inner problem at a*")
    inner_min: float = Field(..., description="Inner minimum at a*")
    inner_min_below: float = Field(..., description="Inner minimum at a*(1 - 1e-6); positive")
    inner_min_above: float = Field(..., description="Inner minimum at a*(1 + 1e-6); negative")

    @property
    def certified(self) -> bool:
        return self.inner_min_below > 0.0 > self.inner_min_above


# =============================================================================
# SHAPE AND EXPERIMENTS
# =============================================================================

class ShapeReport(BaseModel):
    """Sector radii of ξ_t/t and the angular uniformity of the particles."""
    model_config = ConfigDict(frozen=True)

    t: float = Field(..., gt=0.0)
    n_particles: int
    sectors: int = Field(..., ge=2)
    sector_radii: List[float] = Field(..., description="max |x| + r over particles in each sector, divided by t")
    sector_counts: List[int]
    chi2: float = Field(..., ge=0.0)
    p_value: float = Field(..., ge=0.0, le=1.0)
    relative_spread: float = Field(..., ge=0.0, description="(max - min) / mean of the sector radii")
    radius_half_time: Optional[float] = Field(None, description="Mean sector radius of ξ_{t/2}/(t/2)")
    stabilization: Optional[float] = Field(None, description="Relative change of the mean radius between t/2 and t")

    @property
    def mean_radius(self) -> float:
        return sum(self.sector_radii) / len(self.sector_radii)


class IsotropyReport(BaseModel):
    """Sector uniformity of one direction per run, pooled over runs."""
    model_config = ConfigDict(frozen=True)

    sectors: int
    runs: int
    sector_counts: List[int]
    chi2: float
    p_value: float
    max_relative_spread: float = Field(..., description="Largest per-run relative spread of sector radii")

    def rejected(self, level: float = 0.01) -> bool:
        return self.p_value < level


class SuperadditivityReport(BaseModel):
    """Speeds s(b1), s(b2), s(b1 + b2) and whether s(b1) + s(b2) ≤ s(b1 + b2) within pooled error."""
    model_config = ConfigDict(frozen=True)

    status: Literal["EXPLORATORY"] = "EXPLORATORY"
    first: SpeedEstimate
    second: SpeedEstimate
    combined: SpeedEstimate
    margin: float = Field(..., description="s(b1 + b2) - s(b1) - s(b2)")
    margin_stderr: float = Field(..., ge=0.0, description="Margin stderr from paired per-replica differences")
    holds: bool = Field(..., description="margin >= -3 pooled standard errors")
    monotone: bool = Field(..., description="s(b1) <= s(b1 + b2) and s(b2) <= s(b1 + b2) within error")
