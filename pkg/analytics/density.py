"""
Closed-form checks for the gap process of the 1D truncated model (cap 2,
radius 1): the invariant density g, the stationarity identities it solves,
and the exact front speed ∫ g(z)(1 - z + z²/2) dz.

Every integral goes through adaptive Gauss-Kronrod quadrature with absolute
tolerance 1e-12, splitting at the kinks of the jump density.
"""

import logging
import math
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from analytics.schemas import BalanceReport, DensityTable
from engine.reduced import gap_jump_density
from utils.errors import InvalidArgumentError, NumericalConsistencyError

logger = logging.getLogger(__name__)

QUAD_TOL = 1e-12
RESIDUAL_TOL = 1e-8
SPEED_ROUTE_TOL = 1e-10
PHI_CHECK_POINTS = 1_000


def _quad(func: Callable[[float], float], a: float, b: float, points=()) -> float:
    if b <= a:
        return 0.0
    inner = sorted({p for p in points if a < p < b})
    value, _ = integrate.quad(func, a, b, points=inner or None, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
    return float(value)


def invariant_density(x):
    """g(x) = 36(4 - 3x) / ((2 + x)³(3 - x)²) on [0, 1]; scalar or array."""
    arr = np.asarray(x, dtype=float)
    if np.any((arr < 0.0) | (arr > 1.0)) or np.any(np.isnan(arr)):
        raise InvalidArgumentError(f"The invariant density is defined on [0, 1], got {x}")
    value = 36.0 * (4.0 - 3.0 * arr) / ((2.0 + arr) ** 3 * (3.0 - arr) ** 2)
    return float(value) if value.ndim == 0 else value


def _g(x: float) -> float:
    return 36.0 * (4.0 - 3.0 * x) / ((2.0 + x) ** 3 * (3.0 - x) ** 2)


def density_table(grid_size: int = 256) -> DensityTable:
    grid = np.linspace(0.0, 1.0, grid_size)
    values = invariant_density(grid)
    normalization = float(np.sum(np.diff(grid) * (values[1:] + values[:-1]) / 2.0))
    return DensityTable(grid=grid.tolist(), values=values.tolist(), normalization=normalization)


def density_mass(a: float = 0.0, b: float = 1.0) -> float:
    """∫_a^b g by quadrature."""
    return _quad(_g, a, b)


# f = g·q / ∫ g·q is the stationary law of the embedded jump chain.

def _f_closed(x: float) -> float:
    """Unnormalized f(x) = (4 - 3x) / ((2 + x)²(3 - x)²)."""
    return (4.0 - 3.0 * x) / ((2.0 + x) ** 2 * (3.0 - x) ** 2)


def _f_closed_derivative(x: float) -> float:
    # d/dx log f = -3/(4 - 3x) - 2/(2 + x) + 2/(3 - x)
    return _f_closed(x) * (-3.0 / (4.0 - 3.0 * x) - 2.0 / (2.0 + x) + 2.0 / (3.0 - x))


def _balance_residual(density: Callable[[float], float], y: float) -> float:
    lhs = _quad(lambda x: float(gap_jump_density(x, y)) * density(x), 0.0, 1.0, points=(y, 1.0 - y, 0.5))
    return abs(lhs - (2.0 + y) * density(y))


def _integral_equation_residual(density: Callable[[float], float], y: float, scale: float) -> float:
    """
    With h = f/(2 + x):

        y <= 1/2: f(y) = 2∫₀^½ h + 2∫_y^½ h + 3∫_½^1 h + ∫_½^{1-y} h
        y >= 1/2: f(y) = ∫₀^½ h + ∫₀^{1-y} h + ∫_½^1 h + 2∫_y^1 h
    """
    def f(x: float) -> float:
        return density(x) * (2.0 + x) / scale

    def h(x: float) -> float:
        return f(x) / (2.0 + x)

    def H(a: float, b: float) -> float:
        return _quad(h, a, b) if b >= a else -_quad(h, b, a)

    if y <= 0.5:
        rhs = 2.0 * H(0.0, 0.5) + 2.0 * H(y, 0.5) + 3.0 * H(0.5, 1.0) + H(0.5, 1.0 - y)
    else:
        rhs = H(0.0, 0.5) + H(0.0, 1.0 - y) + H(0.5, 1.0) + 2.0 * H(y, 1.0)
    return abs(f(y) - rhs)


def _ode_residual(x: float, scale: float) -> float:
    """f'(x) + 2f(x)/(2 + x) + f(1 - x)/(3 - x) for the normalized closed form."""
    f = _f_closed(x) / scale
    df = _f_closed_derivative(x) / scale
    return abs(df + 2.0 * f / (2.0 + x) + _f_closed(1.0 - x) / scale / (3.0 - x))


def phi_identity_residual(points: int = PHI_CHECK_POINTS, c: float = 1.0) -> float:
    """sup |(3 - x)φ'(x) + 2φ(x) + φ(1 - x)| for φ(x) = c(4 - 3x)."""
    x = np.linspace(0.0, 1.0, points)
    phi = c * (4.0 - 3.0 * x)
    phi_reflected = c * (4.0 - 3.0 * (1.0 - x))
    return float(np.max(np.abs((3.0 - x) * (-3.0 * c) + 2.0 * phi + phi_reflected)))


def verify_balance(grid_size: int = 256, density: Optional[Callable[[float], float]] = None) -> BalanceReport:
    """
    Sup-norm residuals over a uniform grid of [0, 1] of:

      - the balance equation ∫ q(x, y) g(x) dx = (2 + y) g(y);
      - the two integral equations for f ∝ g·q;
      - the ODE f' = -2f/(2 + x) - f(1 - x)/(3 - x), differentiated by hand;
      - the identity for φ(x) = c(4 - 3x);
      - |∫ g - 1|.

    `density` replaces g in the first two checks and the normalization.
    """
    if grid_size < 64:
        raise InvalidArgumentError(f"grid_size must be >= 64, got {grid_size}")
    density = density if density is not None else _g
    grid = np.linspace(0.0, 1.0, grid_size)
    mass = _quad(density, 0.0, 1.0)
    scale = _quad(lambda x: density(x) * (2.0 + x), 0.0, 1.0)
    closed_scale = _quad(_f_closed, 0.0, 1.0)
    report = BalanceReport(
        grid_size=grid_size,
        balance=max(_balance_residual(density, y) for y in grid),
        integral_equations=max(_integral_equation_residual(density, y, scale) for y in grid),
        ode=max(_ode_residual(x, closed_scale) for x in grid),
        phi_identity=phi_identity_residual(),
        normalization=abs(mass - 1.0),
        tolerance=RESIDUAL_TOL,
    )
    if report.passed:
        logger.info(f"✅ Balance identities hold on grid {grid_size}: {report.residuals}")
    else:
        logger.warning(f"Balance identities fail on grid {grid_size}: {report.failures}")
    return report


def x1_increment_mean(z: float) -> float:
    """
    Expected displacement rate of the rightmost particle at gap z: jumps of
    size v ∈ (0, 1 - z] at rate 2 and v ∈ (1 - z, 1] at rate 1 give
    (1 - z)² + (1 - (1 - z)²)/2 = 1 - z + z²/2.
    """
    if not 0.0 <= z <= 1.0:
        raise InvalidArgumentError(f"Gap must lie in [0, 1], got {z}")
    return 1.0 - z + 0.5 * z * z


def x1_increment_by_quadrature(z: float) -> float:
    """∫ v·(jump density of x1 at gap z) dv, the integral behind x1_increment_mean."""
    if not 0.0 <= z <= 1.0:
        raise InvalidArgumentError(f"Gap must lie in [0, 1], got {z}")
    return _quad(lambda v: 2.0 * v, 0.0, 1.0 - z) + _quad(lambda v: v, 1.0 - z, 1.0)


def theoretical_speed_closed_form() -> float:
    return (144.0 * math.log(3.0) - 144.0 * math.log(2.0) - 40.0) / 25.0


def theoretical_speed_k2() -> float:
    """
    Front speed of the 1D truncated model with cap 2 and radius 1.

    Computed in closed form and again as ∫₀¹ g(z)(1 - z + z²/2) dz.

    Raises:
        NumericalConsistencyError: the two routes differ by more than 1e-10.
    """
    closed = theoretical_speed_closed_form()
    by_quadrature = _quad(lambda z: _g(z) * (1.0 - z + 0.5 * z * z), 0.0, 1.0)
    if abs(closed - by_quadrature) > SPEED_ROUTE_TOL:
        logger.error(f"Speed routes disagree: closed form {closed!r}, quadrature {by_quadrature!r}")
        raise NumericalConsistencyError(
            "Closed-form speed and the quadrature of the speed integral disagree",
            {"closed_form": closed, "quadrature": by_quadrature, "tolerance": SPEED_ROUTE_TOL},
        )
    return closed
