"""
Front speed of the free branching random walk with the unit indicator kernel:
the critical a at which min over θ of e^θ - e^-θ - aθ² turns negative.

Near θ = 0 the function behaves like 2θ - aθ² and tends to 0, so the inner
minimization is taken over [1, 4], where it is unimodal and holds the
tangency point θ* ≈ 1.915 for every a in the outer bracket.
"""

import logging
import math
from typing import Tuple

from analytics.schemas import BigginsResult
from utils.errors import NumericalConsistencyError

logger = logging.getLogger(__name__)

THETA_BRACKET = (1.0, 4.0)
A_BRACKET = (1.5, 2.5)
THETA_TOL = 1e-12
CERTIFICATE_STEP = 1e-6
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def exponent_gap(theta: float, a: float) -> float:
    """e^θ - e^-θ - aθ²."""
    return math.exp(theta) - math.exp(-theta) - a * theta * theta


def inner_minimum(a: float, tol: float = THETA_TOL) -> Tuple[float, float]:
    """Golden-section minimum of θ ↦ e^θ - e^-θ - aθ² over the θ bracket: (θ_min, value)."""
    lo, hi = THETA_BRACKET
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = exponent_gap(c, a), exponent_gap(d, a)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = exponent_gap(c, a)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = exponent_gap(d, a)
    theta = (lo + hi) / 2.0
    return theta, exponent_gap(theta, a)


def biggins_speed(tol: float = 1e-13) -> BigginsResult:
    """
    Bisection on a for the sign change of the inner minimum, with a certificate
    at a*(1 ∓ 1e-6).

    Raises:
        NumericalConsistencyError: the a bracket does not straddle the sign
            change, or the certificate fails.
    """
    lo, hi = A_BRACKET
    f_lo, f_hi = inner_minimum(lo)[1], inner_minimum(hi)[1]
    if not (f_lo > 0.0 > f_hi):
        logger.error(f"Biggins bracket [{lo}, {hi}] does not straddle a sign change: {f_lo}, {f_hi}")
        raise NumericalConsistencyError(
            "Outer bracket does not straddle the critical a",
            {"a_lo": lo, "a_hi": hi, "min_lo": f_lo, "min_hi": f_hi},
        )
    while hi - lo > tol * hi:
        mid = (lo + hi) / 2.0
        if inner_minimum(mid)[1] > 0.0:
            lo = mid
        else:
            hi = mid
    a_star = (lo + hi) / 2.0
    theta, value = inner_minimum(a_star)
    result = BigginsResult(
        a_star=a_star,
        theta_star=theta,
        inner_min=value,
        inner_min_below=inner_minimum(a_star * (1.0 - CERTIFICATE_STEP))[1],
        inner_min_above=inner_minimum(a_star * (1.0 + CERTIFICATE_STEP))[1],
    )
    if not result.certified:
        logger.error(f"Biggins certificate failed: {result.model_dump()}")
        raise NumericalConsistencyError("Sign-bracketing certificate failed at a*", result.model_dump())
    logger.debug(f"Biggins speed a*={a_star:.12f}, θ*={theta:.9f}")
    return result


def biggins_speed_newton(theta0: float = 2.0, tol: float = 1e-14, max_iter: int = 50) -> Tuple[float, float]:
    """
    Solve h(θ) = 0, h'(θ) = 0 for h = e^θ - e^-θ - aθ².

    Eliminating a leaves θ cosh θ = 2 sinh θ, solved by Newton; then
    a* = 2 sinh θ*/θ*². Returns (a*, θ*).
    """
    theta = theta0
    for _ in range(max_iter):
        F = theta * math.cosh(theta) - 2.0 * math.sinh(theta)
        dF = theta * math.sinh(theta) - math.cosh(theta)
        step = F / dF
        theta -= step
        if abs(step) < tol * theta:
            break
    else:
        raise NumericalConsistencyError("Newton iteration for the tangency point did not converge",
                                        {"theta": theta, "iterations": max_iter})
    return 2.0 * math.sinh(theta) / (theta * theta), theta
