"""
Closed-form verification suite: no simulation, every check is a numerical
identity with a tolerance.
"""

import logging
import math
import time
from typing import Callable, List

from pydantic import BaseModel, Field

from analytics.biggins import biggins_speed, biggins_speed_newton
from analytics.density import (
    density_mass,
    theoretical_speed_closed_form,
    theoretical_speed_k2,
    verify_balance,
    x1_increment_by_quadrature,
    x1_increment_mean,
)
from model.kernels import POWERLAW_TAIL_MASS, powerlaw_weights
from utils.errors import BirthProcessError

logger = logging.getLogger(__name__)

BIGGINS_RANGE = (1.80, 1.82)
SPEED_K2_DECIMAL = 0.735479


class VerificationItem(BaseModel):
    name: str
    value: float
    threshold: str = Field(..., description="Human-readable pass condition")
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    items: List[VerificationItem] = Field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def failures(self) -> List[str]:
        return [item.name for item in self.items if not item.passed]


def _guarded(name: str, check: Callable[[], List[VerificationItem]]) -> List[VerificationItem]:
    try:
        return check()
    except BirthProcessError as e:
        logger.error(f"❌ Verification step {name} raised: {e}")
        return [VerificationItem(name=name, value=math.nan, threshold="no error", passed=False, detail=str(e))]


def _speed_items() -> List[VerificationItem]:
    # theoretical_speed_k2 raises when the quadrature route drifts more than 1e-10
    speed = theoretical_speed_k2()
    return [VerificationItem(
        name="theoretical_speed_k2",
        value=speed,
        threshold="closed form equals ∫ g(z)(1 - z + z²/2) dz within 1e-10 and rounds to 0.735479",
        passed=speed == theoretical_speed_closed_form() and abs(speed - SPEED_K2_DECIMAL) < 5e-7,
    )]


def _balance_items(grid_size: int) -> List[VerificationItem]:
    report = verify_balance(grid_size)
    return [
        VerificationItem(name=f"balance:{name}", value=value, threshold=f"< {report.tolerance:g}",
                         passed=value < report.tolerance, detail=f"grid {grid_size}")
        for name, value in report.residuals.items()
    ]


def _normalization_items() -> List[VerificationItem]:
    mass_error = abs(density_mass() - 1.0)
    powerlaw_items = []
    for alpha in (2.8, 3.5, 4.2):
        error = abs(float(powerlaw_weights(alpha).sum()) - 1.0)
        powerlaw_items.append(VerificationItem(
            name=f"powerlaw_normalization:alpha={alpha}",
            value=error,
            threshold=f"< {POWERLAW_TAIL_MASS:g}",
            passed=error < POWERLAW_TAIL_MASS,
        ))
    return [VerificationItem(name="g_normalization", value=mass_error, threshold="< 1e-10",
                             passed=mass_error < 1e-10)] + powerlaw_items


def _increment_items() -> List[VerificationItem]:
    worst = max(abs(x1_increment_mean(z) - x1_increment_by_quadrature(z)) for z in (i / 64 for i in range(65)))
    return [VerificationItem(name="x1_increment_mean", value=worst,
                             threshold="1 - z + z²/2 matches the integral of the jump law within 1e-12",
                             passed=worst < 1e-12)]


def _biggins_items() -> List[VerificationItem]:
    result = biggins_speed()
    a_newton, _ = biggins_speed_newton()
    lo, hi = BIGGINS_RANGE
    return [
        VerificationItem(name="biggins_speed", value=result.a_star, threshold=f"in [{lo}, {hi}]",
                         passed=lo <= result.a_star <= hi, detail=f"θ* = {result.theta_star:.9f}"),
        VerificationItem(name="biggins_certificate", value=result.inner_min,
                         threshold="inner min > 0 at a*(1 - 1e-6), < 0 at a*(1 + 1e-6), |min at a*| < 1e-9",
                         passed=result.certified and abs(result.inner_min) < 1e-9,
                         detail=f"below {result.inner_min_below:.3e}, above {result.inner_min_above:.3e}"),
        VerificationItem(name="biggins_newton_agreement", value=abs(result.a_star - a_newton),
                         threshold="< 1e-9", passed=abs(result.a_star - a_newton) < 1e-9,
                         detail=f"Newton a* = {a_newton:.12f}"),
    ]


def run_verification(grid_size: int = 256) -> VerificationReport:
    """Run every closed-form check and collect a machine-readable report."""
    started = time.perf_counter()
    logger.info("🔎 Running closed-form verification suite")
    items: List[VerificationItem] = []
    items += _guarded("theoretical_speed_k2", _speed_items)
    items += _guarded("verify_balance", lambda: _balance_items(grid_size))
    items += _guarded("normalization", _normalization_items)
    items += _guarded("x1_increment_mean", _increment_items)
    items += _guarded("biggins_speed", _biggins_items)
    report = VerificationReport(items=items, elapsed_seconds=time.perf_counter() - started)
    if report.passed:
        logger.info(f"✅ Verification passed ({len(items)} checks, {report.elapsed_seconds:.2f}s)")
    else:
        logger.warning(f"Verification failed: {report.failures}")
    return report
