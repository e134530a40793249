"""
Randomized checks of the four standing conditions on a birth kernel:
sublinear domination, monotonicity, rigid-motion invariance and
non-degeneracy.
"""

import logging
from typing import Any, Dict, List, Optional, Protocol

import numpy as np
from pydantic import BaseModel, Field

from engine.rng import STREAM_CHECKS, stream
from model.kernels import NonDegeneracyWitness
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

# Comparisons of rates that should agree exactly, up to floating round-off in the distances.
RATE_RTOL = 1e-9
RATE_ATOL = 1e-12


class RateKernel(Protocol):
    """What the checks need from a kernel; test fixtures may supply their own."""

    @property
    def interaction_range(self) -> float: ...

    def rate_at(self, distances: np.ndarray) -> float: ...

    def dominating_at(self, distances: np.ndarray) -> float: ...

    def witness(self) -> Optional[NonDegeneracyWitness]: ...


class ConditionCheck(BaseModel):
    """Outcome of one condition over all trials."""
    name: str
    trials: int
    passed: int
    counterexample: Optional[Dict[str, Any]] = Field(None, description="First failing trial, if any")

    @property
    def ok(self) -> bool:
        return self.passed == self.trials


class ConditionsReport(BaseModel):
    dimension: int
    sublinearity: ConditionCheck
    monotonicity: ConditionCheck
    invariance: ConditionCheck
    non_degeneracy: ConditionCheck
    witness: Optional[NonDegeneracyWitness] = None

    @property
    def checks(self) -> List[ConditionCheck]:
        return [self.sublinearity, self.monotonicity, self.invariance, self.non_degeneracy]

    @property
    def all_passed(self) -> bool:
        return all(c.ok for c in self.checks)


def _distances(x: np.ndarray, points: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum((points - x) ** 2, axis=1))


class _Sampler:
    """Random configurations and locations at the kernel's scale, on Z when the kernel is lattice-only."""

    def __init__(self, kernel, dimension: int, rng: np.random.Generator):
        self.rng = rng
        self.dimension = dimension
        self.lattice = bool(getattr(kernel, "lattice_only", False))
        self.scale = 3.0 if self.lattice else float(kernel.interaction_range)

    def points(self, n: int) -> np.ndarray:
        if self.lattice:
            sites = self.rng.choice(np.arange(-12, 13), size=min(n, 25), replace=False)
            return sites.reshape(-1, 1).astype(float)
        return self.rng.uniform(-2 * self.scale, 2 * self.scale, size=(n, self.dimension))

    def location(self) -> np.ndarray:
        if self.lattice:
            return np.array([float(self.rng.integers(-15, 16))])
        return self.rng.uniform(-3 * self.scale, 3 * self.scale, size=self.dimension)


def _check_sublinearity(kernel, sampler: _Sampler, trials: int) -> ConditionCheck:
    passed, counterexample = 0, None
    for _ in range(trials):
        eta = sampler.points(int(sampler.rng.integers(1, 9)))
        x = sampler.location()
        d = _distances(x, eta)
        b, a = kernel.rate_at(d), kernel.dominating_at(d)
        if b <= a * (1 + RATE_RTOL) + RATE_ATOL:
            passed += 1
        elif counterexample is None:
            counterexample = {"x": x.tolist(), "eta": eta.tolist(), "rate": b, "dominating": a}
    return ConditionCheck(name="sublinearity", trials=trials, passed=passed, counterexample=counterexample)


def _check_monotonicity(kernel, sampler: _Sampler, trials: int) -> ConditionCheck:
    passed, counterexample = 0, None
    for _ in range(trials):
        zeta = sampler.points(int(sampler.rng.integers(2, 12)))
        keep = int(sampler.rng.integers(1, len(zeta)))
        eta = zeta[:keep]
        x = sampler.location()
        small, large = kernel.rate_at(_distances(x, eta)), kernel.rate_at(_distances(x, zeta))
        if small <= large * (1 + RATE_RTOL) + RATE_ATOL:
            passed += 1
        elif counterexample is None:
            counterexample = {"x": x.tolist(), "eta": eta.tolist(), "zeta": zeta.tolist(),
                              "rate_eta": small, "rate_zeta": large}
    return ConditionCheck(name="monotonicity", trials=trials, passed=passed, counterexample=counterexample)


def _rigid_motion(sampler: _Sampler):
    rng, d = sampler.rng, sampler.dimension
    if sampler.lattice:
        # Lattice symmetries of Z: integer shifts and the reflection.
        return np.array([[rng.choice([-1.0, 1.0])]]), np.array([float(rng.integers(-50, 51))])
    shift = rng.uniform(-10 * sampler.scale, 10 * sampler.scale, size=d)
    if d == 1:
        return np.array([[rng.choice([-1.0, 1.0])]]), shift
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if rng.random() < 0.5:
        # coordinate permutation
        q = np.eye(d)[rng.permutation(d)]
    return q, shift


def _check_invariance(kernel, sampler: _Sampler, trials: int) -> ConditionCheck:
    passed, counterexample = 0, None
    for _ in range(trials):
        eta = sampler.points(int(sampler.rng.integers(1, 9)))
        x = sampler.location()
        matrix, shift = _rigid_motion(sampler)
        before = kernel.rate_at(_distances(x, eta))
        after = kernel.rate_at(_distances(matrix @ x + shift, eta @ matrix.T + shift))
        if np.isclose(before, after, rtol=RATE_RTOL, atol=RATE_ATOL):
            passed += 1
        elif counterexample is None:
            counterexample = {"x": x.tolist(), "eta": eta.tolist(), "matrix": matrix.tolist(),
                              "shift": shift.tolist(), "before": before, "after": after}
    return ConditionCheck(name="invariance", trials=trials, passed=passed, counterexample=counterexample)


def _check_non_degeneracy(kernel, sampler: _Sampler, trials: int,
                          witness: Optional[NonDegeneracyWitness]) -> ConditionCheck:
    if witness is None:
        return ConditionCheck(name="non_degeneracy", trials=trials, passed=0,
                              counterexample={"reason": "kernel has no non-degeneracy witness"})
    passed, counterexample = 0, None
    rng = sampler.rng
    for _ in range(trials):
        eta = sampler.points(int(rng.integers(1, 9)))
        anchor = eta[int(rng.integers(len(eta)))]
        if sampler.lattice:
            offset = np.array([float(rng.integers(-int(witness.r), int(witness.r) + 1))])
        else:
            direction = rng.standard_normal(sampler.dimension)
            direction /= np.linalg.norm(direction)
            offset = direction * witness.r * rng.random() ** (1.0 / sampler.dimension)
        x = anchor + offset
        b = kernel.rate_at(_distances(x, eta))
        if b >= witness.c0 * (1 - RATE_RTOL):
            passed += 1
        elif counterexample is None:
            counterexample = {"x": x.tolist(), "eta": eta.tolist(), "rate": b, "c0": witness.c0, "r": witness.r}
    return ConditionCheck(name="non_degeneracy", trials=trials, passed=passed, counterexample=counterexample)


def check_conditions(kernel: RateKernel, trials: int, seed: int, dimension: int = 1) -> ConditionsReport:
    """
    Randomized verification of the kernel conditions.

    Each check runs `trials` independent random trials and records the pass
    count together with the first counterexample found. Failures are reported,
    never raised.
    """
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    if getattr(kernel, "lattice_only", False):
        dimension = 1
    rng = stream(seed, STREAM_CHECKS)
    sampler = _Sampler(kernel, dimension, rng)
    witness = kernel.witness()
    report = ConditionsReport(
        dimension=dimension,
        sublinearity=_check_sublinearity(kernel, sampler, trials),
        monotonicity=_check_monotonicity(kernel, sampler, trials),
        invariance=_check_invariance(kernel, sampler, trials),
        non_degeneracy=_check_non_degeneracy(kernel, sampler, trials, witness),
        witness=witness,
    )
    for check in report.checks:
        if not check.ok:
            logger.warning(f"Condition '{check.name}' failed in {check.trials - check.passed}/{check.trials} trials")
    logger.debug(f"Condition checks finished: all_passed={report.all_passed}")
    return report
