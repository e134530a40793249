"""
Reduced processes of the 1D truncated model with cap 2 and radius 1.

The two rightmost particles (x1, x2) form a pure jump Markov process, and the
gap z = x1 - x2 is itself Markov on [0, 1] with jump density q(z, y) and total
jump rate q(z) = 2 + z.
"""

import logging
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from engine.rng import STREAM_MAIN, stream
from model.step_profile import sample_step
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

# Jumps discarded from the start of a two-point run: the transition law only
# holds once two births have happened on the positive half-line.
TWO_POINT_BURN_IN = 50


class GapChainState(BaseModel):
    model_config = ConfigDict(frozen=True)

    z: float = Field(..., ge=0.0, le=1.0)
    t: float = Field(..., ge=0.0)


class TwoPointState(BaseModel):
    model_config = ConfigDict(frozen=True)

    x1: float
    x2: float
    t: float = Field(..., ge=0.0)


class GapTrajectory(BaseModel):
    """Embedded jump chain: state z[i] holds on [t[i], t[i+1]), the last one until t_end."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t: np.ndarray
    z: np.ndarray
    t_end: float
    seed: int

    def __len__(self) -> int:
        return len(self.z)

    @property
    def holding_times(self) -> np.ndarray:
        return np.diff(np.append(self.t, self.t_end))

    def state(self, i: int) -> GapChainState:
        return GapChainState(z=float(self.z[i]), t=float(self.t[i]))


class TwoPointTrajectory(BaseModel):
    """States after each jump; index 0 is the start (0, 0) at t = 0."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t: np.ndarray
    x1: np.ndarray
    x2: np.ndarray
    t_end: float
    seed: int
    burn_in: int = Field(TWO_POINT_BURN_IN, ge=0)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def gaps(self) -> np.ndarray:
        return self.x1 - self.x2

    def stationary_gaps(self) -> np.ndarray:
        """Embedded gap states with the burn-in prefix dropped."""
        return self.gaps[self.burn_in + 1:]

    def state(self, i: int) -> TwoPointState:
        return TwoPointState(x1=float(self.x1[i]), x2=float(self.x2[i]), t=float(self.t[i]))


def gap_segments(z: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    q(z, ·) as a step function on [0, 1]:

        z <= 1/2: 4 on [0, z], 2 on [z, 1-z], 1 on [1-z, 1]
        z >= 1/2: 4 on [0, 1-z], 3 on [1-z, z], 1 on [z, 1]
    """
    if not 0.0 <= z <= 1.0:
        raise InvalidArgumentError(f"Gap state must lie in [0, 1], got {z}")
    if z <= 0.5:
        return np.array([0.0, z, 1.0 - z, 1.0]), np.array([4.0, 2.0, 1.0])
    return np.array([0.0, 1.0 - z, z, 1.0]), np.array([4.0, 3.0, 1.0])


def gap_jump_density(z: float, y):
    """q(z, y), vectorized in y."""
    edges, values = gap_segments(z)
    y = np.asarray(y, dtype=float)
    idx = np.clip(np.searchsorted(edges, y, side="right") - 1, 0, len(values) - 1)
    out = values[idx]
    return np.where((y < 0.0) | (y > 1.0), 0.0, out)


def gap_total_rate(z: float) -> float:
    """q(z) = ∫ q(z, y) dy = 2 + z."""
    if not 0.0 <= z <= 1.0:
        raise InvalidArgumentError(f"Gap state must lie in [0, 1], got {z}")
    return 2.0 + z


def simulate_gap_chain(z0: float, t_end: float, seed: int, *, stream_id: int = STREAM_MAIN) -> GapTrajectory:
    """Continuous-time jump chain on [0, 1]: hold Exponential(2 + z), jump by inverse CDF of q(z, ·)."""
    if not 0.0 <= z0 <= 1.0:
        raise InvalidArgumentError(f"z0 must lie in [0, 1], got {z0}")
    if t_end < 0:
        raise InvalidArgumentError(f"t_end must be nonnegative, got {t_end}")
    rng = stream(seed, stream_id)
    times, states = [0.0], [float(z0)]
    t, z = 0.0, float(z0)
    while True:
        t += rng.exponential(1.0 / (2.0 + z))
        if t > t_end:
            break
        edges, values = gap_segments(z)
        z = sample_step(edges, values, rng.random())
        times.append(t)
        states.append(z)
    logger.debug(f"Gap chain: {len(states) - 1} jumps to t={t_end:g}")
    return GapTrajectory(t=np.array(times), z=np.array(states), t_end=t_end, seed=seed)


def _two_point_jump(x1: float, x2: float, u_kind: float, u_pos: float) -> Tuple[float, float]:
    """
    One jump of (x1, x2), total rate 2 + (x1 - x2):

        rate 1 on (x2 + 1, x1 + 1]:  (v, x1)
        rate 2 on (x1, x2 + 1]:      (v, x1)
        rate 2 on (x2, x1]:          (x1, v)
    """
    z = x1 - x2
    masses = np.array([z, 2.0 * (1.0 - z), 2.0 * z])
    target = u_kind * masses.sum()
    if target < masses[0]:
        return x2 + 1.0 + z * u_pos, x1
    if target < masses[0] + masses[1]:
        return x1 + (1.0 - z) * u_pos, x1
    return x1, x2 + z * u_pos


def simulate_two_point(
    t_end: float,
    seed: int,
    *,
    burn_in: int = TWO_POINT_BURN_IN,
    stream_id: int = STREAM_MAIN,
) -> TwoPointTrajectory:
    """
    The two rightmost particles, started from x1 = x2 = 0.

    Statistics should use states past `burn_in` jumps.
    """
    if t_end < 0:
        raise InvalidArgumentError(f"t_end must be nonnegative, got {t_end}")
    rng = stream(seed, stream_id)
    times, first, second = [0.0], [0.0], [0.0]
    t, x1, x2 = 0.0, 0.0, 0.0
    while True:
        t += rng.exponential(1.0 / (2.0 + (x1 - x2)))
        if t > t_end:
            break
        x1, x2 = _two_point_jump(x1, x2, rng.random(), rng.random())
        times.append(t)
        first.append(x1)
        second.append(x2)
    logger.debug(f"Two-point process: {len(times) - 1} jumps to t={t_end:g}, x1={x1:.4g}")
    return TwoPointTrajectory(t=np.array(times), x1=np.array(first), x2=np.array(second),
                              t_end=t_end, seed=seed, burn_in=burn_in)
