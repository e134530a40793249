"""
Birth-rate kernels b(x, η).

Each kernel is an immutable pydantic model tagged by `kind`. Kernels only ever
see distances (or integer displacements on the lattice) from a location to the
particles that can interact with it; the grid index in the engine guarantees
every interaction partner is among those handed in.
"""

from __future__ import annotations

import math
from enum import Enum
from functools import cached_property
from typing import Annotated, ClassVar, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.special import zeta

from utils.errors import InvalidArgumentError

POWERLAW_TAIL_MASS = 1e-9


class ProfileShape(str, Enum):
    """Radial profiles f with f(0) = 1, nonincreasing, supported on [0, support]."""
    INDICATOR = "indicator"
    TENT = "tent"
    EPANECHNIKOV = "epanechnikov"


class Profile(BaseModel):
    """A compactly supported nonincreasing radial profile f(|x|)."""
    model_config = ConfigDict(frozen=True)

    shape: ProfileShape
    support: float = Field(gt=0, description="Support radius R: f(s) = 0 for s > R")

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        u = s / self.support
        if self.shape is ProfileShape.INDICATOR:
            return np.where(u <= 1.0, 1.0, 0.0)
        if self.shape is ProfileShape.TENT:
            return np.clip(1.0 - u, 0.0, None)
        return np.clip(1.0 - u * u, 0.0, None)

    def integral(self, dimension: int) -> float:
        """∫_{R^d} f(|x|) dx in closed form for d = 1, 2."""
        R = self.support
        if dimension == 1:
            return {
                ProfileShape.INDICATOR: 2.0 * R,
                ProfileShape.TENT: R,
                ProfileShape.EPANECHNIKOV: 4.0 * R / 3.0,
            }[self.shape]
        if dimension == 2:
            return {
                ProfileShape.INDICATOR: math.pi * R * R,
                ProfileShape.TENT: math.pi * R * R / 3.0,
                ProfileShape.EPANECHNIKOV: math.pi * R * R / 2.0,
            }[self.shape]
        raise InvalidArgumentError(f"Profile integral is implemented for d in (1, 2), got d={dimension}")

    def sample_offset(self, rng: np.random.Generator, dimension: int) -> np.ndarray:
        """Draw an offset from the density f(|x|) / ∫f: uniform in the support ball, thinned by f."""
        R = self.support
        while True:
            if dimension == 1:
                offset = np.array([rng.uniform(-R, R)])
            else:
                offset = rng.uniform(-R, R, size=dimension)
                if offset @ offset > R * R:
                    continue
            if self.shape is ProfileShape.INDICATOR or rng.random() < float(self(np.sqrt(offset @ offset))):
                return offset


class NonDegeneracyWitness(BaseModel):
    """b(x, η) ≥ c0 whenever some particle of η lies within distance r of x."""
    model_config = ConfigDict(frozen=True)

    c0: float = Field(gt=0)
    r: float = Field(gt=0)


class _KernelBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    # Step kernels have b(x, η) = g(#{y : |x - y| <= radius}) for a nondecreasing g.
    is_step: ClassVar[bool] = False
    lattice_only: ClassVar[bool] = False

    @property
    def interaction_range(self) -> float:
        raise NotImplementedError

    @property
    def is_linear(self) -> bool:
        """True when b(x, η) = Σ a(x - y) exactly (no cap), so births are parent + offset."""
        return False

    def rate_at(self, distances: np.ndarray) -> float:
        raise NotImplementedError

    def dominating_at(self, distances: np.ndarray) -> float:
        """Σ a(x - y) for the dominating profile a of the sublinear growth condition."""
        raise NotImplementedError

    def dominating_integral(self, dimension: int) -> float:
        raise NotImplementedError

    def envelope(self, n_near: int) -> float:
        """Upper bound of b on any point whose interaction partners number at most n_near."""
        raise NotImplementedError

    def witness(self) -> Optional[NonDegeneracyWitness]:
        raise NotImplementedError


class TruncatedIndicator(_KernelBase):
    """b(x, η) = k ∧ #{y ∈ η : |x - y| ≤ radius}."""
    kind: Literal["trunc"] = "trunc"
    cap: float = Field(gt=0, description="Cap k")
    radius: float = Field(1.0, gt=0)
    is_step: ClassVar[bool] = True

    @property
    def interaction_range(self) -> float:
        return self.radius

    def rate_from_count(self, count):
        return np.minimum(self.cap, count)

    def rate_at(self, distances: np.ndarray) -> float:
        return float(min(self.cap, np.count_nonzero(distances <= self.radius)))

    def dominating_at(self, distances: np.ndarray) -> float:
        return float(np.count_nonzero(distances <= self.radius))

    def dominating_integral(self, dimension: int) -> float:
        return Profile(shape=ProfileShape.INDICATOR, support=self.radius).integral(dimension)

    def envelope(self, n_near: int) -> float:
        return float(min(self.cap, n_near))

    def witness(self) -> NonDegeneracyWitness:
        return NonDegeneracyWitness(c0=min(self.cap, 1.0), r=self.radius)


class FreeIndicator(_KernelBase):
    """b(x, η) = #{y ∈ η : |x - y| ≤ radius}, the free branching indicator kernel."""
    kind: Literal["free"] = "free"
    radius: float = Field(1.0, gt=0)
    is_step: ClassVar[bool] = True

    @property
    def interaction_range(self) -> float:
        return self.radius

    @property
    def is_linear(self) -> bool:
        return True

    @property
    def profile(self) -> Profile:
        return Profile(shape=ProfileShape.INDICATOR, support=self.radius)

    @property
    def scale(self) -> float:
        return 1.0

    def rate_from_count(self, count):
        return np.asarray(count, dtype=float)

    def rate_at(self, distances: np.ndarray) -> float:
        return float(np.count_nonzero(distances <= self.radius))

    def dominating_at(self, distances: np.ndarray) -> float:
        return self.rate_at(distances)

    def dominating_integral(self, dimension: int) -> float:
        return self.profile.integral(dimension)

    def envelope(self, n_near: int) -> float:
        return float(n_near)

    def witness(self) -> NonDegeneracyWitness:
        return NonDegeneracyWitness(c0=1.0, r=self.radius)


class SumKernel(_KernelBase):
    """b(x, η) = λ Σ f(|x - y|), optionally capped at k."""
    kind: Literal["sum"] = "sum"
    profile: Profile
    scale: float = Field(gt=0, description="λ")
    cap: Optional[float] = Field(None, gt=0)

    @property
    def interaction_range(self) -> float:
        return self.profile.support

    @property
    def is_linear(self) -> bool:
        return self.cap is None

    def rate_at(self, distances: np.ndarray) -> float:
        total = self.scale * float(np.sum(self.profile(distances)))
        return total if self.cap is None else min(self.cap, total)

    def dominating_at(self, distances: np.ndarray) -> float:
        return self.scale * float(np.sum(self.profile(distances)))

    def dominating_integral(self, dimension: int) -> float:
        return self.scale * self.profile.integral(dimension)

    def envelope(self, n_near: int) -> float:
        bound = self.scale * n_near
        return bound if self.cap is None else min(self.cap, bound)

    def witness(self) -> NonDegeneracyWitness:
        r = self.profile.support / 2.0
        level = self.scale * float(self.profile(r))
        return NonDegeneracyWitness(c0=level if self.cap is None else min(self.cap, level), r=r)


class ZeroKernel(_KernelBase):
    """The degenerate kernel b ≡ 0; the identity for kernel sums."""
    kind: Literal["zero"] = "zero"
    radius: float = Field(1.0, gt=0)
    is_step: ClassVar[bool] = True

    @property
    def interaction_range(self) -> float:
        return self.radius

    def rate_from_count(self, count):
        return np.zeros_like(np.asarray(count, dtype=float))

    def rate_at(self, distances: np.ndarray) -> float:
        return 0.0

    def dominating_at(self, distances: np.ndarray) -> float:
        return 0.0

    def dominating_integral(self, dimension: int) -> float:
        return 0.0

    def envelope(self, n_near: int) -> float:
        return 0.0

    def witness(self) -> None:
        return None


class IndicatorSum(_KernelBase):
    """Pointwise sum of indicator kernels sharing one radius: b = Σ_i b_i."""
    kind: Literal["plus"] = "plus"
    components: List[Union[TruncatedIndicator, FreeIndicator]] = Field(min_length=2)
    is_step: ClassVar[bool] = True

    @model_validator(mode="after")
    def validate_shared_radius(self):
        radii = {c.radius for c in self.components}
        if len(radii) != 1:
            raise ValueError(f"Summed indicator kernels must share a radius, got {sorted(radii)}")
        return self

    @property
    def radius(self) -> float:
        return self.components[0].radius

    @property
    def interaction_range(self) -> float:
        return self.radius

    @property
    def is_linear(self) -> bool:
        return all(isinstance(c, FreeIndicator) for c in self.components)

    @property
    def profile(self) -> Profile:
        return Profile(shape=ProfileShape.INDICATOR, support=self.radius)

    @property
    def scale(self) -> float:
        return float(len(self.components))

    def rate_from_count(self, count):
        return sum(c.rate_from_count(count) for c in self.components)

    def rate_at(self, distances: np.ndarray) -> float:
        return float(self.rate_from_count(np.count_nonzero(distances <= self.radius)))

    def dominating_at(self, distances: np.ndarray) -> float:
        return len(self.components) * float(np.count_nonzero(distances <= self.radius))

    def dominating_integral(self, dimension: int) -> float:
        return sum(c.dominating_integral(dimension) for c in self.components)

    def envelope(self, n_near: int) -> float:
        return float(sum(c.envelope(n_near) for c in self.components))

    def witness(self) -> NonDegeneracyWitness:
        return NonDegeneracyWitness(c0=sum(c.witness().c0 for c in self.components), r=self.radius)


def powerlaw_normalizer(alpha: float) -> float:
    """c_pow(α) such that Σ_{x∈Z} a_pow(x) = 1, with a_pow(0) = 2 c_pow: c_pow = 1 / (2 ζ(α))."""
    return 1.0 / (2.0 * float(zeta(alpha)))


def truncation_radius(alpha: float, tail_mass: float = POWERLAW_TAIL_MASS) -> int:
    """Smallest R with Σ_{|x| > R} a_pow(x) < tail_mass (Hurwitz zeta tail)."""
    c_pow = powerlaw_normalizer(alpha)

    def tail(R: int) -> float:
        # Σ_{|x|>R} c (|x|+1)^-α = 2c ζ(α, R + 2)
        return 2.0 * c_pow * float(zeta(alpha, R + 2))

    hi = 1
    while tail(hi) >= tail_mass:
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail(mid) < tail_mass:
            hi = mid
        else:
            lo = mid
    return hi


def powerlaw_weights(alpha: float, r_max: Optional[int] = None) -> np.ndarray:
    """a_pow on displacements -R..R (index R is displacement 0), R from the tail rule unless given."""
    R = truncation_radius(alpha) if r_max is None else r_max
    c_pow = powerlaw_normalizer(alpha)
    d = np.abs(np.arange(-R, R + 1, dtype=float))
    w = c_pow / (d + 1.0) ** alpha
    w[R] = 2.0 * c_pow
    return w


class DiscretePowerLaw(_KernelBase):
    """Lattice kernel b(x, η) = k ∧ Σ_y a_pow(x - y), a_pow(x) = c_pow / (|x| + 1)^α, a_pow(0) = 2 c_pow."""
    kind: Literal["powerlaw"] = "powerlaw"
    alpha: float = Field(gt=2)
    cap: float = Field(gt=0)
    r_max: Optional[int] = Field(None, ge=1, description="Truncation radius; derived from the tail rule when omitted")
    lattice_only: ClassVar[bool] = True

    @cached_property
    def truncation(self) -> int:
        return self.r_max if self.r_max is not None else truncation_radius(self.alpha)

    @property
    def interaction_range(self) -> float:
        return float(self.truncation)

    @property
    def c_pow(self) -> float:
        return powerlaw_normalizer(self.alpha)

    @cached_property
    def weights(self) -> np.ndarray:
        return powerlaw_weights(self.alpha, self.truncation)

    def a_pow(self, displacement):
        d = np.abs(np.asarray(displacement, dtype=float))
        w = self.c_pow / (d + 1.0) ** self.alpha
        w = np.where(d == 0, 2.0 * self.c_pow, w)
        return np.where(d <= self.truncation, w, 0.0)

    def rate_at(self, distances: np.ndarray) -> float:
        return float(min(self.cap, np.sum(self.a_pow(distances))))

    def dominating_at(self, distances: np.ndarray) -> float:
        return float(np.sum(self.a_pow(distances)))

    def dominating_integral(self, dimension: int) -> float:
        return float(self.weights.sum())

    def envelope(self, n_near: int) -> float:
        return float(min(self.cap, 2.0 * self.c_pow * n_near))

    def witness(self) -> NonDegeneracyWitness:
        return NonDegeneracyWitness(c0=min(self.cap, self.c_pow / 2.0 ** self.alpha), r=1.0)


BirthKernel = Annotated[
    Union[TruncatedIndicator, FreeIndicator, SumKernel, DiscretePowerLaw, ZeroKernel, IndicatorSum],
    Field(discriminator="kind"),
]


def add_kernels(first, second):
    """
    The exact pointwise sum b1 + b2.

    The zero kernel is the identity; indicator kernels sharing a radius sum into
    an IndicatorSum. Other combinations have no exact representation here.
    """
    if isinstance(first, ZeroKernel):
        return second
    if isinstance(second, ZeroKernel):
        return first
    parts = []
    for kernel in (first, second):
        if isinstance(kernel, IndicatorSum):
            parts.extend(kernel.components)
        elif isinstance(kernel, (TruncatedIndicator, FreeIndicator)):
            parts.append(kernel)
        else:
            raise InvalidArgumentError(f"Cannot represent the sum of a {kernel.kind} kernel exactly")
    try:
        return IndicatorSum(components=parts)
    except ValueError as e:
        raise InvalidArgumentError(str(e)) from e
