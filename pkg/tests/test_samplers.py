import math

import numpy as np
import pytest
from scipy import stats

from engine.grid_index import GridIndex
from engine.rng import stream
from engine.samplers import (
    BranchingSampler,
    EnvelopeCellSampler,
    StepCellSampler,
    make_sampler,
    saturation_count,
)
from model.configuration import Configuration
from model.kernels import DiscretePowerLaw, IndicatorSum, TruncatedIndicator, ZeroKernel
from model.rates import evaluate_rate, total_rate
from utils.errors import InvalidArgumentError

LEVEL = 0.001


def _waiting_times(sampler, rng, n):
    return np.array([sampler.next_birth(rng, 0.0, math.inf)[0] for _ in range(n)])


def test_make_sampler_dispatch(trunc2, free1, tent_capped, origin1, origin2):
    assert isinstance(make_sampler(trunc2, origin1.array), StepCellSampler)
    assert isinstance(make_sampler(trunc2, origin2.array), EnvelopeCellSampler)
    assert isinstance(make_sampler(tent_capped, origin1.array), EnvelopeCellSampler)
    assert isinstance(make_sampler(free1, origin2.array), BranchingSampler)
    with pytest.raises(InvalidArgumentError):
        make_sampler(DiscretePowerLaw(alpha=3.0, cap=1.0, r_max=5), origin1.array)
    with pytest.raises(InvalidArgumentError):
        make_sampler(trunc2, np.zeros((1, 3)))


def test_saturation_counts(trunc2):
    assert saturation_count(trunc2) == 2
    assert saturation_count(TruncatedIndicator(cap=1.5, radius=1.0)) == 2
    unit = TruncatedIndicator(cap=1.0, radius=1.0)
    assert saturation_count(IndicatorSum(components=[unit, trunc2])) == 2
    assert saturation_count(ZeroKernel()) == 0


def test_step_sampler_total_rate_is_exact(trunc2, rng):
    for _ in range(50):
        points = rng.uniform(-5.0, 5.0, size=int(rng.integers(1, 40)))
        config = Configuration.from_array(points)
        sampler = StepCellSampler(trunc2, config.array)
        assert sampler.total_rate == pytest.approx(total_rate(trunc2, config), rel=1e-12, abs=1e-12)


def test_step_sampler_tracks_births(trunc2, rng):
    sampler = StepCellSampler(trunc2, np.array([[0.0]]))
    points = [0.0]
    for x in rng.uniform(-3.0, 3.0, size=60):
        sampler.add(np.array([x]))
        points.append(float(x))
    assert sampler.total_rate == pytest.approx(total_rate(trunc2, Configuration.from_array(points)), rel=1e-12)


def test_step_sampler_waiting_time_is_exponential(trunc2):
    config = Configuration.from_array([0.0, 0.5])
    sampler = StepCellSampler(trunc2, config.array)
    draws = _waiting_times(sampler, stream(1), 20_000)
    assert stats.kstest(draws, "expon", args=(0.0, 1.0 / 4.0)).pvalue > LEVEL


def test_step_sampler_location_follows_profile(trunc2):
    sampler = StepCellSampler(trunc2, np.array([[0.0], [0.5]]))
    rng = stream(2)
    xs = np.array([sampler.next_birth(rng, 0.0, math.inf)[1][0] for _ in range(20_000)])
    assert np.all((xs >= -1.0) & (xs <= 1.5))
    observed = np.histogram(xs, bins=[-1.0, -0.5, 1.0, 1.5])[0]
    expected = np.array([0.125, 0.75, 0.125]) * len(xs)
    assert stats.chisquare(observed, expected).pvalue > LEVEL


def test_envelope_sampler_waiting_time_is_exponential(trunc2, origin2):
    sampler = EnvelopeCellSampler(trunc2, origin2.array)
    draws = _waiting_times(sampler, stream(3), 10_000)
    assert stats.kstest(draws, "expon", args=(0.0, 1.0 / math.pi)).pvalue > LEVEL


def test_envelope_dominates_total_rate(tent_capped, rng):
    points = rng.uniform(-2.0, 2.0, size=(30, 1))
    sampler = EnvelopeCellSampler(tent_capped, points)
    assert sampler.total_rate >= total_rate(tent_capped, Configuration.from_array(points)) * (1 - 1e-9)


def test_branching_sampler_rate(free1):
    sampler = BranchingSampler(free1, np.zeros((1, 1)))
    assert sampler.total_rate == 2.0
    sampler.add(np.array([0.3]))
    assert sampler.total_rate == 4.0


def test_grid_rates_match_brute_force(trunc2, free1, rng):
    for kernel in (trunc2, free1):
        for d in (1, 2):
            for _ in range(500):
                points = rng.uniform(-4.0, 4.0, size=(int(rng.integers(1, 30)), d))
                grid = GridIndex(kernel.interaction_range, d)
                grid.add_many(points)
                config = Configuration.from_array(points, d)
                x = rng.uniform(-5.0, 5.0, size=d)
                assert grid.rate(kernel, x) == evaluate_rate(kernel, x, config)
