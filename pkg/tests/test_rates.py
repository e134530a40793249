import math

import numpy as np
import pytest

from model.configuration import Configuration
from model.kernels import DiscretePowerLaw, FreeIndicator, TruncatedIndicator, powerlaw_weights
from model.rates import evaluate_rate, total_rate, union_volume
from model.step_profile import profile_mass, sample_step, step_profile
from utils.errors import InvalidArgumentError


def test_evaluate_rate_counts_partners(trunc2):
    config = Configuration.from_array([0.0, 0.5, 3.0])
    assert evaluate_rate(trunc2, [0.2], config) == 2.0
    assert evaluate_rate(trunc2, [2.5], config) == 1.0
    assert evaluate_rate(trunc2, [10.0], config) == 0.0
    with pytest.raises(InvalidArgumentError):
        evaluate_rate(trunc2, [0.0, 0.0], config)


def test_total_rate_1d_step_profile(trunc2):
    assert total_rate(trunc2, Configuration.from_array([0.0])) == pytest.approx(2.0)
    # [-1, -0.5] at 1, [-0.5, 1] at 2, [1, 1.5] at 1
    assert total_rate(trunc2, Configuration.from_array([0.0, 0.5])) == pytest.approx(4.0)
    unit = TruncatedIndicator(cap=1.0, radius=1.0)
    assert total_rate(unit, Configuration.from_array([0.0, 0.5, 5.0])) == pytest.approx(2.5 + 2.0)


def test_total_rate_linear_kernel(free1):
    config = Configuration.from_array([0.0, 0.1, 0.2])
    assert total_rate(free1, config) == pytest.approx(6.0)


def test_total_rate_2d_single_disk(trunc2, origin2):
    assert total_rate(trunc2, origin2) == pytest.approx(math.pi, rel=1e-9)


def test_total_rate_2d_two_overlapping_disks():
    unit = TruncatedIndicator(cap=1.0, radius=1.0)
    config = Configuration(dimension=2, points=((0.0, 0.0), (1.0, 0.0)))
    lens = 2.0 * math.acos(0.5) - 0.5 * math.sqrt(3.0)
    assert total_rate(unit, config) == pytest.approx(2.0 * math.pi - lens, rel=1e-8)
    assert union_volume(config.array, 1.0) == pytest.approx(2.0 * math.pi - lens, rel=1e-8)
    free = FreeIndicator(radius=1.0)
    assert total_rate(free, config) == pytest.approx(2.0 * math.pi)


def test_total_rate_capped_sum_kernel_1d(tent_capped):
    # one particle: 2·(1 - |x|) never reaches the cap of 3
    assert total_rate(tent_capped, Configuration.from_array([0.0])) == pytest.approx(2.0, rel=1e-10)


def test_total_rate_powerlaw_single_site():
    kernel = DiscretePowerLaw(alpha=3.0, cap=10.0, r_max=5)
    config = Configuration.from_array([0.0])
    assert total_rate(kernel, config) == pytest.approx(powerlaw_weights(3.0, 5).sum())
    with pytest.raises(InvalidArgumentError):
        total_rate(kernel, Configuration.from_array([0.5]))


def test_total_rate_needs_particles(trunc2):
    with pytest.raises(InvalidArgumentError):
        total_rate(trunc2, Configuration(dimension=1))


def test_step_profile_and_inverse_cdf():
    edges, values = step_profile(np.array([0.0, 0.5]), 1.0, lambda c: np.minimum(2, c))
    assert edges.tolist() == [-1.0, -0.5, 1.0, 1.5]
    assert values.tolist() == [1.0, 2.0, 1.0]
    assert profile_mass(edges, values) == pytest.approx(4.0)
    assert sample_step(edges, values, 0.0) == pytest.approx(-1.0)
    assert sample_step(edges, values, 0.125) == pytest.approx(-0.5)
    assert sample_step(edges, values, 0.875) == pytest.approx(1.0)
