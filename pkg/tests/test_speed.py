import math

import numpy as np
import pytest

from analytics.density import theoretical_speed_k2
from analytics.speed import estimate_speed
from engine.event_log import FrontTrace
from engine.replicas import replica_map
from engine.simulation import run_front
from model.configuration import Configuration
from utils.errors import InsufficientDataError, InvalidArgumentError


def _linear_trace(slope: float, t_end: float = 100.0, points: int = 101, seed: int = 0) -> FrontTrace:
    times = np.linspace(0.0, t_end, points)
    return FrontTrace(kernel="synthetic", seed=seed, t_end=t_end, n_events=points, times=times,
                      extents=slope * times)


def test_single_linear_trace():
    estimate = estimate_speed([_linear_trace(0.7)])
    assert estimate.slope == pytest.approx(0.7)
    assert estimate.stderr == pytest.approx(0.0, abs=1e-12)
    assert estimate.window == (50.0, 100.0)
    assert estimate.replicas == 1 and estimate.per_replica == []


def test_replicas_pool_by_spread_of_slopes():
    estimate = estimate_speed([_linear_trace(s) for s in (0.6, 0.7, 0.8)], label="three")
    assert estimate.slope == pytest.approx(0.7)
    assert estimate.stderr == pytest.approx(0.1 / math.sqrt(3.0))
    assert estimate.per_replica == pytest.approx([0.6, 0.7, 0.8])
    assert estimate.label == "three"
    assert estimate.within(0.75, n_stderr=1.0)
    assert not estimate.within(0.9)


def test_window_is_common_to_all_runs():
    estimate = estimate_speed([_linear_trace(0.5, t_end=80.0), _linear_trace(0.5)], window_fraction=0.25)
    assert estimate.window == (60.0, 80.0)


def test_insufficient_data():
    with pytest.raises(InsufficientDataError):
        estimate_speed([_linear_trace(0.7, points=12)])
    with pytest.raises(InvalidArgumentError):
        estimate_speed([])
    with pytest.raises(InvalidArgumentError):
        estimate_speed([_linear_trace(0.7)], window_fraction=1.0)


def test_truncated_cap_two_speed(trunc2):
    traces = replica_map(run_front, 8, seed=31, n_jobs=1, kernel=trunc2, initial=Configuration.origin(1),
                         t_end=500.0)
    estimate = estimate_speed(traces)
    assert abs(estimate.slope - theoretical_speed_k2()) < 0.07


@pytest.mark.slow
def test_truncated_cap_two_speed_to_high_precision(trunc2):
    traces = replica_map(run_front, 20, seed=32, kernel=trunc2, initial=Configuration.origin(1), t_end=2000.0)
    estimate = estimate_speed(traces)
    exact = theoretical_speed_k2()
    assert estimate.within(exact, n_stderr=3.0)
    assert abs(estimate.slope - exact) < 0.02


@pytest.mark.slow
def test_speed_is_monotone_in_the_cap():
    from analytics.biggins import biggins_speed
    from analytics.superadditivity import measure_speed
    from model.kernels import TruncatedIndicator

    estimates = [measure_speed(TruncatedIndicator(cap=k, radius=1.0), 10, 1000.0, seed=33)
                 for k in (1.2, 1.5, 2.0, 3.0, 5.0)]
    for lower, upper in zip(estimates, estimates[1:]):
        assert lower.slope <= upper.slope + 3.0 * math.hypot(lower.stderr, upper.stderr)
    assert estimates[2].within(theoretical_speed_k2(), n_stderr=3.0, atol=0.02)
    assert estimates[-1].slope < biggins_speed().a_star
