import math

import numpy as np
import pytest

from analytics.shape import farthest_angle, pooled_isotropy, sector_index, shape_statistics
from engine.event_log import EventLog
from model.configuration import Configuration
from utils.errors import InsufficientDataError, InvalidArgumentError


def _disc_log(seed: int, n: int = 1200, t_end: float = 10.0) -> EventLog:
    """Synthetic isotropic growth: the particle born at t lies uniformly in the disc of radius t/2."""
    rng = np.random.default_rng(seed)
    times = np.sort(rng.uniform(0.0, t_end, n))
    angles = rng.uniform(0.0, 2.0 * math.pi, n)
    radii = 0.5 * times * np.sqrt(rng.uniform(0.0, 1.0, n))
    events = [(t, np.array([r * math.cos(a), r * math.sin(a)])) for t, r, a in zip(times, radii, angles)]
    return EventLog.from_events(initial=Configuration.origin(2), kernel="trunc:k=5.0,r=1.0", seed=seed,
                                t_end=t_end, events=events)


def test_sector_index():
    points = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0], [1.0, -1e-12]])
    assert sector_index(points, 4).tolist() == [0, 1, 2, 3, 3]


def test_shape_of_a_disc():
    log = _disc_log(1)
    report = shape_statistics(log, sectors=8)
    assert report.n_particles == 1201
    assert sum(report.sector_counts) == 1201
    assert len(report.sector_radii) == 8
    # r = 1 is read from the kernel spec
    assert all(0.4 < radius <= 0.6 + 1e-12 for radius in report.sector_radii)
    assert report.relative_spread < 0.3
    assert report.radius_half_time > report.mean_radius
    assert report.p_value > 0.001


def test_explicit_interaction_radius():
    log = _disc_log(2)
    assert shape_statistics(log, r=0.0).mean_radius < shape_statistics(log).mean_radius


def test_shape_rejections(trunc2, origin1):
    with pytest.raises(InvalidArgumentError):
        shape_statistics(EventLog.from_events(initial=origin1, kernel="trunc:k=2.0,r=1.0", seed=0, t_end=1.0,
                                              events=[]))
    with pytest.raises(InsufficientDataError):
        shape_statistics(_disc_log(3, n=100))
    with pytest.raises(InvalidArgumentError):
        shape_statistics(_disc_log(3), sectors=1)


def test_pooled_isotropy():
    logs = [_disc_log(seed) for seed in range(4)]
    report = pooled_isotropy(logs, sectors=4)
    assert report.runs == 4
    assert sum(report.sector_counts) == 4
    assert report.max_relative_spread < 0.3
    assert 0.0 <= farthest_angle(logs[0]) < 2.0 * math.pi
    with pytest.raises(InvalidArgumentError):
        pooled_isotropy([])
