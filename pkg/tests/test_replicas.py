import numpy as np
import pytest

from engine.replicas import replica_map
from engine.rng import REPLICA_BASE, replica_stream_id, stream
from engine.simulation import run_front


def test_streams_are_reproducible_and_distinct():
    assert stream(7, 3).random(5).tolist() == stream(7, 3).random(5).tolist()
    assert stream(7, 3).random(5).tolist() != stream(7, 4).random(5).tolist()
    assert stream(7, 3).random(5).tolist() != stream(8, 3).random(5).tolist()
    assert replica_stream_id(2) == REPLICA_BASE + 2
    with pytest.raises(ValueError):
        stream(-1)


def _draw(seed, stream_id, size):
    return stream(seed, stream_id).random(size).tolist()


def test_replica_order_follows_index():
    results = replica_map(_draw, 4, seed=3, n_jobs=1, size=2)
    assert results == [_draw(3, replica_stream_id(r), 2) for r in range(4)]


def test_worker_count_does_not_change_results(trunc2, origin1):
    serial = replica_map(run_front, 3, seed=21, n_jobs=1, kernel=trunc2, initial=origin1, t_end=20.0)
    parallel = replica_map(run_front, 3, seed=21, n_jobs=2, kernel=trunc2, initial=origin1, t_end=20.0)
    for a, b in zip(serial, parallel):
        assert np.array_equal(a.times, b.times)
        assert np.array_equal(a.extents, b.extents)


def test_replicas_must_be_positive():
    with pytest.raises(ValueError):
        replica_map(_draw, 0, seed=0, size=1)
