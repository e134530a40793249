import io
import json

import numpy as np
import pytest
from pydantic import ValidationError

from engine.event_log import EventLog
from engine.restricted_brw import simulate_restricted_brw
from engine.simulation import simulate
from model.configuration import Configuration
from utils.errors import InvalidArgumentError


@pytest.fixture
def small_log(origin1):
    return EventLog.from_events(
        initial=origin1,
        kernel="trunc:k=2.0,r=1.0",
        seed=3,
        t_end=5.0,
        events=[(0.5, np.array([0.4])), (1.25, np.array([-0.7])), (2.0, np.array([1.1]))],
    )


def test_jsonl_layout(small_log):
    lines = small_log.to_jsonl().splitlines()
    header = json.loads(lines[0])
    assert header["type"] == "header"
    assert header["kernel"] == "trunc:k=2.0,r=1.0"
    assert header["initial"] == [[0.0]]
    assert json.loads(lines[1]) == {"t": 0.5, "x": [0.4], "op": "birth"}
    assert len(lines) == 4


def test_parse_then_write_is_byte_identical(trunc2, origin2, tmp_path):
    log = simulate(trunc2, origin2, 4.0, seed=11)
    path = tmp_path / "run.jsonl"
    log.write_jsonl(path)
    again = EventLog.read_jsonl(path)
    assert again.to_jsonl() == path.read_text(encoding="utf-8")
    assert again.digest() == log.digest()
    assert np.array_equal(again.positions, log.positions)


def test_replay_at_intermediate_times(small_log):
    assert small_log.configuration_at(0.0).points == ((0.0,),)
    assert small_log.configuration_at(1.25).points == ((0.0,), (0.4,), (-0.7,))
    assert len(small_log.final_configuration()) == 4


def test_front_series(small_log):
    times, extents = small_log.front_series()
    assert times.tolist() == [0.0, 0.5, 2.0]
    assert extents.tolist() == [0.0, 0.4, 1.1]
    times, extents = small_log.front_series(direction=[-1.0])
    assert times.tolist() == [0.0, 1.25]
    assert extents.tolist() == [0.0, 0.7]


def test_event_times_must_increase(origin1):
    with pytest.raises(ValidationError):
        EventLog.from_events(initial=origin1, kernel="free:r=1.0", seed=0, t_end=1.0,
                             events=[(0.5, np.array([0.1])), (0.5, np.array([0.2]))])
    with pytest.raises(ValidationError):
        EventLog.from_events(initial=origin1, kernel="free:r=1.0", seed=0, t_end=1.0,
                             events=[(0.0, np.array([0.1]))])


def test_malformed_logs_are_rejected():
    with pytest.raises(InvalidArgumentError):
        EventLog.read_jsonl(io.StringIO(""))
    with pytest.raises(InvalidArgumentError):
        EventLog.read_jsonl(io.StringIO('{"t": 1.0, "x": [0.0], "op": "birth"}\n'))
    header = json.dumps({"type": "header", "dimension": 1, "kernel": "free:r=1.0", "seed": 0,
                         "t_end": 1.0, "initial": [[0.0]]})
    with pytest.raises(InvalidArgumentError):
        EventLog.read_jsonl(io.StringIO(header + '\n{"t": 0.5, "x": [0.1], "op": "split"}\n'))


def test_removals_replay():
    log = simulate_restricted_brw(n_cap=3, t_end=5.0, seed=2)
    assert log.removals.any()
    assert len(log.final_configuration()) == 3
    for t in np.linspace(0.0, 5.0, 11):
        assert len(log.configuration_at(t)) <= 3
    assert EventLog.from_jsonl(log.to_jsonl()).digest() == log.digest()


def test_lattice_logs_write_integers():
    log = EventLog.from_events(initial=Configuration.origin(1), kernel="eden:lambda=1.0", seed=0, t_end=1.0,
                               events=[(0.3, np.array([1.0]))], lattice=True)
    assert json.loads(log.to_jsonl().splitlines()[1])["x"] == [1]
