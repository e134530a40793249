import math

import numpy as np
import pytest

from engine.rng import replica_stream_id
from engine.simulation import simulate
from lattice.eden import covered_radius, eden_label, simulate_eden, vacancy_bound
from lattice.export import occupation_table, write_occupation_csv
from lattice.powerlaw import gap_fraction, simulate_discrete_powerlaw
from lattice.projection import cell_of, project_to_lattice, simulate_projection_coupling
from lattice.state import LatticeRun, LatticeState, neighbors
from model.kernels import ZeroKernel
from utils.csv_tables import read_csv
from utils.errors import InvalidArgumentError


class TestEden:
    def test_deterministic_and_exclusive(self):
        a = simulate_eden(1.0, 2, 4.0, seed=3)
        b = simulate_eden(1.0, 2, 4.0, seed=3)
        assert a.sites.tolist() == b.sites.tolist()
        assert a.process == eden_label(1.0)
        state = a.final_state()
        assert state.exclusive
        assert state.total == len(a) + 1
        assert len(set(map(tuple, a.sites.tolist()))) == len(a)

    def test_new_sites_touch_the_cluster(self):
        run = simulate_eden(1.0, 2, 3.0, seed=8)
        occupied = {(0, 0)}
        for site in map(tuple, run.sites.tolist()):
            assert any(n in occupied for n in neighbors(site))
            occupied.add(site)

    def test_stops_at_target(self):
        run = simulate_eden(1.0, 1, 1000.0, seed=1, target=(5,))
        assert run.stopped_early
        assert tuple(run.sites[-1]) == (5,)
        assert run.t_end == run.times[-1] == run.occupation_time((5,))

    def test_rejections(self):
        with pytest.raises(InvalidArgumentError):
            simulate_eden(1.0, 3, 1.0, seed=0)
        with pytest.raises(InvalidArgumentError):
            simulate_eden(0.0, 1, 1.0, seed=0)
        with pytest.raises(InvalidArgumentError):
            simulate_eden(1.0, 2, 1.0, seed=0, target=(1,))

    def test_covered_radius(self):
        plus = LatticeState(dimension=2, occupancy={s: 1 for s in [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]},
                            exclusive=True)
        assert covered_radius(plus) == pytest.approx(math.sqrt(2.0))
        segment = LatticeState(dimension=1, occupancy={(-1,): 1, (0,): 1, (1,): 1})
        assert covered_radius(segment) == 2.0
        assert covered_radius(LatticeState(dimension=1, occupancy={(1,): 1})) == 0.0

    def test_vacancy_bound(self):
        assert vacancy_bound((0, 0), 1.0, 0.0) == 1.0
        assert vacancy_bound((2, -1), 1.0, 0.0) == pytest.approx(math.exp(3.0))
        assert vacancy_bound((1,), 2.0, 10.0) < vacancy_bound((1,), 1.0, 10.0)

    def test_one_dimensional_count_is_poisson(self):
        counts = [len(simulate_eden(1.0, 1, 5.0, seed=4, stream_id=replica_stream_id(r))) for r in range(200)]
        assert np.mean(counts) == pytest.approx(10.0, abs=1.0)


class TestDiscretePowerLaw:
    def test_matched_event_count(self):
        run = simulate_discrete_powerlaw(3.5, 1.0, 1e6, seed=2, stop_after=200)
        assert len(run) == 200
        assert run.stopped_early
        assert run.t_end == run.times[-1]
        assert run.final_state().total == 201
        assert np.all(np.diff(run.times) > 0)

    def test_horizon_without_stop(self):
        run = simulate_discrete_powerlaw(4.2, 1.0, 3.0, seed=2)
        assert not run.stopped_early
        assert run.t_end == 3.0
        assert np.all(run.times <= 3.0)

    def test_rejections(self):
        with pytest.raises(InvalidArgumentError):
            simulate_discrete_powerlaw(1.5, 1.0, 1.0, seed=0)
        with pytest.raises(InvalidArgumentError):
            simulate_discrete_powerlaw(3.0, 1.0, 1.0, seed=0, stop_after=-1)

    def test_event_log_replays_stacked_sites(self):
        run = LatticeRun(dimension=1, process="powerlaw:alpha=3.5,cap=1.0", seed=0, t_end=1.0, exclusive=False,
                         initial={(0,): 1}, times=np.array([0.2, 0.5, 0.7]), sites=np.array([[1], [1], [-1]]),
                         first_occupation={(0,): 0.0, (1,): 0.2, (-1,): 0.7})
        log = run.to_event_log()
        assert log.occupancy_at(0.6) == {(0.0,): 1, (1.0,): 2}
        assert log.configuration_at(0.6).points == ((0.0,), (1.0,))
        final = log.final_configuration()
        assert sorted(p[0] for p in final.points) == [-1.0, 0.0, 1.0]
        assert sum(log.occupancy_at(np.inf).values()) == run.final_state().total

    def test_stacked_sites_from_a_simulated_run(self):
        run = simulate_discrete_powerlaw(2.8, 1.0, 1e6, seed=6, stop_after=300)
        log = run.to_event_log()
        occupancy = {(int(k[0]),): v for k, v in log.occupancy_at(np.inf).items()}
        assert occupancy == run.final_state().occupancy
        assert len(log.final_configuration()) == len(run.final_state().occupancy)

    def test_gap_fraction(self):
        state = LatticeState(dimension=1, occupancy={(0,): 1, (1,): 2, (3,): 1})
        assert gap_fraction(state) == 0.25
        assert gap_fraction(LatticeState(dimension=1)) == 0.0
        with pytest.raises(InvalidArgumentError):
            gap_fraction(LatticeState(dimension=2, occupancy={(0, 0): 1}))

    def test_occupation_csv(self, tmp_path):
        run = simulate_discrete_powerlaw(2.8, 1.0, 1e6, seed=6, stop_after=50)
        rows = read_csv(write_occupation_csv(run, tmp_path / "occupation.csv"))
        assert list(rows[0]) == ["site_0", "first_occupation_time", "count"]
        assert rows[0]["site_0"] == "0" and float(rows[0]["first_occupation_time"]) == 0.0
        assert sum(int(r["count"]) for r in rows) == 51
        times = [float(r["first_occupation_time"]) for r in rows]
        assert times == sorted(times)
        assert len(occupation_table(run, t=0.0)) == 1


class TestProjection:
    def test_cell_boundaries(self):
        assert cell_of([0.125], 0.25) == (0,)
        assert cell_of([0.3], 0.25) == (1,)
        assert cell_of([-0.125], 0.25) == (-1,)
        assert cell_of([-0.13, 0.0], 0.25) == (-1, 0)

    def test_projection_keeps_every_particle(self, trunc2, origin2):
        log = simulate(trunc2, origin2, 3.0, seed=5)
        run = project_to_lattice(log, 0.25)
        assert run.final_state().total == len(log.final_configuration())
        assert run.sites.tolist() == [list(cell_of(x, 0.25)) for x in log.positions]
        with pytest.raises(InvalidArgumentError):
            project_to_lattice(log, 0.0)

    def test_coupled_lattice_is_dominated(self, trunc2):
        report = simulate_projection_coupling(trunc2, 8.0, seed=7)
        assert report.dominated
        assert report.cell == 0.5
        assert report.site_rate == pytest.approx(0.5)
        projected = project_to_lattice(report.continuum, report.cell).final_state()
        for site, count in report.lattice.final_state().occupancy.items():
            assert count <= projected.count(site)
        assert len(report.lattice) <= len(report.continuum)

    def test_degenerate_kernel_has_no_coupling(self):
        with pytest.raises(InvalidArgumentError):
            simulate_projection_coupling(ZeroKernel(), 1.0, seed=0)


def test_one_dimensional_passage_time_mean():
    passage = [simulate_eden(1.0, 1, 1e3, seed=11, target=(20,), stream_id=replica_stream_id(r)).t_end
               for r in range(500)]
    assert np.mean(passage) == pytest.approx(20.0, rel=0.05)


@pytest.mark.slow
def test_passage_time_at_distance_one_hundred():
    passage = [simulate_eden(1.0, 1, 1e4, seed=12, target=(100,), stream_id=replica_stream_id(r)).t_end
               for r in range(10_000)]
    assert np.mean(passage) == pytest.approx(100.0, rel=0.02)


@pytest.mark.slow
def test_covered_radius_grows_linearly():
    runs = [simulate_eden(1.0, 2, 100.0, seed=13, stream_id=replica_stream_id(r)) for r in range(4)]
    half = np.mean([covered_radius(run.state_at(50.0)) / 50.0 for run in runs])
    full = np.mean([covered_radius(run.final_state()) / 100.0 for run in runs])
    assert half > 0.0
    assert full == pytest.approx(half, rel=0.1)
