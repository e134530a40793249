"""
Exact event-driven simulation: samplers, the main and coupled runs, the
reduced two-point and gap chains, the capped branching random walk and the
replica map.
"""

from engine.event_log import EventLog, FrontTrace
from engine.grid_index import GridIndex
from engine.reduced import (
    GapChainState,
    GapTrajectory,
    TwoPointState,
    TwoPointTrajectory,
    gap_jump_density,
    gap_segments,
    gap_total_rate,
    simulate_gap_chain,
    simulate_two_point,
)
from engine.replicas import replica_map
from engine.restricted_brw import run_restricted_brw_front, simulate_restricted_brw
from engine.rng import replica_stream_id, stream
from engine.simulation import SharedMarkCoupling, run_front, simulate, simulate_coupled

__all__ = [
    "EventLog",
    "FrontTrace",
    "GapChainState",
    "GapTrajectory",
    "GridIndex",
    "SharedMarkCoupling",
    "TwoPointState",
    "TwoPointTrajectory",
    "gap_jump_density",
    "gap_segments",
    "gap_total_rate",
    "replica_map",
    "replica_stream_id",
    "run_front",
    "run_restricted_brw_front",
    "simulate",
    "simulate_coupled",
    "simulate_gap_chain",
    "simulate_restricted_brw",
    "simulate_two_point",
    "stream",
]
