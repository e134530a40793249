"""
Counter-based random streams keyed by (seed, stream id).

Every run draws from `stream(seed, stream_id)`. The same pair always yields the
same sequence, independent streams never overlap, and replica sweeps assign
stream ids by replica index so results do not depend on scheduling.
"""

import numpy as np

__all__ = ["stream", "replica_stream_id", "STREAM_MAIN", "STREAM_CHECKS"]

STREAM_MAIN = 0
STREAM_CHECKS = 1
# Replica r of a sweep uses stream id REPLICA_BASE + r.
REPLICA_BASE = 1_000


def stream(seed: int, stream_id: int = STREAM_MAIN) -> np.random.Generator:
    """Philox generator for the stream `stream_id` of `seed`."""
    if seed < 0 or stream_id < 0:
        raise ValueError(f"seed and stream_id must be nonnegative, got {seed}, {stream_id}")
    sequence = np.random.SeedSequence(int(seed), spawn_key=(int(stream_id),))
    return np.random.Generator(np.random.Philox(sequence))


def replica_stream_id(replica: int) -> int:
    return REPLICA_BASE + int(replica)
