"""
Replica map: run one simulation per replica index on its own random stream.

Results come back ordered by replica index whatever the completion order, and
replica r always uses stream id `replica_stream_id(r)`, so a sweep is
reproducible for any worker count.
"""

import logging
from typing import Callable, List, Optional, TypeVar

from joblib import Parallel, delayed

from config.settings import settings
from engine.rng import replica_stream_id

logger = logging.getLogger(__name__)

T = TypeVar("T")


def replica_map(run: Callable[..., T], replicas: int, seed: int, n_jobs: Optional[int] = None, **kwargs) -> List[T]:
    """
    Call `run(seed=seed, stream_id=replica_stream_id(r), **kwargs)` for r in range(replicas).

    `run` must be a module-level function so it can be shipped to worker processes.
    """
    if replicas < 1:
        raise ValueError(f"replicas must be >= 1, got {replicas}")
    n_jobs = settings.n_jobs if n_jobs is None else n_jobs
    logger.debug(f"Replica map of {getattr(run, '__name__', run)}: {replicas} replicas on n_jobs={n_jobs}")
    if n_jobs == 1:
        return [run(seed=seed, stream_id=replica_stream_id(r), **kwargs) for r in range(replicas)]
    return Parallel(n_jobs=n_jobs)(
        delayed(run)(seed=seed, stream_id=replica_stream_id(r), **kwargs) for r in range(replicas)
    )
