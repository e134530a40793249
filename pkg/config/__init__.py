"""
Configuration package: environment-driven settings and strict run configs.
"""

from .settings import settings
from .run_config import RunConfig

__all__ = [
    "settings",
    "RunConfig",
]
