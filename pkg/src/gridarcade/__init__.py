"""Deterministic 10x10 grid arcade environments for RL experiments."""

from gridarcade.core import (
    Action,
    ConfigError,
    Env,
    EnvConfig,
    EpisodeOverError,
    GridArcadeError,
    InvalidActionError,
    channel_names,
    create,
    observation_manifest,
)
from gridarcade.games import game_ids
from gridarcade.rng import Rng

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ConfigError",
    "Env",
    "EnvConfig",
    "EpisodeOverError",
    "GridArcadeError",
    "InvalidActionError",
    "Rng",
    "channel_names",
    "create",
    "game_ids",
    "observation_manifest",
    "__version__",
]
