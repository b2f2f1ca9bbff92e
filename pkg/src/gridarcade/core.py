"""Environment sessions: seeding, sticky actions, observations.

A session wraps one game state machine plus a splitmix64 PRNG.  Every
frame consumes the sticky draw first (unconditionally, even when the
requested action equals the last executed one), then the game consumes
whatever draws its step rule documents.  That fixed order is what makes
trajectories bit-reproducible from (game, seed, action sequence) alone.
"""

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from gridarcade import games
from gridarcade.rng import Rng


class GridArcadeError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(GridArcadeError, ValueError):
    """Invalid environment configuration (unknown game, bad sigma...)."""


class InvalidActionError(GridArcadeError, ValueError):
    """Action code outside 0..5."""


class EpisodeOverError(GridArcadeError, RuntimeError):
    """act() called on a terminal session without reset()."""


class Action(IntEnum):
    NOOP = 0
    LEFT = 1
    UP = 2
    RIGHT = 3
    DOWN = 4
    FIRE = 5


N_ACTIONS = 6
GRID = 10

DEFAULT_STICKY_PROB = 0.1


@dataclass(frozen=True)
class EnvConfig:
    game: str
    seed: int
    sticky_prob: float = DEFAULT_STICKY_PROB
    ramping: bool = True

    def __post_init__(self):
        if self.game not in games.GAMES:
            raise ConfigError(
                f"unknown game {self.game!r}, expected one of {games.game_ids()}"
            )
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError(f"seed must be an int, got {type(self.seed).__name__}")
        if not 0.0 <= self.sticky_prob <= 1.0:
            raise ConfigError(f"sticky_prob must be in [0,1], got {self.sticky_prob}")


def channel_names(game: str):
    """Ordered observation channel names for a game."""
    try:
        return list(games.GAMES[game].CHANNELS)
    except KeyError:
        raise ConfigError(
            f"unknown game {game!r}, expected one of {games.game_ids()}"
        )


class Env:
    """One playable episode stream for a single game.

    Not thread-safe; sessions are independent, run one per thread or
    process for parallelism.
    """

    def __init__(self, config, engine="auto"):
        if not isinstance(config, EnvConfig):
            config = EnvConfig(**config)
        self.config = config
        self._module = games.load_game(config.game, engine)
        self._n_channels = len(self._module.CHANNELS)
        self.rng = Rng(config.seed)
        self.game = self._module.State(self.rng, config.ramping)
        self.last_action = int(Action.NOOP)
        self.frame_count = 0
        self.terminal = False

    @property
    def channel_names(self):
        return list(self._module.CHANNELS)

    @property
    def n_channels(self):
        return self._n_channels

    def act(self, action):
        """Advance one frame. Returns (reward, terminal)."""
        if self.terminal:
            raise EpisodeOverError("episode is over; call reset() first")
        a = int(action)
        if a < 0 or a >= N_ACTIONS:
            raise InvalidActionError(f"action code must be in 0..5, got {a}")
        if self.rng.next_uniform() < self.config.sticky_prob:
            executed = self.last_action
        else:
            executed = a
        self.last_action = executed
        reward, terminal = self.game.step(executed, self.rng)
        self.frame_count += 1
        self.terminal = terminal
        return float(reward), terminal

    def observe(self):
        """Dense (10, 10, n) boolean observation. Pure read."""
        n = self._n_channels
        obs = np.zeros((GRID, GRID, n), dtype=np.bool_)
        flat = obs.reshape(-1)
        for ch, row, col in self.game.cells():
            flat[(row * GRID + col) * n + ch] = True
        return obs

    def active_cells(self):
        """Sparse observation: sorted (channel, row, col) triples."""
        return sorted(self.game.cells())

    def reset(self):
        """Start a fresh episode, reseeding from one PRNG draw."""
        seed = self.rng.next_uint64()
        self.rng = Rng(seed)
        self.game = self._module.State(self.rng, self.config.ramping)
        self.last_action = int(Action.NOOP)
        self.frame_count = 0
        self.terminal = False


def create(config, engine="auto"):
    return Env(config, engine)


def pack_observation(obs):
    """Row-major bit-packed bytes of a dense observation."""
    return np.packbits(obs.reshape(-1)).tobytes()


def unpack_observation(buf, n_channels):
    bits = np.unpackbits(
        np.frombuffer(buf, dtype=np.uint8), count=GRID * GRID * n_channels
    )
    return bits.reshape(GRID, GRID, n_channels).astype(np.bool_)


def sparse_cells(obs):
    """Dense observation -> sorted (channel, row, col) triples."""
    return sorted((int(c), int(r), int(col)) for r, col, c in np.argwhere(obs))


def observation_manifest(game: str):
    """JSON-ready description of a game's observation tensor."""
    names = channel_names(game)
    return {"game": game, "shape": [GRID, GRID, len(names)], "channels": names}
