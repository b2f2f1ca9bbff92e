"""Game registry.

Each game module exposes CHANNELS (observation channel names in order),
RAMPS (whether the difficulty switch does anything) and a State class
with `step(action, rng) -> (reward, terminal)` and
`cells() -> [(channel, row, col), ...]`.

The hot modules (games and the RNG) may be compiled to extension modules
at build time; the import system then prefers the compiled version
automatically.  `load_game(..., engine="pure")` bypasses that and loads
the plain-Python source directly, which is what the benchmark uses to
compare engines.
"""

import importlib.util
import pathlib

from gridarcade.games import (
    asterix,
    breakout,
    freeway,
    seaquest,
    space_invaders,
)

GAMES = {
    "asterix": asterix,
    "breakout": breakout,
    "freeway": freeway,
    "seaquest": seaquest,
    "space_invaders": space_invaders,
}

_pure_cache = {}


def game_ids():
    return sorted(GAMES)


def is_compiled(module):
    return not module.__file__.endswith(".py")


def _load_pure(game_id):
    if game_id in _pure_cache:
        return _pure_cache[game_id]
    path = pathlib.Path(__file__).parent / (game_id + ".py")
    spec = importlib.util.spec_from_file_location(
        "gridarcade.games._pure_" + game_id, path
    )
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    _pure_cache[game_id] = module
    return module


def load_game(game_id, engine="auto"):
    """Return the module implementing `game_id`.

    engine: "auto" takes whatever the import system picked (compiled when
    built, pure otherwise), "pure" forces the plain-Python source,
    "compiled" asserts the auto pick is a compiled extension.
    """
    try:
        module = GAMES[game_id]
    except KeyError:
        raise KeyError(f"unknown game {game_id!r}, expected one of {game_ids()}")
    if engine == "auto":
        return module
    if engine == "pure":
        return _load_pure(game_id)
    if engine == "compiled":
        if not is_compiled(module):
            raise RuntimeError(
                f"{game_id} is not compiled in this install; "
                "build with `python setup.py build_ext --inplace` or reinstall"
            )
        return module
    raise ValueError(f"unknown engine {engine!r}")
