"""Self-validating episode replays.

A replay is JSON Lines: one header record

    {"game", "seed", "sticky_prob", "ramping", "version"}

followed by one record per frame

    {"requested_action", "executed_action", "reward", "terminal"}

Because environments are deterministic, the file carries everything
needed to re-simulate the episode; verification replays the requested
actions from the recorded seed and demands that the executed actions,
rewards and terminal flags all reappear bit-for-bit.
"""

import json

from gridarcade.core import (
    ConfigError,
    Env,
    EnvConfig,
    EpisodeOverError,
    GridArcadeError,
    N_ACTIONS,
)

REPLAY_VERSION = 1

HEADER_KEYS = ("game", "seed", "sticky_prob", "ramping", "version")
FRAME_KEYS = ("requested_action", "executed_action", "reward", "terminal")


class CorruptReplayError(GridArcadeError):
    """Replay file is malformed or fails re-simulation."""


def record(config, policy, max_frames=100_000, engine="auto"):
    """Play one episode with policy(observation) -> action code.

    Returns (header, frames). Stops at terminal or after max_frames.
    """
    env = Env(config, engine)
    header = {
        "game": config.game,
        "seed": config.seed,
        "sticky_prob": config.sticky_prob,
        "ramping": config.ramping,
        "version": REPLAY_VERSION,
    }
    frames = []
    while not env.terminal and len(frames) < max_frames:
        a = int(policy(env.observe()))
        reward, terminal = env.act(a)
        frames.append(
            {
                "requested_action": a,
                "executed_action": int(env.last_action),
                "reward": reward,
                "terminal": terminal,
            }
        )
    return header, frames


def write(path, header, frames):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, separators=(",", ":")) + "\n")
        for frame in frames:
            fh.write(json.dumps(frame, separators=(",", ":")) + "\n")


def _parse_header(obj):
    if not isinstance(obj, dict) or set(obj) != set(HEADER_KEYS):
        raise CorruptReplayError(f"bad header record: {obj!r}")
    if obj["version"] != REPLAY_VERSION:
        raise CorruptReplayError(
            f"unsupported replay version {obj['version']!r}, expected {REPLAY_VERSION}"
        )
    return obj


def _parse_frame(obj, lineno):
    if not isinstance(obj, dict) or set(obj) != set(FRAME_KEYS):
        raise CorruptReplayError(f"bad frame record on line {lineno}: {obj!r}")
    for key in ("requested_action", "executed_action"):
        a = obj[key]
        if not isinstance(a, int) or not 0 <= a < N_ACTIONS:
            raise CorruptReplayError(f"bad {key} on line {lineno}: {a!r}")
    if not isinstance(obj["terminal"], bool):
        raise CorruptReplayError(f"bad terminal flag on line {lineno}")
    if not isinstance(obj["reward"], (int, float)) or isinstance(obj["reward"], bool):
        raise CorruptReplayError(f"bad reward on line {lineno}")
    return obj


def parse(text):
    """Parse replay JSONL text -> (header, frames). No re-simulation."""
    header = None
    frames = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorruptReplayError(f"line {lineno} is not JSON: {exc}") from exc
        if header is None:
            header = _parse_header(obj)
        else:
            frames.append(_parse_frame(obj, lineno))
    if header is None:
        raise CorruptReplayError("empty replay")
    return header, frames


def simulate(header, frames, frame_hook=None, engine="auto"):
    """Re-simulate a parsed replay, checking every recorded outcome.

    frame_hook(index, env, reward, terminal), when given, runs after each
    verified frame. Returns the finished Env. Raises CorruptReplayError
    on any divergence from the recording.
    """
    try:
        config = EnvConfig(
            game=header["game"],
            seed=header["seed"],
            sticky_prob=header["sticky_prob"],
            ramping=header["ramping"],
        )
    except (ConfigError, TypeError) as exc:
        raise CorruptReplayError(f"bad header: {exc}") from exc
    env = Env(config, engine)
    for i, frame in enumerate(frames):
        try:
            reward, terminal = env.act(frame["requested_action"])
        except EpisodeOverError:
            raise CorruptReplayError(f"frame {i} continues past a terminal frame")
        if env.last_action != frame["executed_action"]:
            raise CorruptReplayError(
                f"frame {i}: executed action {env.last_action} != recorded "
                f"{frame['executed_action']}"
            )
        if reward != frame["reward"]:
            raise CorruptReplayError(
                f"frame {i}: reward {reward} != recorded {frame['reward']}"
            )
        if terminal != frame["terminal"]:
            raise CorruptReplayError(
                f"frame {i}: terminal {terminal} != recorded {frame['terminal']}"
            )
        if frame_hook is not None:
            frame_hook(i, env, reward, terminal)
    return env


def load(path, verify=True):
    """Read a replay file; verify=True also re-simulates it."""
    with open(path, "r", encoding="utf-8") as fh:
        header, frames = parse(fh.read())
    if verify:
        simulate(header, frames)
    return header, frames
