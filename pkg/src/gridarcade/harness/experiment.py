"""Experiment orchestration: (alpha, seed) cells, deterministic per cell.

Each cell derives two independent sub-seeds from its cell seed (one
splitmix64 stream, two next_uint64 draws: environment first, agent
second), builds a fresh environment and agent, and runs the frame
budget.  Cells never share state, so they can run in any order or in a
process pool without changing results.
"""

import dataclasses
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from gridarcade.agents import AgentConfig, TrainingDivergedError, make_agent
from gridarcade.core import Env, EnvConfig
from gridarcade.rng import Rng


@dataclass(frozen=True)
class ExperimentSpec:
    game: str
    agent: str = "random"
    frames: int = 100_000
    seeds: tuple = (0,)
    alpha_exponents: tuple = (-6,)
    sticky_prob: float = 0.1
    ramping: bool = True
    agent_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.frames < 1:
            raise ValueError("frame budget must be >= 1")
        if len(self.seeds) < 1:
            raise ValueError("need at least one seed")

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        for key in ("seeds", "alpha_exponents"):
            if key in data:
                data[key] = tuple(data[key])
        return cls(**data)

    def to_dict(self):
        out = dataclasses.asdict(self)
        out["seeds"] = list(self.seeds)
        out["alpha_exponents"] = list(self.alpha_exponents)
        return out


@dataclass
class RunRecord:
    game: str
    agent: str
    alpha_exponent: int
    seed: int
    frames: int
    episode_returns: list
    episode_end_frames: list
    ns_per_frame: float
    failed: bool = False
    fail_reason: str = ""

    def to_json(self):
        return json.dumps(dataclasses.asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line):
        return cls(**json.loads(line))


def derive_cell_seeds(seed):
    """(env_seed, agent_seed) from one cell seed; two splitmix draws."""
    stream = Rng(seed)
    return stream.next_uint64(), stream.next_uint64()


def run_cell(spec, alpha_exponent, seed):
    """Train one (alpha, seed) cell for the full frame budget."""
    env_seed, agent_seed = derive_cell_seeds(seed)
    env = Env(
        EnvConfig(
            game=spec.game,
            seed=env_seed,
            sticky_prob=spec.sticky_prob,
            ramping=spec.ramping,
        )
    )
    config = AgentConfig(
        step_size=2.0**alpha_exponent, **spec.agent_overrides
    )
    agent = make_agent(spec.agent, env.n_channels, config, agent_seed)
    record = RunRecord(
        game=spec.game,
        agent=spec.agent,
        alpha_exponent=alpha_exponent,
        seed=seed,
        frames=spec.frames,
        episode_returns=[],
        episode_end_frames=[],
        ns_per_frame=0.0,
    )
    obs = env.observe()
    episode_return = 0.0
    start = time.perf_counter_ns()
    try:
        for frame in range(1, spec.frames + 1):
            action = agent.act(obs)
            reward, terminal = env.act(action)
            obs2 = env.observe()
            agent.observe_transition(obs, action, reward, obs2, terminal)
            episode_return += reward
            if terminal:
                record.episode_returns.append(episode_return)
                record.episode_end_frames.append(frame)
                episode_return = 0.0
                agent.end_episode()
                env.reset()
                obs = env.observe()
            else:
                obs = obs2
    except TrainingDivergedError as exc:
        record.failed = True
        record.fail_reason = str(exc)
    record.ns_per_frame = (time.perf_counter_ns() - start) / spec.frames
    return record


def _run_cell_args(args):
    return run_cell(*args)


def run(spec, workers=1):
    """All (alpha, seed) cells of a spec -> list of RunRecord."""
    cells = [
        (spec, alpha_exponent, seed)
        for alpha_exponent in spec.alpha_exponents
        for seed in spec.seeds
    ]
    if workers <= 1 or len(cells) <= 1:
        return [run_cell(*cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_cell_args, cells))


def write_records(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(record.to_json() + "\n")


def read_records(path):
    with open(path, "r", encoding="utf-8") as fh:
        return [RunRecord.from_json(line) for line in fh if line.strip()]
