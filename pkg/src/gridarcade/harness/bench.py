"""Per-frame latency benchmarks.

`bench` times act+observe on a scripted action cycle (environment cost
only); `bench_with_agent` times the same loop with a learning agent in
it (act + observe + update), since the two figures answer different
questions.  Episode resets happen outside the timed region.
"""

import numpy as np

import time

from gridarcade.agents import AgentConfig, make_agent
from gridarcade.core import Env, EnvConfig
from gridarcade.games import is_compiled, load_game

SCRIPT = (3, 3, 5, 2, 1, 5, 4, 0, 1, 5, 3, 2)


def _stats(samples_ns):
    return {
        "frames": int(samples_ns.size),
        "median_ns": float(np.median(samples_ns)),
        "p99_ns": float(np.percentile(samples_ns, 99)),
        "mean_ns": float(samples_ns.mean()),
        "median_ms": float(np.median(samples_ns)) / 1e6,
    }


def bench(game, frames, engine="auto", seed=0, sticky_prob=0.1):
    """Environment-only latency: scripted policy, ns per act+observe."""
    env = Env(EnvConfig(game=game, seed=seed, sticky_prob=sticky_prob), engine)
    samples = np.empty(frames, dtype=np.int64)
    script = SCRIPT
    n_script = len(script)
    clock = time.perf_counter_ns
    for i in range(frames):
        action = script[i % n_script]
        t0 = clock()
        reward, terminal = env.act(action)
        env.observe()
        samples[i] = clock() - t0
        if terminal:
            env.reset()
    out = _stats(samples)
    out["game"] = game
    out["engine"] = "compiled" if is_compiled(load_game(game, engine)) else "pure"
    return out


def bench_with_agent(game, frames, agent_kind, engine="auto", seed=0,
                     alpha_exponent=-6, sticky_prob=0.1):
    """Agent-inclusive latency: act + observe + learning update."""
    env = Env(EnvConfig(game=game, seed=seed, sticky_prob=sticky_prob), engine)
    agent = make_agent(
        agent_kind, env.n_channels, AgentConfig(step_size=2.0**alpha_exponent), seed
    )
    samples = np.empty(frames, dtype=np.int64)
    clock = time.perf_counter_ns
    obs = env.observe()
    for i in range(frames):
        t0 = clock()
        action = agent.act(obs)
        reward, terminal = env.act(action)
        obs2 = env.observe()
        agent.observe_transition(obs, action, reward, obs2, terminal)
        samples[i] = clock() - t0
        if terminal:
            agent.end_episode()
            env.reset()
            obs = env.observe()
        else:
            obs = obs2
    out = _stats(samples)
    out["game"] = game
    out["agent"] = agent_kind
    out["engine"] = "compiled" if is_compiled(load_game(game, engine)) else "pure"
    return out


def compare_engines(game, frames, seed=0):
    """Pure vs compiled env-only stats; compiled None when unavailable."""
    result = {"pure": bench(game, frames, engine="pure", seed=seed)}
    if is_compiled(load_game(game)):
        result["compiled"] = bench(game, frames, engine="auto", seed=seed)
    else:
        result["compiled"] = None
    return result
