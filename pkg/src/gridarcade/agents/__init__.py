"""Baseline agents: random, linear Q-learning variants, AC(lambda).

Agent kinds (the CLI names):
  random         uniform policy, no learning
  qlin           Q-learning + replay buffer + target weights
  qlin-noreplay  Q-learning + target weights, online updates
  qlin-notarget  Q-learning + replay buffer, bootstrap from live weights
  ac-lambda      actor-critic with eligibility traces (lambda = 0.8)
  ac0            one-step actor-critic (lambda = 0)

All agents share the interface: act(obs) -> action code,
observe_transition(obs, a, r, obs2, terminal), end_episode(),
checkpoint_arrays().
"""

from gridarcade.agents.actor_critic import (
    ACLambdaAgent,
    ACModel,
    TraceState,
    ac_lambda_step,
    grad_log_softmax,
)
from gridarcade.agents.checkpoint import (
    CorruptCheckpointError,
    load_checkpoint,
    save_checkpoint,
)
from gridarcade.agents.config import AgentConfig, epsilon_at
from gridarcade.agents.linear import (
    augment,
    augment_batch,
    epsilon_greedy,
    features,
    random_policy,
    sample_discrete,
    softmax,
)
from gridarcade.agents.optim import (
    RMSPropState,
    TrainingDivergedError,
    apply_gradient,
    check_finite,
    rmsprop_apply,
    sgd_apply,
)
from gridarcade.agents.qlearning import QLearningAgent, q_update
from gridarcade.agents.replay_buffer import ReplayBuffer
from gridarcade.rng import Rng

AGENT_KINDS = ("random", "qlin", "qlin-noreplay", "qlin-notarget", "ac-lambda", "ac0")


class RandomAgent:
    def __init__(self, n_channels, config, seed):
        self.rng = Rng(seed)

    def act(self, obs):
        return random_policy(self.rng)

    def observe_transition(self, obs, action, reward, obs2, terminal):
        pass

    def end_episode(self):
        pass

    def checkpoint_arrays(self):
        return {}


def make_agent(kind, n_channels, config, seed):
    """Build an agent by CLI kind name, adjusting config flags to match."""
    if kind == "random":
        return RandomAgent(n_channels, config, seed)
    if kind == "qlin":
        return QLearningAgent(n_channels, config, seed)
    if kind == "qlin-noreplay":
        return QLearningAgent(
            n_channels, config.with_overrides(use_replay=False), seed
        )
    if kind == "qlin-notarget":
        return QLearningAgent(
            n_channels, config.with_overrides(use_target=False), seed
        )
    if kind == "ac-lambda":
        return ACLambdaAgent(n_channels, config, seed)
    if kind == "ac0":
        return ACLambdaAgent(n_channels, config.with_overrides(trace_decay=0.0), seed)
    raise ValueError(f"unknown agent kind {kind!r}, expected one of {AGENT_KINDS}")


__all__ = [
    "ACLambdaAgent",
    "ACModel",
    "AGENT_KINDS",
    "AgentConfig",
    "CorruptCheckpointError",
    "QLearningAgent",
    "RMSPropState",
    "RandomAgent",
    "ReplayBuffer",
    "TraceState",
    "TrainingDivergedError",
    "ac_lambda_step",
    "apply_gradient",
    "augment",
    "augment_batch",
    "check_finite",
    "epsilon_at",
    "epsilon_greedy",
    "features",
    "grad_log_softmax",
    "load_checkpoint",
    "make_agent",
    "q_update",
    "random_policy",
    "rmsprop_apply",
    "sample_discrete",
    "save_checkpoint",
    "sgd_apply",
    "softmax",
]
