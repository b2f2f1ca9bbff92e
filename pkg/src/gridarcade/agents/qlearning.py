"""Epsilon-greedy Q-learning with optional replay and target weights.

The weight matrix is (6, L+1): one row of feature weights plus trailing
bias per action.  `q_update` is the semi-gradient rule on a batch: for
each transition the target is y = r + gamma * max_a Q_target(s', a),
cut to y = r at terminal, and the descent gradient of the mean squared
TD error 1/2k * sum (y - Q(s,a))^2 goes through the optimizer.

With use_target=false the target weights alias the live weights (the
bootstrap tracks every update); with use_replay=false the update runs on
just the latest transition, which is exactly online Q-learning.
"""

import numpy as np

from gridarcade.core import N_ACTIONS
from gridarcade.agents.config import epsilon_at
from gridarcade.agents.linear import augment, augment_batch, epsilon_greedy, features
from gridarcade.agents.optim import RMSPropState, apply_gradient, check_finite
from gridarcade.agents.replay_buffer import ReplayBuffer
from gridarcade.rng import Rng


def q_update(weights, target_weights, batch, config, opt_state):
    """One optimizer step on a batch; mutates weights in place."""
    phi, actions, rewards, phi2, terminal = batch
    k = phi.shape[0]
    q2 = phi2 @ target_weights.T
    y = rewards + config.discount * q2.max(axis=1) * ~terminal
    q = np.einsum("ij,ij->i", phi, weights[actions])
    err = (q - y) / k
    grad = np.zeros_like(weights)
    np.add.at(grad, actions, err[:, None] * phi)
    weights += apply_gradient(opt_state, grad, config)
    check_finite(weights)


class QLearningAgent:
    def __init__(self, n_channels, config, seed):
        self.config = config
        self.n_features = 100 * n_channels
        width = self.n_features + 1
        self.weights = np.zeros((N_ACTIONS, width))
        if config.use_target:
            self.target_weights = self.weights.copy()
        else:
            self.target_weights = self.weights
        self.opt = RMSPropState((N_ACTIONS, width))
        if config.use_replay:
            self.buffer = ReplayBuffer(
                config.replay_capacity, config.replay_fill, self.n_features
            )
        else:
            self.buffer = None
        self.rng = Rng(seed)
        self.frames = 0

    def act(self, obs):
        phi = augment(features(obs))
        return epsilon_greedy(
            self.weights, phi, epsilon_at(self.frames, self.config), self.rng
        )

    def observe_transition(self, obs, action, reward, obs2, terminal):
        self.frames += 1
        cfg = self.config
        if self.buffer is not None:
            self.buffer.push(obs, action, reward, obs2, terminal)
            batch = self.buffer.sample(cfg.batch_size, self.rng)
            if batch is not None:
                phi, a, r, phi2, term = batch
                q_update(
                    self.weights,
                    self.target_weights,
                    (augment_batch(phi), a, r, augment_batch(phi2), term),
                    cfg,
                    self.opt,
                )
        else:
            batch = (
                augment_batch(features(obs)[None, :]),
                np.array([action]),
                np.array([float(reward)]),
                augment_batch(features(obs2)[None, :]),
                np.array([terminal]),
            )
            q_update(self.weights, self.target_weights, batch, cfg, self.opt)
        if cfg.use_target and self.frames % cfg.target_period == 0:
            self.target_weights = self.weights.copy()

    def end_episode(self):
        pass

    def checkpoint_arrays(self):
        return {"weights": self.weights, "target_weights": self.target_weights}
