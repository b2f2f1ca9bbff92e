"""Online actor-critic with eligibility traces, AC(lambda).

Critic: linear state value v(s) = w . phi.  Actor: softmax over linear
action preferences theta @ phi.  Each frame computes the TD error
delta = r + gamma * v(s') - v(s) (v(s') = 0 at terminal), folds the
current gradients into the traces with decay gamma*lambda, and steps
both parameter vectors by alpha * delta * trace through the optimizer
(as descent on the negated quantity).  Traces reset at terminal, so
lambda = 0 reproduces one-step actor-critic exactly.
"""

import numpy as np

from gridarcade.core import N_ACTIONS
from gridarcade.agents.linear import augment, features, sample_discrete, softmax
from gridarcade.agents.optim import RMSPropState, apply_gradient, check_finite
from gridarcade.rng import Rng


class ACModel:
    __slots__ = ("w", "theta")

    def __init__(self, width):
        self.w = np.zeros(width)
        self.theta = np.zeros((N_ACTIONS, width))


class TraceState:
    __slots__ = ("z_w", "z_theta")

    def __init__(self, width):
        self.z_w = np.zeros(width)
        self.z_theta = np.zeros((N_ACTIONS, width))

    def reset(self):
        self.z_w[:] = 0.0
        self.z_theta[:] = 0.0


def grad_log_softmax(theta, phi, action):
    """d ln pi(action | phi) / d theta: (1{a} - pi) outer phi."""
    probs = softmax(theta @ phi)
    grad = -probs[:, None] * phi[None, :]
    grad[action] += phi
    return grad


def ac_lambda_step(model, traces, opt_w, opt_theta, phi, action, reward, phi2,
                   terminal, config):
    """One online update; mutates model and traces in place."""
    gamma = config.discount
    decay = gamma * config.trace_decay
    v = model.w @ phi
    v2 = 0.0 if terminal else model.w @ phi2
    delta = reward + gamma * v2 - v
    traces.z_w *= decay
    traces.z_w += phi
    traces.z_theta *= decay
    traces.z_theta += grad_log_softmax(model.theta, phi, action)
    model.w += apply_gradient(opt_w, -delta * traces.z_w, config)
    model.theta += apply_gradient(opt_theta, -delta * traces.z_theta, config)
    check_finite(model.w, model.theta)
    if terminal:
        traces.reset()


class ACLambdaAgent:
    def __init__(self, n_channels, config, seed):
        self.config = config
        width = 100 * n_channels + 1
        self.model = ACModel(width)
        self.traces = TraceState(width)
        self.opt_w = RMSPropState(width)
        self.opt_theta = RMSPropState((N_ACTIONS, width))
        self.rng = Rng(seed)

    def act(self, obs):
        phi = augment(features(obs))
        return sample_discrete(softmax(self.model.theta @ phi), self.rng)

    def observe_transition(self, obs, action, reward, obs2, terminal):
        ac_lambda_step(
            self.model,
            self.traces,
            self.opt_w,
            self.opt_theta,
            augment(features(obs)),
            action,
            reward,
            augment(features(obs2)),
            terminal,
            self.config,
        )

    def end_episode(self):
        self.traces.reset()

    def checkpoint_arrays(self):
        return {"w": self.model.w, "theta": self.model.theta}
