"""Linear function approximation over the flattened binary observation.

Feature vectors are the raveled 10x10xn observation (length 100n); the
models carry their bias as one extra trailing weight applied to a
constant-1 feature, so `augment` is the only place the bias appears.
"""

import numpy as np

from gridarcade.core import N_ACTIONS


def features(obs):
    """Flattened float64 copy of a dense boolean observation."""
    return obs.reshape(-1).astype(np.float64)


def augment(phi):
    """Append the constant bias feature: (L,) -> (L+1,)."""
    out = np.empty(phi.shape[0] + 1)
    out[:-1] = phi
    out[-1] = 1.0
    return out


def augment_batch(batch):
    """(k, L) -> (k, L+1) with a trailing ones column."""
    k = batch.shape[0]
    out = np.empty((k, batch.shape[1] + 1))
    out[:, :-1] = batch
    out[:, -1] = 1.0
    return out


def softmax(logits):
    z = logits - logits.max()
    e = np.exp(z)
    return e / e.sum()


def random_policy(rng):
    """Uniform over the 6 actions, independent of any observation."""
    return rng.next_below(N_ACTIONS)


def epsilon_greedy(weights, phi, epsilon, rng):
    """Explore uniformly with probability epsilon, else argmax Q.

    Draw order: one uniform for the explore test, then one next_below(6)
    only when exploring. Ties break toward the lowest action code.
    """
    if rng.next_uniform() < epsilon:
        return rng.next_below(N_ACTIONS)
    return int(np.argmax(weights @ phi))


def sample_discrete(probs, rng):
    """Draw an index from a probability vector with one uniform."""
    u = rng.next_uniform()
    acc = 0.0
    for i in range(probs.shape[0] - 1):
        acc += probs[i]
        if u < acc:
            return i
    return probs.shape[0] - 1
