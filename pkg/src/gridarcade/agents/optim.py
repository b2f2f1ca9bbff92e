"""RMSProp with initialization bias correction, plus plain SGD.

The optimizer consumes descent gradients and returns the parameter
delta; callers wanting ascent (the actor/critic updates) negate their
gradient before calling.  Bias correction divides the accumulator by
(1 - beta^t) so early steps are not shrunk by the zero-initialized
accumulator, and the corrected accumulator is floored at min_sq_grad
before the square root.
"""

import numpy as np

from gridarcade.core import GridArcadeError


class TrainingDivergedError(GridArcadeError):
    """A parameter array went non-finite during training."""


class RMSPropState:
    """Per-parameter-array accumulator s and shared step counter t."""

    __slots__ = ("s", "t")

    def __init__(self, shape):
        self.s = np.zeros(shape)
        self.t = 0

    def copy(self):
        out = RMSPropState(self.s.shape)
        out.s = self.s.copy()
        out.t = self.t
        return out


def rmsprop_apply(state, grad, alpha, beta, min_sq_grad):
    """One accumulator update; returns the parameter delta (descent)."""
    state.t += 1
    state.s *= beta
    state.s += (1.0 - beta) * grad * grad
    s_hat = state.s / (1.0 - beta**state.t)
    return -alpha * grad / np.sqrt(np.maximum(s_hat, min_sq_grad))


def sgd_apply(grad, alpha):
    return -alpha * grad


def apply_gradient(state, grad, config):
    """Dispatch on config.optimizer; mutates state only for rmsprop."""
    if config.optimizer == "rmsprop":
        return rmsprop_apply(
            state, grad, config.step_size, config.rms_smoothing, config.min_sq_grad
        )
    return sgd_apply(grad, config.step_size)


def check_finite(*arrays):
    for arr in arrays:
        if not np.isfinite(arr).all():
            raise TrainingDivergedError("non-finite parameters after update")
