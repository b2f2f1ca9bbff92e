"""Agent hyperparameters shared by every learner."""

from dataclasses import dataclass, replace

from gridarcade.core import ConfigError


@dataclass(frozen=True)
class AgentConfig:
    step_size: float = 2.0**-6
    discount: float = 0.99
    trace_decay: float = 0.8
    rms_smoothing: float = 0.999
    min_sq_grad: float = 1e-4
    eps_start: float = 1.0
    eps_end: float = 0.1
    anneal_frames: int = 100_000
    replay_capacity: int = 100_000
    replay_fill: int = 5_000
    batch_size: int = 32
    target_period: int = 1_000
    use_replay: bool = True
    use_target: bool = True
    optimizer: str = "rmsprop"

    def __post_init__(self):
        if self.step_size <= 0:
            raise ConfigError("step_size must be > 0")
        if not 0.0 <= self.discount <= 1.0:
            raise ConfigError("discount must be in [0,1]")
        if not 0.0 <= self.trace_decay <= 1.0:
            raise ConfigError("trace_decay must be in [0,1]")
        if not 0.0 <= self.rms_smoothing < 1.0:
            raise ConfigError("rms_smoothing must be in [0,1)")
        if self.min_sq_grad <= 0:
            raise ConfigError("min_sq_grad must be > 0")
        if not 0.0 <= self.eps_end <= self.eps_start <= 1.0:
            raise ConfigError("need 0 <= eps_end <= eps_start <= 1")
        if self.anneal_frames < 1:
            raise ConfigError("anneal_frames must be >= 1")
        if self.optimizer not in ("rmsprop", "sgd"):
            raise ConfigError("optimizer must be rmsprop or sgd")

    def with_overrides(self, **kwargs):
        return replace(self, **kwargs)


def epsilon_at(frames, config):
    """Linear anneal from eps_start to eps_end over anneal_frames."""
    frac = min(1.0, frames / config.anneal_frames)
    return config.eps_start + (config.eps_end - config.eps_start) * frac
