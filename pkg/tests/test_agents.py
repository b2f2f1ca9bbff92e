"""Learner math: optimizer algebra, gradient oracles, ablation identities."""

import numpy as np
import pytest

from gridarcade.agents import (
    ACLambdaAgent,
    ACModel,
    AGENT_KINDS,
    AgentConfig,
    QLearningAgent,
    RMSPropState,
    RandomAgent,
    ReplayBuffer,
    TraceState,
    TrainingDivergedError,
    ac_lambda_step,
    augment,
    augment_batch,
    check_finite,
    epsilon_at,
    epsilon_greedy,
    features,
    grad_log_softmax,
    make_agent,
    q_update,
    random_policy,
    rmsprop_apply,
    sample_discrete,
    softmax,
)
from gridarcade.core import ConfigError
from gridarcade.rng import Rng


class ScriptedRng:
    """Duck-typed stand-in feeding fixed uniform/below values."""

    def __init__(self, uniforms=(), belows=()):
        self.uniforms = list(uniforms)
        self.belows = list(belows)

    def next_uniform(self):
        return self.uniforms.pop(0)

    def next_below(self, k):
        return self.belows.pop(0) % k


# ---------------------------------------------------------------- optimizer


def test_rmsprop_first_step_algebra():
    alpha, beta, eps_ms = 0.01, 0.999, 1e-4
    rng = np.random.default_rng(1)
    for _ in range(20):
        g = rng.normal(size=7)
        state = RMSPropState(7)
        delta = rmsprop_apply(state, g, alpha, beta, eps_ms)
        expected = -alpha * g / np.maximum(np.abs(g), np.sqrt(eps_ms))
        assert np.allclose(delta, expected, rtol=1e-12)
        assert state.t == 1


def test_rmsprop_zero_gradient_is_inert():
    state = RMSPropState(4)
    for _ in range(50):
        delta = rmsprop_apply(state, np.zeros(4), 0.5, 0.999, 1e-4)
        assert np.array_equal(delta, np.zeros(4))
    assert state.t == 50


def test_rmsprop_constant_gradient_converges_to_signed_step():
    # bias correction makes s_hat equal g*g exactly for a constant
    # gradient, so every step is -alpha * sign(g)
    alpha = 0.25
    g = np.array([0.5, -2.0, 0.011])
    state = RMSPropState(3)
    for _ in range(1000):
        delta = rmsprop_apply(state, g, alpha, 0.999, 1e-4)
        assert np.allclose(delta, -alpha * np.sign(g), rtol=1e-9)


def test_rmsprop_floors_tiny_gradients():
    state = RMSPropState(1)
    g = np.array([1e-8])
    delta = rmsprop_apply(state, g, 1.0, 0.999, 1e-4)
    assert np.allclose(delta, -g / np.sqrt(1e-4), rtol=1e-12)


def test_check_finite_raises():
    check_finite(np.ones(3), np.zeros((2, 2)))
    with pytest.raises(TrainingDivergedError):
        check_finite(np.array([1.0, np.nan]))
    with pytest.raises(TrainingDivergedError):
        check_finite(np.ones(2), np.array([np.inf]))


# ----------------------------------------------------------------- policies


def test_softmax_is_distribution():
    rng = np.random.default_rng(2)
    for _ in range(50):
        p = softmax(rng.normal(scale=10, size=6))
        assert (p >= 0).all()
        assert abs(p.sum() - 1.0) < 1e-12
    p = softmax(np.array([1000.0, 0.0, -1000.0, 0.0, 0.0, 0.0]))
    assert np.isfinite(p).all() and abs(p.sum() - 1.0) < 1e-12


def test_epsilon_greedy_exploit_and_ties():
    w = np.zeros((6, 4))
    w[5, 0] = 1.0
    phi = np.array([1.0, 0.0, 0.0, 1.0])
    assert epsilon_greedy(w, phi, 0.0, ScriptedRng(uniforms=[0.99])) == 5
    assert epsilon_greedy(np.zeros((6, 4)), phi, 0.0, ScriptedRng(uniforms=[0.99])) == 0


def test_epsilon_greedy_draw_order():
    w = np.zeros((6, 4))
    phi = np.ones(4)
    # explore branch consumes the uniform then one below-draw
    stub = ScriptedRng(uniforms=[0.3], belows=[4])
    assert epsilon_greedy(w, phi, 0.5, stub) == 4
    assert stub.belows == []
    # exploit branch consumes only the uniform
    stub = ScriptedRng(uniforms=[0.7], belows=[4])
    assert epsilon_greedy(w, phi, 0.5, stub) == 0
    assert stub.belows == [4]


def test_epsilon_greedy_full_exploration_is_uniform():
    rng = Rng(3)
    counts = np.zeros(6)
    for _ in range(60_000):
        counts[epsilon_greedy(np.zeros((6, 2)), np.zeros(2), 1.0, rng)] += 1
    assert np.abs(counts / 60_000 - 1 / 6).max() < 0.01


def test_random_policy_uniform():
    rng = Rng(9)
    counts = np.zeros(6)
    n = 600_000
    for _ in range(n):
        counts[random_policy(rng)] += 1
    assert np.abs(counts / n - 1 / 6).max() < 0.003


def test_sample_discrete_boundaries_and_distribution():
    probs = np.array([0.25, 0.25, 0.25, 0.25])
    assert sample_discrete(probs, ScriptedRng(uniforms=[0.0])) == 0
    assert sample_discrete(probs, ScriptedRng(uniforms=[0.25])) == 1
    assert sample_discrete(probs, ScriptedRng(uniforms=[0.9999])) == 3
    probs = np.array([0.5, 0.3, 0.2])
    rng = Rng(4)
    counts = np.zeros(3)
    n = 100_000
    for _ in range(n):
        counts[sample_discrete(probs, rng)] += 1
    assert np.abs(counts / n - probs).max() < 0.01


def test_epsilon_schedule():
    cfg = AgentConfig()
    assert epsilon_at(0, cfg) == 1.0
    assert abs(epsilon_at(50_000, cfg) - 0.55) < 1e-12
    assert epsilon_at(100_000, cfg) == pytest.approx(0.1)
    assert epsilon_at(250_000, cfg) == pytest.approx(0.1)


# ------------------------------------------------------- gradient oracles


def sgd_config(**kw):
    return AgentConfig(optimizer="sgd", step_size=1.0, **kw)


def test_q_gradient_matches_finite_differences():
    rng = np.random.default_rng(5)
    cfg = sgd_config(discount=0.9)
    for _ in range(20):
        width = 8
        w0 = rng.normal(size=(6, width))
        target = rng.normal(size=(6, width))
        k = int(rng.integers(1, 4))
        phi = rng.random((k, width))
        phi2 = rng.random((k, width))
        actions = rng.integers(0, 6, size=k)
        rewards = rng.normal(size=k)
        terminal = rng.random(k) < 0.3
        batch = (phi, actions, rewards, phi2, terminal)

        w = w0.copy()
        q_update(w, target, batch, cfg, RMSPropState((6, width)))
        engine_grad = w0 - w  # sgd with alpha=1

        def loss(weights):
            # y depends on the frozen target weights only
            y = rewards + cfg.discount * (phi2 @ target.T).max(axis=1) * ~terminal
            q = np.einsum("ij,ij->i", phi, weights[actions])
            return 0.5 * ((q - y) ** 2).mean()

        h = 1e-5
        fd = np.zeros_like(w0)
        for idx in np.ndindex(w0.shape):
            bump = np.zeros_like(w0)
            bump[idx] = h
            fd[idx] = (loss(w0 + bump) - loss(w0 - bump)) / (2 * h)
        assert np.allclose(engine_grad, fd, rtol=1e-6, atol=1e-8)


def test_actor_gradient_matches_finite_differences():
    rng = np.random.default_rng(6)
    for _ in range(20):
        width = 7
        theta = rng.normal(size=(6, width))
        phi = rng.random(width)
        action = int(rng.integers(6))
        analytic = grad_log_softmax(theta, phi, action)

        def logp(params):
            return np.log(softmax(params @ phi)[action])

        h = 1e-5
        fd = np.zeros_like(theta)
        for idx in np.ndindex(theta.shape):
            bump = np.zeros_like(theta)
            bump[idx] = h
            fd[idx] = (logp(theta + bump) - logp(theta - bump)) / (2 * h)
        assert np.allclose(analytic, fd, rtol=1e-6, atol=1e-8)


def test_ac_step_matches_hand_equations():
    rng = np.random.default_rng(7)
    cfg = sgd_config(discount=0.95, trace_decay=0.7)
    width = 9
    model = ACModel(width)
    model.w = rng.normal(size=width)
    model.theta = rng.normal(size=(6, width))
    traces = TraceState(width)
    traces.z_w = rng.normal(size=width)
    traces.z_theta = rng.normal(size=(6, width))

    shadow_w = model.w.copy()
    shadow_theta = model.theta.copy()
    shadow_zw = traces.z_w.copy()
    shadow_zt = traces.z_theta.copy()

    phi = rng.random(width)
    phi2 = rng.random(width)
    action, reward = 2, 1.0
    ac_lambda_step(
        model, traces, RMSPropState(width), RMSPropState((6, width)),
        phi, action, reward, phi2, False, cfg,
    )

    delta = reward + cfg.discount * (shadow_w @ phi2) - shadow_w @ phi
    shadow_zw = cfg.discount * cfg.trace_decay * shadow_zw + phi
    shadow_zt = cfg.discount * cfg.trace_decay * shadow_zt + grad_log_softmax(
        shadow_theta, phi, action
    )
    shadow_w = shadow_w + cfg.step_size * delta * shadow_zw
    shadow_theta = shadow_theta + cfg.step_size * delta * shadow_zt

    assert np.allclose(model.w, shadow_w, rtol=1e-12)
    assert np.allclose(model.theta, shadow_theta, rtol=1e-12)
    assert np.allclose(traces.z_w, shadow_zw, rtol=1e-12)
    assert np.allclose(traces.z_theta, shadow_zt, rtol=1e-12)


def test_ac_terminal_cuts_bootstrap_and_resets_traces():
    cfg = sgd_config(discount=0.9, trace_decay=0.5)
    width = 5
    model = ACModel(width)
    model.w = np.ones(width)
    traces = TraceState(width)
    phi = np.ones(width)
    phi2 = np.full(width, 100.0)  # must be ignored at terminal
    ac_lambda_step(
        model, traces, RMSPropState(width), RMSPropState((6, width)),
        phi, 0, 2.0, phi2, True, cfg,
    )
    # delta = 2 - v(s) = 2 - 5; w += delta * phi
    assert np.allclose(model.w, 1.0 + (2.0 - 5.0))
    assert np.array_equal(traces.z_w, np.zeros(width))
    assert np.array_equal(traces.z_theta, np.zeros((6, width)))


def test_zero_delta_leaves_params_moves_traces():
    cfg = sgd_config(discount=1.0, trace_decay=0.5)
    width = 3
    model = ACModel(width)
    traces = TraceState(width)
    traces.z_w = np.ones(width)
    phi = np.array([1.0, 0.0, 1.0])
    ac_lambda_step(
        model, traces, RMSPropState(width), RMSPropState((6, width)),
        phi, 1, 0.0, phi, False, cfg,
    )
    assert np.array_equal(model.w, np.zeros(width))
    assert np.allclose(traces.z_w, 0.5 * np.ones(width) + phi)


# ------------------------------------------------------ ablation identities


def random_obs(rng, n_channels=1):
    return rng.random((10, 10, n_channels)) < 0.2


def test_online_q_ablation_equals_direct_implementation():
    cfg = AgentConfig(use_replay=False, use_target=False)
    agent = QLearningAgent(1, cfg, seed=0)
    width = 101
    w = np.zeros((6, width))
    s = np.zeros((6, width))
    t = 0

    rng = np.random.default_rng(8)
    obs = random_obs(rng)
    for _ in range(200):
        obs2 = random_obs(rng)
        action = int(rng.integers(6))
        reward = float(rng.integers(0, 2))
        terminal = bool(rng.random() < 0.05)
        agent.observe_transition(obs, action, reward, obs2, terminal)

        phi = augment(features(obs))
        phi2 = augment(features(obs2))
        y = reward if terminal else reward + cfg.discount * (w @ phi2).max()
        q = np.einsum("j,j->", phi, w[action])
        grad = np.zeros_like(w)
        grad[action] = (q - y) * phi
        t += 1
        s *= cfg.rms_smoothing
        s += (1.0 - cfg.rms_smoothing) * grad * grad
        s_hat = s / (1.0 - cfg.rms_smoothing**t)
        w += -cfg.step_size * grad / np.sqrt(np.maximum(s_hat, cfg.min_sq_grad))

        obs = obs2
    assert np.array_equal(agent.weights, w)
    assert agent.target_weights is agent.weights


def test_ac0_equals_one_step_actor_critic():
    cfg = AgentConfig(trace_decay=0.0)
    agent = make_agent("ac0", 1, AgentConfig(), seed=0)
    width = 101
    w = np.zeros(width)
    theta = np.zeros((6, width))
    opt_w = RMSPropState(width)
    opt_theta = RMSPropState((6, width))

    rng = np.random.default_rng(9)
    obs = random_obs(rng)
    for _ in range(200):
        obs2 = random_obs(rng)
        action = int(rng.integers(6))
        reward = float(rng.integers(0, 2))
        terminal = bool(rng.random() < 0.05)
        agent.observe_transition(obs, action, reward, obs2, terminal)

        phi = augment(features(obs))
        phi2 = augment(features(obs2))
        glp = grad_log_softmax(theta, phi, action)  # pre-update theta
        v2 = 0.0 if terminal else w @ phi2
        delta = reward + cfg.discount * v2 - w @ phi
        w += rmsprop_apply(
            opt_w, -delta * phi, cfg.step_size, cfg.rms_smoothing, cfg.min_sq_grad
        )
        theta += rmsprop_apply(
            opt_theta, -delta * glp, cfg.step_size, cfg.rms_smoothing, cfg.min_sq_grad
        )
        obs = obs2
    assert np.array_equal(agent.model.w, w)
    assert np.array_equal(agent.model.theta, theta)


def test_divergence_raises_not_nan():
    cfg = AgentConfig(use_replay=False, use_target=False)
    agent = QLearningAgent(1, cfg, seed=0)
    agent.weights[:] = np.nan
    rng = np.random.default_rng(10)
    with pytest.raises(TrainingDivergedError):
        agent.observe_transition(random_obs(rng), 0, 1.0, random_obs(rng), False)


# -------------------------------------------------------------- components


def test_features_and_augment():
    obs = np.zeros((10, 10, 2), dtype=bool)
    obs[3, 4, 1] = True
    phi = features(obs)
    assert phi.shape == (200,)
    assert phi[(3 * 10 + 4) * 2 + 1] == 1.0
    aug = augment(phi)
    assert aug.shape == (201,) and aug[-1] == 1.0
    batch = augment_batch(np.stack([phi, phi]))
    assert batch.shape == (2, 201) and (batch[:, -1] == 1.0).all()


def test_replay_buffer_ring_and_threshold():
    buf = ReplayBuffer(capacity=3, fill_threshold=2, n_bits=8)
    obs = np.zeros(8, dtype=bool)
    assert buf.sample(1, Rng(0)) is None
    for a in range(4):
        buf.push(obs, a, float(a), obs, False)
    assert len(buf) == 3
    seen = set()
    rng = Rng(1)
    for _ in range(100):
        _, actions, _, _, _ = buf.sample(4, rng)
        seen.update(int(x) for x in actions)
    assert seen == {1, 2, 3}  # the first push was evicted


def test_replay_buffer_round_trips_observations():
    buf = ReplayBuffer(capacity=8, fill_threshold=1, n_bits=12)
    rng_np = np.random.default_rng(11)
    stored = []
    for a in range(8):
        obs = rng_np.random(12) < 0.5
        obs2 = rng_np.random(12) < 0.5
        stored.append((obs, obs2))
        buf.push(obs, a, 0.0, obs2, bool(a % 2))
    phi, actions, _, phi2, term = buf.sample(64, Rng(2))
    for row in range(64):
        a = int(actions[row])
        assert np.array_equal(phi[row], stored[a][0].astype(np.float64))
        assert np.array_equal(phi2[row], stored[a][1].astype(np.float64))
        assert term[row] == bool(a % 2)


def test_replay_buffer_sampling_is_uniform():
    buf = ReplayBuffer(capacity=4, fill_threshold=4, n_bits=8)
    obs = np.zeros(8, dtype=bool)
    for a in range(4):
        buf.push(obs, a, 0.0, obs, False)
    counts = np.zeros(4)
    rng = Rng(3)
    _, actions, _, _, _ = buf.sample(100_000, rng)
    for a in actions:
        counts[a] += 1
    assert np.abs(counts / 100_000 - 0.25).max() < 0.005


def test_agent_config_validation():
    with pytest.raises(ConfigError):
        AgentConfig(step_size=0.0)
    with pytest.raises(ConfigError):
        AgentConfig(discount=1.5)
    with pytest.raises(ConfigError):
        AgentConfig(trace_decay=-0.1)
    with pytest.raises(ConfigError):
        AgentConfig(rms_smoothing=1.0)
    with pytest.raises(ConfigError):
        AgentConfig(eps_start=0.1, eps_end=0.5)
    with pytest.raises(ConfigError):
        AgentConfig(optimizer="adam")
    cfg = AgentConfig().with_overrides(step_size=2.0**-8)
    assert cfg.step_size == 2.0**-8


def test_checkpoint_round_trip(tmp_path):
    from gridarcade.agents import load_checkpoint, save_checkpoint

    rng = np.random.default_rng(12)
    arrays = {"weights": rng.normal(size=(6, 101)), "bias": rng.normal(size=3)}
    path = tmp_path / "agent.ckpt"
    save_checkpoint(path, arrays, config=AgentConfig())
    loaded, config = load_checkpoint(path)
    assert set(loaded) == {"weights", "bias"}
    assert np.array_equal(loaded["weights"], arrays["weights"])
    assert np.array_equal(loaded["bias"], arrays["bias"])
    assert config["discount"] == 0.99


def test_checkpoint_corruption_detected(tmp_path):
    from gridarcade.agents import CorruptCheckpointError, load_checkpoint, \
        save_checkpoint

    path = tmp_path / "agent.ckpt"
    save_checkpoint(path, {"w": np.ones((2, 2))})
    data = path.read_bytes()
    (tmp_path / "bad_magic.ckpt").write_bytes(b"XXXX" + data[4:])
    with pytest.raises(CorruptCheckpointError):
        load_checkpoint(tmp_path / "bad_magic.ckpt")
    (tmp_path / "truncated.ckpt").write_bytes(data[: len(data) - 9])
    with pytest.raises(CorruptCheckpointError):
        load_checkpoint(tmp_path / "truncated.ckpt")
    bumped = data[:4] + (99).to_bytes(4, "little") + data[8:]
    (tmp_path / "version.ckpt").write_bytes(bumped)
    with pytest.raises(CorruptCheckpointError):
        load_checkpoint(tmp_path / "version.ckpt")


def test_agent_checkpoint_arrays_accessors():
    q = QLearningAgent(2, AgentConfig(), seed=0)
    arrays = q.checkpoint_arrays()
    assert arrays["weights"].shape == (6, 201)
    ac = ACLambdaAgent(2, AgentConfig(), seed=0)
    arrays = ac.checkpoint_arrays()
    assert arrays["w"].shape == (201,)
    assert arrays["theta"].shape == (6, 201)
    assert RandomAgent(2, AgentConfig(), 0).checkpoint_arrays() == {}


def test_make_agent_kinds():
    for kind in AGENT_KINDS:
        agent = make_agent(kind, 4, AgentConfig(), seed=1)
        obs = np.zeros((10, 10, 4), dtype=bool)
        action = agent.act(obs)
        assert 0 <= action < 6
        agent.observe_transition(obs, action, 0.0, obs, False)
        agent.end_episode()
    assert make_agent("qlin-noreplay", 1, AgentConfig(), 0).buffer is None
    nt = make_agent("qlin-notarget", 1, AgentConfig(), 0)
    assert nt.target_weights is nt.weights
    assert make_agent("ac0", 1, AgentConfig(), 0).config.trace_decay == 0.0
    with pytest.raises(ValueError):
        make_agent("dqn", 1, AgentConfig(), 0)
    assert isinstance(make_agent("random", 1, AgentConfig(), 0), RandomAgent)
