import numpy as np
import pytest

from slicetwin.ddpg.agent import DdpgAgent
from slicetwin.ddpg.train import train
from slicetwin.rng import RngStreams


def test_no_updates_before_buffer_warmup(tiny_cfg):
    # 1 episode x 3 steps feeds the buffer 3 transitions, below the batch
    # size of 8, so the networks must come out exactly as initialized
    cfg = tiny_cfg.replace(episodes=1, horizon_steps=3)
    result = train(cfg, seed=5)
    reference = DdpgAgent(cfg, RngStreams(5).net_init)
    assert np.array_equal(result.agent.actor.parameter_vector(),
                          reference.actor.parameter_vector())
    assert np.array_equal(result.agent.critic.parameter_vector(),
                          reference.critic.parameter_vector())
    assert result.curve[0].mean_critic_loss == 0.0


def test_training_is_reproducible(tiny_cfg):
    a = train(tiny_cfg, seed=9)
    b = train(tiny_cfg, seed=9)
    assert a.curve == b.curve
    assert np.array_equal(a.agent.actor.parameter_vector(),
                          b.agent.actor.parameter_vector())
    c = train(tiny_cfg, seed=10)
    assert not np.array_equal(a.agent.actor.parameter_vector(),
                              c.agent.actor.parameter_vector())


def test_curve_shape_and_noise_schedule(tiny_cfg):
    result = train(tiny_cfg, seed=3)
    assert len(result.curve) == tiny_cfg.episodes
    for k, row in enumerate(result.curve):
        assert row.episode == k
        assert np.isfinite(row.mean_reward)
        assert np.isfinite(row.mean_latency_s)
        assert np.isfinite(row.mean_twin_gap_s)
        assert row.mean_latency_s >= 0.0
        assert row.mean_twin_gap_s >= 0.0
        assert row.noise_std == pytest.approx(
            tiny_cfg.noise_std0 * tiny_cfg.noise_decay**k, rel=1e-12
        )
    assert result.agent.noise_std == pytest.approx(
        tiny_cfg.noise_std0 * tiny_cfg.noise_decay**tiny_cfg.episodes, rel=1e-12
    )


def test_episodes_see_different_traffic(tiny_cfg):
    result = train(tiny_cfg, seed=3)
    assert result.curve[0].mean_reward != result.curve[1].mean_reward


def test_progress_callback_runs_per_episode(tiny_cfg):
    seen = []
    result = train(tiny_cfg, seed=4, progress=seen.append)
    assert seen == result.curve


def test_episode_rewards_helper(tiny_cfg):
    result = train(tiny_cfg, seed=6)
    rewards = result.episode_rewards()
    assert rewards.shape == (tiny_cfg.episodes,)
    assert np.all(np.isfinite(rewards))
    assert np.all(rewards <= 0.0)  # the reward is a sum of penalties
