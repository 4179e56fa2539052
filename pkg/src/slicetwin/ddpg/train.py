"""Training loop: episodes of twin-in-the-loop interaction plus SGD updates.

Per tick, in order: the twin is already synced by the environment, the agent
reads the assembled state, picks a noisy action, scores it in the twin's
sandbox, applies it physically, stores the transition, and (once the buffer
can fill a batch) takes one critic step, one actor step, and one soft target
update. Exploration noise decays once per episode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..config import ScenarioConfig
from ..rng import RngStreams
from .agent import DdpgAgent
from .replay import Transition


@dataclass
class EpisodeStats:
    """One learning-curve row."""

    episode: int
    mean_reward: float
    mean_latency_s: float
    mean_critic_loss: float   # 0.0 while the buffer is still warming up
    mean_twin_gap_s: float    # mean |sandbox latency estimate - realized|
    noise_std: float


@dataclass
class TrainResult:
    agent: DdpgAgent
    curve: list[EpisodeStats]

    def episode_rewards(self) -> np.ndarray:
        return np.array([row.mean_reward for row in self.curve])


def train(cfg: ScenarioConfig, seed: int, make_env=None, progress=None) -> TrainResult:
    """Run cfg.episodes x cfg.horizon_steps of learning from one master seed.

    make_env lets tests substitute a custom environment factory; it must
    return an object with reset(episode)/sandbox(action)/step(alloc). The
    returned curve has one row per episode and is fully deterministic.
    """
    if make_env is None:
        from ..env import SliceSimulation

        def make_env():
            return SliceSimulation(cfg, seed)

    streams = RngStreams(seed)
    agent = DdpgAgent(cfg, streams.net_init)
    env = make_env()
    curve: list[EpisodeStats] = []

    for episode in range(cfg.episodes):
        s = env.reset(episode=episode)
        rewards = np.empty(cfg.horizon_steps)
        latencies = np.empty(cfg.horizon_steps)
        gaps = np.empty(cfg.horizon_steps)
        losses: list[float] = []
        for t in range(cfg.horizon_steps):
            logits, bw = agent.select_action(s, explore=True, rng=streams.exploration)
            est_lat, _ = env.sandbox(bw)
            out = env.step(bw)
            agent.buffer.push(Transition(s=s, a=logits, r=out.reward, s_next=out.obs, done=out.done))
            if len(agent.buffer) >= cfg.batch_size:
                batch = agent.buffer.sample(cfg.batch_size, streams.replay)
                losses.append(agent.critic_update(batch))
                agent.actor_update(batch)
                agent.soft_update_targets()
            rewards[t] = out.reward
            latencies[t] = np.mean(out.latencies)
            gaps[t] = np.mean(np.abs(est_lat - out.latencies))
            s = out.obs
        stats = EpisodeStats(
            episode=episode,
            mean_reward=float(np.mean(rewards)),
            mean_latency_s=float(np.mean(latencies)),
            mean_critic_loss=float(np.mean(losses)) if losses else 0.0,
            mean_twin_gap_s=float(np.mean(gaps)),
            noise_std=agent.noise_std,
        )
        curve.append(stats)
        agent.decay_noise()
        if progress is not None:
            progress(stats)
        if not agent.all_finite():
            raise FloatingPointError(f"non-finite network parameter after episode {episode}")

    return TrainResult(agent=agent, curve=curve)
