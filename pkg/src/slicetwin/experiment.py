"""Seeded experiment runs: evaluate allocators, collect metrics, train policies.

Evaluation always uses the plain master seed, so every allocator faces
bit-identical placement, traffic, and fading streams; training episodes use
(seed, episode) entropy and therefore never overlap the held-out evaluation
episode.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .allocators import ALLOCATOR_NAMES, make_allocator
from .config import ScenarioConfig
from .ddpg.agent import DdpgAgent
from .ddpg.checkpoint import CheckpointError, load_checkpoint
from .ddpg.train import TrainResult, train
from .env import SliceSimulation
from .metrics import MetricsRecord, avg_latency, jitter, utilization

CURVE_HEADER = "episode,mean_reward,mean_latency_s,mean_critic_loss,mean_twin_gap_s,noise_std"


def run_experiment(
    cfg: ScenarioConfig,
    allocator_kind: str,
    seed: int,
    agent: DdpgAgent | None = None,
    checkpoint_path=None,
) -> list[MetricsRecord]:
    """One evaluation episode under the given allocator, as metric records."""
    if allocator_kind == "drl" and agent is None:
        if checkpoint_path is None:
            raise CheckpointError("drl evaluation needs a trained agent or a checkpoint")
        agent = load_checkpoint(checkpoint_path, cfg)
    allocator = make_allocator(allocator_kind, cfg, agent)
    env = SliceSimulation(cfg, seed)
    env.reset()
    history = np.empty((cfg.horizon_steps, cfg.num_ues))
    records: list[MetricsRecord] = []
    for t in range(cfg.horizon_steps):
        bw = allocator.decide(env)
        out = env.step(bw)
        allocator.record(out)
        history[t] = out.latencies
        if (t + 1) % cfg.record_interval == 0 or t == cfg.horizon_steps - 1:
            records.append(
                MetricsRecord(
                    time_s=(t + 1) * cfg.dt,
                    allocator=allocator.name,
                    avg_latency_s=avg_latency(out.latencies),
                    utilization=utilization(
                        out.alloc, out.sinr, out.demands, cfg.dt, cfg.total_bandwidth
                    ),
                    jitter_s=jitter(history[: t + 1], cfg.jitter_window),
                    mean_sync_error_bits=float(np.mean(out.sync_errors)),
                    reward=out.reward,
                    seed=int(seed),
                )
            )
    return records


def compare(cfg: ScenarioConfig, seed: int, agent: DdpgAgent | None = None, checkpoint_path=None):
    """All three allocators against identical world streams, one record list."""
    records: list[MetricsRecord] = []
    for kind in ALLOCATOR_NAMES:
        records.extend(run_experiment(cfg, kind, seed, agent=agent, checkpoint_path=checkpoint_path))
    return records


def summarize(records: list[MetricsRecord], tail: int) -> dict:
    """Mean metrics over the last `tail` records of one allocator's run."""
    window = records[-int(tail):]
    if not window:
        raise ValueError("no records to summarize")
    return {
        "allocator": window[-1].allocator,
        "records": len(window),
        "avg_latency_s": float(np.mean([r.avg_latency_s for r in window])),
        "utilization": float(np.mean([r.utilization for r in window])),
        "jitter_s": float(np.mean([r.jitter_s for r in window])),
        "mean_reward": float(np.mean([r.reward for r in window])),
    }


def split_by_allocator(records: list[MetricsRecord]) -> dict[str, list[MetricsRecord]]:
    out: dict[str, list[MetricsRecord]] = {}
    for rec in records:
        out.setdefault(rec.allocator, []).append(rec)
    return out


def train_slice(cfg: ScenarioConfig, seed: int, progress=None) -> TrainResult:
    """Train an agent on the configured scenario; thin naming wrapper."""
    return train(cfg, seed, progress=progress)


def curve_summary(curve, window: int = 50) -> dict:
    """Learning-progress numbers: first vs last `window` episode mean rewards."""
    rewards = [row.mean_reward for row in curve]
    w = min(int(window), len(rewards))
    return {
        "episodes": len(rewards),
        "first_window_mean_reward": float(np.mean(rewards[:w])),
        "final_window_mean_reward": float(np.mean(rewards[-w:])),
        "final_mean_latency_s": float(curve[-1].mean_latency_s),
        "final_noise_std": float(curve[-1].noise_std),
    }


def format_curve_csv(curve) -> str:
    lines = [CURVE_HEADER]
    for row in curve:
        lines.append(
            ",".join(
                [
                    str(int(row.episode)),
                    repr(float(row.mean_reward)),
                    repr(float(row.mean_latency_s)),
                    repr(float(row.mean_critic_loss)),
                    repr(float(row.mean_twin_gap_s)),
                    repr(float(row.noise_std)),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def write_curve_csv(curve, path) -> None:
    Path(path).write_text(format_curve_csv(curve))
