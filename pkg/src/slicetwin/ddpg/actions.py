"""Action projection onto the bandwidth budget, and the step reward.

The agent emits M+1 unbounded logits. A softmax turns them into shares of the
total bandwidth; the extra slot is deliberately unallocated spectrum, which is
how the policy can choose to leave capacity idle. The projection makes the
budget constraint hold for any finite logits, noise included.
"""

from __future__ import annotations

import numpy as np

from ..config import ScenarioConfig


def project_action(logits: np.ndarray, total_bandwidth: float, rb_bandwidth: float | None = None) -> np.ndarray:
    """Map M+1 logits to M nonnegative allocations with sum <= total_bandwidth.

    When rb_bandwidth is given, allocations are floored to whole resource
    blocks, which can only shrink the total.
    """
    logits = np.asarray(logits, dtype=float)
    shifted = logits - np.max(logits)
    weights = np.exp(shifted)
    shares = weights / np.sum(weights)
    alloc = total_bandwidth * shares[:-1]
    if rb_bandwidth is not None and rb_bandwidth > 0:
        alloc = np.floor(alloc / rb_bandwidth) * rb_bandwidth
    # Float guard: nudge the largest share down until the budget holds exactly.
    while float(np.sum(alloc)) > total_bandwidth:
        top = int(np.argmax(alloc))
        alloc[top] = np.nextafter(alloc[top], 0.0)
    return alloc


def action_features(logits: np.ndarray) -> np.ndarray:
    """Log-share view of raw logits, used as the critic's action input.

    The simulator only ever sees softmax shares, so the reward is blind to a
    uniform shift of all logits. Log softmax collapses that flat direction
    instead of asking the critic to learn it, and straightens the 1/share
    curvature of the latency term into a near-linear trend. Works on a single
    action or a batch (last axis is the action).
    """
    z = np.asarray(logits, dtype=float)
    z = z - np.max(z, axis=-1, keepdims=True)
    return z - np.log(np.sum(np.exp(z), axis=-1, keepdims=True))


def reward(
    latencies: np.ndarray,
    alloc: np.ndarray,
    prev_alloc: np.ndarray | None,
    sync_errors: np.ndarray,
    cfg: ScenarioConfig,
) -> float:
    """Negative latency minus allocation-churn and sync-error penalties.

    The three sums mix seconds, Hz, and bits, so each is normalized to O(1)
    before weighting: latency by M * latency_cap, churn by the total bandwidth,
    sync error by M * nominal mean demand. The result is clipped to the
    configured bound, which is what keeps the TD targets well behaved.
    """
    m = len(latencies)
    lat_term = float(np.sum(latencies)) / (m * cfg.latency_cap)
    if prev_alloc is None:
        churn_term = 0.0
    else:
        churn_term = float(np.sum(np.abs(np.asarray(alloc) - np.asarray(prev_alloc)))) / cfg.total_bandwidth
    sync_term = float(np.sum(sync_errors)) / (m * cfg.traffic_mean_bits)
    value = -lat_term - cfg.reward_lambda * churn_term - cfg.reward_sync_weight * sync_term
    return float(np.clip(value, -cfg.reward_clip, cfg.reward_clip))
