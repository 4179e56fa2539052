"""Mirror of the physical slice used by the learning agent.

The twin holds the last-synchronized channel snapshot, a demand predictor, and
the per-UE prediction error. Between syncs it goes stale on purpose; the
staleness is the quantity under study. simulate_action never touches physical
state, which is what makes the twin safe to probe with hypothetical
allocations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import ScenarioConfig
from .ddpg.actions import reward
from .radio import achievable_rate, distances, latency, sinr_vector


def predict_demand(d_hat, d_obs, alpha: float):
    """Exponential moving average: alpha*observed + (1-alpha)*previous estimate."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    return alpha * np.asarray(d_obs, dtype=float) + (1.0 - alpha) * np.asarray(d_hat, dtype=float)


def sync_error(d_obs, d_hat):
    """Absolute gap between observed demand and the twin's estimate, in bits."""
    return np.abs(np.asarray(d_obs, dtype=float) - np.asarray(d_hat, dtype=float))


@dataclass
class TwinState:
    """Everything the agent is allowed to see, frozen at the last sync."""

    gain_sq: np.ndarray       # mirrored |h|^2 per UE
    interference: np.ndarray  # mirrored interference-plus-NTN power per UE, W
    demand: np.ndarray        # observed demand at last sync, bits
    d_hat: np.ndarray         # EMA demand estimate, bits
    eps: np.ndarray           # |demand - d_hat| at last sync, bits
    ue_pos: np.ndarray        # (M, 2) m
    fbs_pos: np.ndarray       # (2,) m
    last_sync_step: int = -1  # -1 means never synchronized

    @classmethod
    def fresh(cls, num_ues: int) -> "TwinState":
        m = int(num_ues)
        return cls(
            gain_sq=np.zeros(m),
            interference=np.zeros(m),
            demand=np.zeros(m),
            d_hat=np.zeros(m),
            eps=np.zeros(m),
            ue_pos=np.zeros((m, 2)),
            fbs_pos=np.zeros(2),
        )

    def synced(self) -> bool:
        return self.last_sync_step >= 0


def sync_due(twin: TwinState, step: int, sync_period: int) -> bool:
    """True when the twin has never synced or the cadence has elapsed."""
    return not twin.synced() or step - twin.last_sync_step >= sync_period


def synchronize(
    twin: TwinState,
    gain_sq: np.ndarray,
    interference: np.ndarray,
    demands: np.ndarray,
    ue_pos: np.ndarray,
    fbs_pos,
    step: int,
    alpha: float,
) -> TwinState:
    """Copy the physical snapshot in, then refresh prediction and error.

    The error is measured against the just-updated estimate, so with a constant
    demand stream it contracts by (1-alpha) per sync.
    """
    twin.gain_sq = np.array(gain_sq, dtype=float)
    twin.interference = np.array(interference, dtype=float)
    twin.demand = np.array(demands, dtype=float)
    twin.ue_pos = np.array(ue_pos, dtype=float)
    twin.fbs_pos = np.array(fbs_pos, dtype=float)
    twin.d_hat = predict_demand(twin.d_hat, twin.demand, alpha)
    twin.eps = sync_error(twin.demand, twin.d_hat)
    twin.last_sync_step = int(step)
    return twin


def assemble_state(twin: TwinState, cfg: ScenarioConfig) -> np.ndarray:
    """Flatten the twin into the agent's observation vector, length 5M+2.

    Layout per UE: [gain, demand, x, y, error], then the FBS position. Raw
    values span ten orders of magnitude, so each feature is squashed to O(1):
    gains on a log scale around the straight-down path gain, demands and errors
    against the nominal mean, positions against the rectangle half-width.
    """
    if not twin.synced():
        raise ValueError("twin has never been synchronized")
    ref_gain = cfg.pathloss_const / cfg.fbs_altitude ** cfg.pathloss_exp
    g_norm = (np.log10(np.maximum(twin.gain_sq, 1e-300)) - np.log10(ref_gain)) / 2.0
    d_norm = twin.demand / cfg.traffic_mean_bits
    eps_norm = twin.eps / cfg.traffic_mean_bits
    cx, cy = cfg.area_center
    half_w = max((cfg.x_max - cfg.x_min) / 2.0, 1.0)
    half_h = max((cfg.y_max - cfg.y_min) / 2.0, 1.0)
    x_norm = (twin.ue_pos[:, 0] - cx) / half_w
    y_norm = (twin.ue_pos[:, 1] - cy) / half_h
    per_ue = np.stack([g_norm, d_norm, x_norm, y_norm, eps_norm], axis=1).ravel()
    fbs = np.array([(twin.fbs_pos[0] - cx) / half_w, (twin.fbs_pos[1] - cy) / half_h])
    return np.concatenate([per_ue, fbs])


def simulate_action(
    twin: TwinState,
    action: np.ndarray,
    cfg: ScenarioConfig,
    prev_alloc: np.ndarray | None = None,
):
    """Score a candidate allocation inside the twin, without side effects.

    Uses the mirrored (possibly stale) channel and the predicted demands, so
    the estimate degrades gracefully with staleness and matches the physical
    outcome exactly when the twin is fresh. Returns (latency estimates, reward
    estimate).
    """
    action = np.asarray(action, dtype=float)
    if action.shape != (cfg.num_ues,):
        raise ValueError(f"action shape {action.shape}, expected ({cfg.num_ues},)")
    if np.any(action < 0) or float(np.sum(action)) > cfg.total_bandwidth:
        raise ValueError("action violates the bandwidth budget")
    s = sinr_vector(cfg.tx_power, twin.gain_sq, cfg.noise_power, twin.interference)
    rates = achievable_rate(action, s)
    dists = distances(twin.ue_pos, twin.fbs_pos, cfg.fbs_altitude)
    lat = latency(twin.d_hat, rates, cfg.proc_delay, dists, cfg.latency_cap)
    est = reward(lat, action, prev_alloc, twin.eps, cfg)
    return lat, est
