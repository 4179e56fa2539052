"""World state and the traffic process that drives it.

UE positions are drawn once per episode and stay put; only the base station
moves. Traffic is a two-state Markov-modulated lognormal: each UE draws a calm
demand every tick and multiplies it by burst_factor while in the burst state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import ScenarioConfig
from .rng import RngStreams


@dataclass
class UeState:
    pos: tuple[float, float]      # m, fixed for the episode
    demand: float = 0.0           # bits arriving this step
    backlog: float = 0.0          # bits queued and not yet served


@dataclass
class FbsState:
    pos: tuple[float, float]      # m
    altitude: float               # m
    velocity: tuple[float, float] = (0.0, 0.0)  # m/s, pre-clamp value of the last update


@dataclass
class TrafficState:
    """Per-UE burst flags plus the lognormal location parameter."""

    bursting: np.ndarray          # bool, shape (M,)
    mu_log: float                 # so that E[lognormal] = traffic_mean_bits

    @classmethod
    def fresh(cls, cfg: ScenarioConfig) -> "TrafficState":
        sigma = cfg.traffic_sigma_log
        mu = np.log(cfg.traffic_mean_bits) - 0.5 * sigma * sigma
        return cls(bursting=np.zeros(cfg.num_ues, dtype=bool), mu_log=float(mu))


def init_scenario(cfg: ScenarioConfig, seed) -> tuple[list[UeState], FbsState, RngStreams]:
    """Fresh world for a run: uniform UE placement, FBS parked at the center.

    The seed may be an int or an entropy tuple such as (master_seed, episode).
    """
    streams = RngStreams(seed)
    ues = place_ues(cfg, streams.placement)
    fbs = FbsState(pos=cfg.area_center, altitude=cfg.fbs_altitude)
    return ues, fbs, streams


def place_ues(cfg: ScenarioConfig, rng: np.random.Generator) -> list[UeState]:
    xs = rng.uniform(cfg.x_min, cfg.x_max, cfg.num_ues)
    ys = rng.uniform(cfg.y_min, cfg.y_max, cfg.num_ues)
    return [UeState(pos=(float(x), float(y))) for x, y in zip(xs, ys)]


def step_traffic(
    ues: list[UeState],
    traffic: TrafficState,
    cfg: ScenarioConfig,
    rng: np.random.Generator,
) -> np.ndarray:
    """Advance the burst chain, draw this tick's demands, and grow backlogs.

    Returns the demand vector for convenience; the UEs are updated in place.
    """
    m = len(ues)
    flips = rng.uniform(0.0, 1.0, m)
    enter = ~traffic.bursting & (flips < cfg.burst_prob)
    leave = traffic.bursting & (flips < cfg.calm_prob)
    traffic.bursting = (traffic.bursting | enter) & ~leave

    if cfg.traffic_sigma_log > 0:
        base = rng.lognormal(traffic.mu_log, cfg.traffic_sigma_log, m)
    else:
        # Degenerate distribution: keep the mean exact instead of exp(log(mean)).
        rng.lognormal(traffic.mu_log, 1.0, m)  # keep stream consumption identical
        base = np.full(m, cfg.traffic_mean_bits)
    demands = np.where(traffic.bursting, base * cfg.burst_factor, base)

    for ue, d in zip(ues, demands):
        ue.demand = float(d)
        ue.backlog += float(d)
    return demands


def ue_positions(ues: list[UeState]) -> np.ndarray:
    return np.array([ue.pos for ue in ues], dtype=float)


def drain_backlogs(ues: list[UeState], rates: np.ndarray, dt: float) -> None:
    """Serve up to rate*dt bits from each backlog; backlogs never go negative."""
    for ue, rate in zip(ues, rates):
        ue.backlog = max(0.0, ue.backlog - float(rate) * dt)
