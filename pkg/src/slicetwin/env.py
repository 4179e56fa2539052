"""Discrete-time simulation of the slice: channel, traffic, motion, and twin.

One tick = one allocation decision. Each step consumes the allocation against
the current channel and demands, then advances the world (base-station motion,
fresh traffic, fresh fading) and resynchronizes the twin when the cadence says
so. All randomness flows through named substreams of one master seed, so two
runs with the same (config, seed) agree bit-for-bit regardless of which
allocator is driving.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ScenarioConfig
from .ddpg.actions import reward
from .mobility import step_position, velocity_from_gradient
from .radio import (
    achievable_rate,
    distances,
    draw_fading,
    gain_sq,
    interference,
    latency,
    sinr_vector,
)
from .scenario import TrafficState, drain_backlogs, init_scenario, step_traffic, ue_positions
from .twin import TwinState, assemble_state, simulate_action, sync_due, synchronize


@dataclass
class StepOutcome:
    """Everything one tick produced, for learning and for metrics."""

    obs: np.ndarray        # observation after the world advanced
    reward: float
    done: bool
    latencies: np.ndarray  # s, realized this tick
    rates: np.ndarray      # bits/s
    sinr: np.ndarray
    demands: np.ndarray    # bits that arrived this tick
    sync_errors: np.ndarray  # bits, against the twin estimate at action time
    alloc: np.ndarray      # Hz, the allocation that was applied


class SliceSimulation:
    """Physical network plus its twin, driven by an external allocator."""

    def __init__(self, cfg: ScenarioConfig, seed: int):
        self.cfg = cfg
        self.seed = int(seed)
        self._frozen_fading = None
        self._frozen_cross = None
        self._frozen_ntn = None

    # -- lifecycle ------------------------------------------------------

    def reset(self, episode: int | None = None) -> np.ndarray:
        """Build a fresh world. Plain seed by default; (seed, episode) entropy
        during training so episodes differ while staying reproducible."""
        cfg = self.cfg
        # 1+episode: SeedSequence zero-pads entropy, so (seed, 0) would alias
        # the plain evaluation seed.
        entropy = self.seed if episode is None else (self.seed, 1 + int(episode))
        self.ues, self.fbs, self.streams = init_scenario(cfg, entropy)
        self.traffic = TrafficState.fresh(cfg)
        self.twin = TwinState.fresh(cfg.num_ues)
        self.step_idx = 0
        self.prev_alloc = None
        self._frozen_fading = None
        self._frozen_cross = None
        self._frozen_ntn = None
        self._draw_traffic()
        self._draw_channel()
        self._sync_twin()
        return self.observe()

    def observe(self) -> np.ndarray:
        return assemble_state(self.twin, self.cfg)

    def sandbox(self, action: np.ndarray):
        """What-if evaluation of an action inside the twin; no side effects."""
        return simulate_action(self.twin, action, self.cfg, self.prev_alloc)

    def current_sinr(self) -> np.ndarray:
        """Physical-layer SINR for the tick about to be served."""
        return sinr_vector(self.cfg.tx_power, self.gain_sq, self.cfg.noise_power, self.interf)

    # -- dynamics -------------------------------------------------------

    def step(self, alloc: np.ndarray) -> StepOutcome:
        """Apply a bandwidth allocation to the current tick and advance."""
        cfg = self.cfg
        alloc = np.asarray(alloc, dtype=float)
        s = self.current_sinr()
        rates = achievable_rate(alloc, s)
        lat = latency(self.demands, rates, cfg.proc_delay, self.dists, cfg.latency_cap)
        eps_live = np.abs(self.demands - self.twin.d_hat)
        r = reward(lat, alloc, self.prev_alloc, eps_live, cfg)
        drain_backlogs(self.ues, rates, cfg.dt)
        self.prev_alloc = alloc
        demands_now = self.demands

        self._advance_world()
        done = self.step_idx >= cfg.horizon_steps
        return StepOutcome(
            obs=self.observe(),
            reward=r,
            done=done,
            latencies=lat,
            rates=rates,
            sinr=s,
            demands=demands_now,
            sync_errors=eps_live,
            alloc=alloc,
        )

    def _advance_world(self) -> None:
        cfg = self.cfg
        ue_xy = ue_positions(self.ues)
        weights = self.demands if cfg.demand_weighted_mobility else None
        v = velocity_from_gradient(ue_xy, self.fbs, cfg.fbs_step, cfg.fbs_vmax, weights)
        self.fbs = step_position(self.fbs, v, cfg.dt, cfg)
        self.step_idx += 1
        self._draw_traffic()
        self._draw_channel()
        if sync_due(self.twin, self.step_idx, cfg.sync_period):
            self._sync_twin()

    # -- internals ------------------------------------------------------

    def _draw_traffic(self) -> None:
        self.demands = step_traffic(self.ues, self.traffic, self.cfg, self.streams.traffic)

    def _draw_channel(self) -> None:
        cfg = self.cfg
        m = cfg.num_ues
        self.dists = distances(ue_positions(self.ues), np.asarray(self.fbs.pos), cfg.fbs_altitude)
        if cfg.freeze_fading:
            if self._frozen_fading is None:
                self._frozen_fading = draw_fading(self.streams.fading, m)
                self._frozen_cross = draw_fading(self.streams.fading, (m, m))
                self._frozen_ntn = np.maximum(
                    0.0, self.streams.interference.normal(0.0, cfg.ntn_interference_std, m)
                ) if cfg.ntn_interference_std > 0 else np.zeros(m)
            g = self._frozen_fading
            g_cross = self._frozen_cross
        else:
            g = draw_fading(self.streams.fading, m)
            g_cross = draw_fading(self.streams.fading, (m, m))
        self.gain_sq = gain_sq(self.dists, cfg.pathloss_const, cfg.pathloss_exp, g)
        cross = gain_sq(self.dists[:, None], cfg.pathloss_const, cfg.pathloss_exp, g_cross)
        powers = np.full(m, cfg.tx_power)
        if cfg.freeze_fading:
            base = cross.T @ powers - np.diag(cross) * powers
            self.interf = base + self._frozen_ntn
        else:
            self.interf = np.array(
                [
                    interference(i, cross, powers, self.streams.interference, cfg.ntn_interference_std)
                    for i in range(m)
                ]
            )

    def _sync_twin(self) -> None:
        synchronize(
            self.twin,
            self.gain_sq,
            self.interf,
            self.demands,
            ue_positions(self.ues),
            np.asarray(self.fbs.pos, dtype=float),
            self.step_idx,
            self.cfg.ema_alpha,
        )
