"""Bandwidth allocators behind one interface: static, proportional fair, learned.

Each allocator sees the live simulation through decide(sim) and may watch the
realized outcome through record(outcome). Every allocation they produce
respects the budget: nonnegative shares summing to at most the total
bandwidth, enforced the same way the action projection does it.
"""

from __future__ import annotations

import numpy as np

from .config import ScenarioConfig
from .ddpg.agent import DdpgAgent
from .env import SliceSimulation, StepOutcome

ALLOCATOR_NAMES = ("static", "pf", "drl")


def _enforce_budget(alloc: np.ndarray, total: float) -> np.ndarray:
    # Nudge the largest share down by ulps until the float sum obeys the budget.
    while float(np.sum(alloc)) > total:
        top = int(np.argmax(alloc))
        alloc[top] = np.nextafter(alloc[top], 0.0)
    return alloc


def static_alloc(num_ues: int, total_bandwidth: float) -> np.ndarray:
    """Equal split, constant over time."""
    alloc = np.full(num_ues, total_bandwidth / num_ues)
    return _enforce_budget(alloc, total_bandwidth)


def pf_alloc(
    avg_rates: np.ndarray,
    total_bandwidth: float,
    rate_floor: float,
) -> np.ndarray:
    """Proportional fairness on delivered-throughput history.

    weight_i = 1 / max(avg_rate_i, floor); shares are weights renormalized
    onto the budget, so chronically under-served users get pulled up. The
    nominal-rate numerator of the textbook metric is a common constant here
    (the scheduler runs on history, not per-tick channel peeks) and cancels
    in the normalization. Chasing the instantaneous rate instead degenerates
    into max-SINR hopping when fading decorrelates tick to tick.
    """
    hist = np.maximum(np.asarray(avg_rates, dtype=float), rate_floor)
    weights = 1.0 / hist
    total_w = float(np.sum(weights))
    if total_w <= 0 or not np.isfinite(total_w):
        return static_alloc(len(hist), total_bandwidth)
    alloc = total_bandwidth * weights / total_w
    return _enforce_budget(alloc, total_bandwidth)


class StaticAllocator:
    name = "static"

    def __init__(self, cfg: ScenarioConfig):
        self._alloc = static_alloc(cfg.num_ues, cfg.total_bandwidth)

    def decide(self, sim: SliceSimulation) -> np.ndarray:
        return self._alloc.copy()

    def record(self, outcome: StepOutcome) -> None:
        pass


class PfAllocator:
    """Stateful proportional fairness with an EMA throughput history."""

    name = "pf"

    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        self.avg_rates = np.zeros(cfg.num_ues)

    def decide(self, sim: SliceSimulation) -> np.ndarray:
        return pf_alloc(self.avg_rates, self.cfg.total_bandwidth, self.cfg.pf_rate_floor)

    def record(self, outcome: StepOutcome) -> None:
        # History tracks throughput actually delivered, not headroom: serving
        # faster than this tick's arrival drains no extra demand.
        served = np.minimum(outcome.rates, outcome.demands / self.cfg.dt)
        w = 1.0 / self.cfg.pf_window
        self.avg_rates = (1.0 - w) * self.avg_rates + w * served


class DrlAllocator:
    """Greedy (noise-free) policy of a trained agent."""

    name = "drl"

    def __init__(self, agent: DdpgAgent):
        self.agent = agent

    def decide(self, sim: SliceSimulation) -> np.ndarray:
        _, bw = self.agent.select_action(sim.observe(), explore=False)
        return bw

    def record(self, outcome: StepOutcome) -> None:
        pass


def make_allocator(kind: str, cfg: ScenarioConfig, agent: DdpgAgent | None = None):
    if kind == "static":
        return StaticAllocator(cfg)
    if kind == "pf":
        return PfAllocator(cfg)
    if kind == "drl":
        if agent is None:
            raise ValueError("the drl allocator needs a trained agent or checkpoint")
        return DrlAllocator(agent)
    raise ValueError(f"unknown allocator {kind!r}, expected one of {ALLOCATOR_NAMES}")
