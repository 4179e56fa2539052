"""Scenario configuration: the single source of truth for a run.

A config file is a flat JSON object; every key is optional and falls back to
the documented default. Unknown keys are rejected so typos fail loudly rather
than silently running the default. Units are SI throughout (Hz, W, m, s, bits).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any


class ConfigError(ValueError):
    """Raised for malformed config files or invariant violations; names the field."""


@dataclass(frozen=True)
class ScenarioConfig:
    # Slice geometry and radio constants
    num_ues: int = 50                    # M
    total_bandwidth: float = 2.0e7       # B, Hz
    num_rbs: int = 100                   # N, resource blocks (only used when quantize_rb)
    dt: float = 0.01                     # s, simulation tick = twin sync period
    horizon_steps: int = 200             # T, steps per episode
    episodes: int = 300                  # E, training episodes
    pathloss_const: float = 1e-4         # kappa, dimensionless (d in meters)
    pathloss_exp: float = 2.0            # beta
    tx_power: float = 0.5                # W per UE, uniform
    noise_power: float = 4e-12           # N0, W
    ntn_interference_std: float = 1e-9   # W, std of the NTN interference draw
    proc_delay: float = 1e-3             # T_proc, s
    latency_cap: float = 1.0             # s, reported latency when the serving rate is zero

    # Aerial base station
    fbs_altitude: float = 100.0          # m
    fbs_vmax: float = 10.0               # m/s
    fbs_step: float = 50.0               # eta, gradient step size (m^2 per update)
    x_min: float = 0.0                   # service-area rectangle, m
    x_max: float = 600.0
    y_min: float = 0.0
    y_max: float = 600.0
    demand_weighted_mobility: bool = False  # weight the coverage objective by current demand

    # Digital twin
    ema_alpha: float = 0.5               # demand-prediction smoothing factor, [0, 1]
    sync_period: int = 1                 # ticks between twin synchronizations

    # Traffic model (two-state Markov-modulated lognormal)
    traffic_mean_bits: float = 1e5       # mean of the calm-state demand per step
    traffic_sigma_log: float = 0.25      # sigma of the underlying normal
    burst_prob: float = 0.05             # calm -> burst transition probability per step
    calm_prob: float = 0.5               # burst -> calm transition probability per step
    burst_factor: float = 5.0            # demand multiplier while bursting

    # Reward shaping
    reward_lambda: float = 0.1           # weight of the allocation-change penalty
    reward_sync_weight: float = 0.05     # weight of the sync-error penalty
    reward_clip: float = 5.0             # R_max, reward clipped to [-R_max, R_max]

    # DDPG
    discount: float = 0.95               # gamma, [0, 1)
    soft_tau: float = 0.001              # target-network blend rate
    lr_actor: float = 1e-4
    lr_critic: float = 1e-3
    grad_clip: float = 1.0               # per-network gradient norm clip
    buffer_cap: int = 100_000            # R
    batch_size: int = 64                 # N_b
    noise_std0: float = 0.3              # exploration noise std at episode 0
    noise_decay: float = 0.999           # multiplicative decay per episode
    actor_hidden: tuple[int, ...] = (128, 128)
    critic_hidden: tuple[int, ...] = (128, 128)

    # Baselines
    pf_window: int = 100                 # steps of the proportional-fair rate average
    pf_rate_floor: float = 1.0           # bits/s floor for the PF denominator

    # Metrics and harness
    jitter_window: int = 100             # trailing steps for the jitter std
    record_interval: int = 10            # steps between metric records
    final_window: int = 100              # trailing steps summarized as the "final window"

    # Switches
    quantize_rb: bool = False            # round allocations down to multiples of B/N
    freeze_fading: bool = False          # pin every fading draw to 1 (test hook)

    rng_seed: int = 1234

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        require = _Require(self)
        require.int_at_least("num_ues", 1)
        require.positive("total_bandwidth")
        require.int_at_least("num_rbs", 1)
        require.positive("dt")
        require.int_at_least("horizon_steps", 1)
        require.int_at_least("episodes", 1)
        require.positive("pathloss_const")
        require.positive("pathloss_exp")
        require.positive("tx_power")
        require.positive("noise_power")
        require.nonnegative("ntn_interference_std")
        require.nonnegative("proc_delay")
        require.positive("latency_cap")
        require.positive("fbs_altitude")
        require.positive("fbs_vmax")
        require.positive("fbs_step")
        require.positive("traffic_mean_bits")
        require.nonnegative("traffic_sigma_log")
        require.unit_interval("burst_prob")
        require.unit_interval("calm_prob")
        require.at_least("burst_factor", 1.0)
        require.unit_interval("ema_alpha")
        require.int_at_least("sync_period", 1)
        require.nonnegative("reward_lambda")
        require.nonnegative("reward_sync_weight")
        require.positive("reward_clip")
        require.half_open_unit("discount")
        require.in_range("soft_tau", 0.0, 1.0, low_open=True)
        require.positive("lr_actor")
        require.positive("lr_critic")
        require.positive("grad_clip")
        require.int_at_least("buffer_cap", 1)
        require.int_at_least("batch_size", 1)
        require.nonnegative("noise_std0")
        require.in_range("noise_decay", 0.0, 1.0, low_open=True)
        require.int_at_least("pf_window", 1)
        require.positive("pf_rate_floor")
        require.int_at_least("jitter_window", 2)
        require.int_at_least("record_interval", 1)
        require.int_at_least("final_window", 1)
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ConfigError(
                "fbs bounds: require x_min < x_max and y_min < y_max, got "
                f"[{self.x_min}, {self.x_max}] x [{self.y_min}, {self.y_max}]"
            )
        for name in ("actor_hidden", "critic_hidden"):
            sizes = getattr(self, name)
            if not sizes or any((not isinstance(s, int)) or s < 1 for s in sizes):
                raise ConfigError(f"{name}: expected a nonempty list of positive ints, got {sizes!r}")

    # Derived quantities -----------------------------------------------------

    @property
    def rb_bandwidth(self) -> float:
        return self.total_bandwidth / self.num_rbs

    @property
    def state_dim(self) -> int:
        """Observation layout: 5 features per UE plus the FBS position."""
        return 5 * self.num_ues + 2

    @property
    def action_dim(self) -> int:
        """One logit per UE plus the slack slot for unallocated bandwidth."""
        return self.num_ues + 1

    @property
    def area_center(self) -> tuple[float, float]:
        return (0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))

    # Construction -----------------------------------------------------------

    @classmethod
    def from_mapping(cls, raw: dict[str, Any]) -> "ScenarioConfig":
        """Build a validated config from a flat dict, rejecting unknown keys."""
        if not isinstance(raw, dict):
            raise ConfigError(f"config: expected a JSON object, got {type(raw).__name__}")
        known = {f.name: f for f in fields(cls)}
        unknown = sorted(set(raw) - set(known))
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        kwargs: dict[str, Any] = {}
        for name, value in raw.items():
            kwargs[name] = _coerce(name, value, known[name].type)
        return cls(**kwargs)

    def to_mapping(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out

    def replace(self, **overrides: Any) -> "ScenarioConfig":
        merged = self.to_mapping()
        merged.update(overrides)
        return ScenarioConfig.from_mapping(merged)


def load_config(path: str | Path) -> ScenarioConfig:
    """Read a flat JSON config file; missing keys fall back to defaults."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if not text.strip():
        return ScenarioConfig()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return ScenarioConfig.from_mapping(raw)


def _coerce(name: str, value: Any, declared: Any) -> Any:
    """Map JSON scalars onto the dataclass field types, strictly for bools/ints."""
    declared = str(declared)
    if "bool" in declared:
        if not isinstance(value, bool):
            raise ConfigError(f"{name}: expected true/false, got {value!r}")
        return value
    if "tuple" in declared:
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"{name}: expected a list of ints, got {value!r}")
        return tuple(value)
    if declared == "int":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name}: expected a number, got {value!r}")
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f"{name}: expected an integer, got {value!r}")
        return int(value)
    if declared == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name}: expected a number, got {value!r}")
        result = float(value)
        if math.isnan(result) or math.isinf(result):
            raise ConfigError(f"{name}: must be finite, got {value!r}")
        return result
    return value


class _Require:
    """Tiny validator that raises ConfigError naming the offending field."""

    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg

    def _fail(self, name: str, what: str) -> None:
        raise ConfigError(f"{name}: must be {what}, got {getattr(self.cfg, name)!r}")

    def positive(self, name: str) -> None:
        if not getattr(self.cfg, name) > 0:
            self._fail(name, "> 0")

    def nonnegative(self, name: str) -> None:
        if not getattr(self.cfg, name) >= 0:
            self._fail(name, ">= 0")

    def at_least(self, name: str, low: float) -> None:
        if not getattr(self.cfg, name) >= low:
            self._fail(name, f">= {low}")

    def int_at_least(self, name: str, low: int) -> None:
        value = getattr(self.cfg, name)
        if not isinstance(value, int) or isinstance(value, bool) or value < low:
            self._fail(name, f"an integer >= {low}")

    def unit_interval(self, name: str) -> None:
        if not 0.0 <= getattr(self.cfg, name) <= 1.0:
            self._fail(name, "in [0, 1]")

    def half_open_unit(self, name: str) -> None:
        if not 0.0 <= getattr(self.cfg, name) < 1.0:
            self._fail(name, "in [0, 1)")

    def in_range(self, name: str, low: float, high: float, low_open: bool = False) -> None:
        value = getattr(self.cfg, name)
        ok = (low < value if low_open else low <= value) and value <= high
        if not ok:
            self._fail(name, f"in {'(' if low_open else '['}{low}, {high}]")
