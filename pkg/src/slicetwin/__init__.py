"""Digital-twin driven eMBB slice simulator with a DDPG bandwidth allocator.

A discrete-time simulator of an aerial-base-station slice: UEs with bursty
traffic, a Rayleigh-fading air-to-ground channel, a UAV base station that
descends the mean-UE-distance objective, and a digital twin layer that mirrors
the physical state for a DDPG agent allocating per-UE bandwidth. Static and
proportional-fair baselines plus a metrics harness round out the package; the
whole thing is exposed as a FastAPI service with a thin CLI client.
"""

__version__ = "0.1.0"

from .config import ConfigError, ScenarioConfig, load_config

__all__ = ["ConfigError", "ScenarioConfig", "load_config", "__version__"]
