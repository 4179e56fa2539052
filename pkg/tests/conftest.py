import numpy as np
import pytest

from slicetwin.config import ScenarioConfig


@pytest.fixture
def tiny_cfg():
    """Small scenario that keeps per-test simulation cost negligible."""
    return ScenarioConfig(
        num_ues=4,
        episodes=2,
        horizon_steps=12,
        batch_size=8,
        actor_hidden=(16, 16),
        critic_hidden=(16, 16),
        traffic_mean_bits=2000.0,
        record_interval=3,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260822)
