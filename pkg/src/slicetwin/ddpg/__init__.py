"""Learning core: dense networks with hand-rolled backprop, replay, and the agent."""

from .actions import project_action, reward
from .agent import DdpgAgent
from .mlp import Mlp, soft_update
from .replay import ReplayBuffer, Transition
from .train import TrainResult, train

__all__ = [
    "DdpgAgent",
    "Mlp",
    "ReplayBuffer",
    "TrainResult",
    "Transition",
    "project_action",
    "reward",
    "soft_update",
    "train",
]
