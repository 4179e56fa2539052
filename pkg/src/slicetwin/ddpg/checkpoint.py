"""Checkpoint serialization for trained agents.

The on-disk format is a single JSON document with a format tag and version.
Floats are written with Python's shortest round-trip representation, so a
save/load cycle reproduces every parameter bit-exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..config import ScenarioConfig
from .agent import DdpgAgent
from .mlp import Mlp

FORMAT_TAG = "slicetwin-checkpoint"
FORMAT_VERSION = 1

_NET_NAMES = ("actor", "critic", "target_actor", "target_critic")


class CheckpointError(ValueError):
    """Raised when a checkpoint document is malformed or incompatible."""


def _net_to_doc(net: Mlp) -> dict:
    return {
        "layer_sizes": list(net.layer_sizes),
        "weights": [w.tolist() for w in net.weights],
        "biases": [b.tolist() for b in net.biases],
    }


def _net_from_doc(doc: dict) -> Mlp:
    try:
        sizes = doc["layer_sizes"]
        weights = doc["weights"]
        biases = doc["biases"]
    except (KeyError, TypeError) as exc:
        raise CheckpointError(f"malformed network block: {exc}") from exc
    net = Mlp(sizes)
    if len(weights) != net.num_layers or len(biases) != net.num_layers:
        raise CheckpointError("network block layer count mismatch")
    for i in range(net.num_layers):
        w = np.asarray(weights[i], dtype=float)
        b = np.asarray(biases[i], dtype=float)
        if w.shape != net.weights[i].shape or b.shape != net.biases[i].shape:
            raise CheckpointError(
                f"layer {i} shape mismatch: {w.shape} vs {net.weights[i].shape}"
            )
        net.weights[i] = w
        net.biases[i] = b
    return net


def agent_to_doc(agent: DdpgAgent) -> dict:
    return {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "num_ues": agent.cfg.num_ues,
        "noise_std": agent.noise_std,
        "networks": {
            "actor": _net_to_doc(agent.actor),
            "critic": _net_to_doc(agent.critic),
            "target_actor": _net_to_doc(agent.target_actor),
            "target_critic": _net_to_doc(agent.target_critic),
        },
    }


def agent_from_doc(doc: dict, cfg: ScenarioConfig) -> DdpgAgent:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise CheckpointError("not a recognized checkpoint document")
    if doc.get("version") != FORMAT_VERSION:
        raise CheckpointError(f"unsupported checkpoint version {doc.get('version')!r}")
    if doc.get("num_ues") != cfg.num_ues:
        raise CheckpointError(
            f"checkpoint was trained for {doc.get('num_ues')} UEs, config has {cfg.num_ues}"
        )
    nets = doc.get("networks")
    if not isinstance(nets, dict) or set(_NET_NAMES) - set(nets):
        raise CheckpointError("checkpoint is missing network blocks")
    agent = DdpgAgent(cfg)
    agent.actor = _net_from_doc(nets["actor"])
    agent.critic = _net_from_doc(nets["critic"])
    agent.target_actor = _net_from_doc(nets["target_actor"])
    agent.target_critic = _net_from_doc(nets["target_critic"])
    tail_dim = cfg.state_dim - 5 * cfg.num_ues
    if agent.actor.layer_sizes[0] != 5 + tail_dim or agent.actor.layer_sizes[-1] != 1:
        raise CheckpointError("actor dimensions do not match the scenario layout")
    agent.noise_std = float(doc.get("noise_std", cfg.noise_std0))
    return agent


def save_checkpoint(agent: DdpgAgent, path) -> None:
    Path(path).write_text(json.dumps(agent_to_doc(agent)) + "\n")


def load_checkpoint(path, cfg: ScenarioConfig) -> DdpgAgent:
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CheckpointError(f"checkpoint file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"checkpoint is not valid JSON: {exc}") from exc
    return agent_from_doc(doc, cfg)
