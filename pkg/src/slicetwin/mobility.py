"""Aerial base-station motion: gradient descent on mean UE distance.

The update order is fixed: compute the gradient velocity, clamp its speed,
integrate over one tick, then clamp the position into the service rectangle.
That honors the speed cap and the box constraint at the same time.
"""

from __future__ import annotations

import numpy as np

from .config import ScenarioConfig
from .radio import distances
from .scenario import FbsState


def coverage_objective(ue_xy: np.ndarray, fbs: FbsState, weights: np.ndarray | None = None) -> float:
    """Mean (optionally weighted mean) slant range from the FBS to the UEs."""
    d = distances(ue_xy, np.asarray(fbs.pos), fbs.altitude)
    if weights is None:
        return float(np.mean(d))
    w = np.asarray(weights, dtype=float)
    return float(np.sum(w * d) / np.sum(w))


def velocity_from_gradient(
    ue_xy: np.ndarray,
    fbs: FbsState,
    eta: float,
    vmax: float,
    weights: np.ndarray | None = None,
) -> tuple[float, float]:
    """Steepest-descent velocity on the coverage objective, speed-clamped.

    The altitude keeps every distance strictly positive, so the gradient is
    always defined. Direction is preserved when the speed cap kicks in.
    """
    fbs_xy = np.asarray(fbs.pos, dtype=float)
    d = distances(ue_xy, fbs_xy, fbs.altitude)
    if weights is None:
        w = np.full(len(d), 1.0 / len(d))
    else:
        w = np.asarray(weights, dtype=float)
        w = w / np.sum(w)
    gx = float(np.sum(w * (fbs_xy[0] - ue_xy[:, 0]) / d))
    gy = float(np.sum(w * (fbs_xy[1] - ue_xy[:, 1]) / d))
    vx, vy = -eta * gx, -eta * gy
    speed = np.hypot(vx, vy)
    if speed > vmax:
        scale = vmax / speed
        vx, vy = vx * scale, vy * scale
    return vx, vy


def step_position(fbs: FbsState, velocity: tuple[float, float], dt: float, cfg: ScenarioConfig) -> FbsState:
    """Integrate one tick and clamp into the service rectangle.

    The stored velocity is the pre-clamp value, so the trace shows what the
    controller asked for even when the boundary stopped it.
    """
    x = min(max(fbs.pos[0] + velocity[0] * dt, cfg.x_min), cfg.x_max)
    y = min(max(fbs.pos[1] + velocity[1] * dt, cfg.y_min), cfg.y_max)
    return FbsState(pos=(x, y), altitude=fbs.altitude, velocity=(float(velocity[0]), float(velocity[1])))
