"""Air-to-ground channel: geometry, fading, interference, rate, and latency.

All functions are pure given an explicit generator, so any thread can call
them with its own stream. Gains are amplitude-domain complex numbers; SINR
consumes the squared magnitude.
"""

from __future__ import annotations

import numpy as np

SPEED_OF_LIGHT = 3.0e8  # m/s


def distance(ue_pos: tuple[float, float], fbs_pos: tuple[float, float], altitude: float) -> float:
    """Slant range between a ground UE and the aerial base station."""
    dx = ue_pos[0] - fbs_pos[0]
    dy = ue_pos[1] - fbs_pos[1]
    return float(np.sqrt(dx * dx + dy * dy + altitude * altitude))


def distances(ue_xy: np.ndarray, fbs_xy: np.ndarray, altitude: float) -> np.ndarray:
    """Vectorized slant range for an (M, 2) array of UE positions."""
    delta = ue_xy - np.asarray(fbs_xy, dtype=float)
    return np.sqrt(np.sum(delta * delta, axis=1) + altitude * altitude)


def draw_fading(rng: np.random.Generator, size: int | tuple[int, ...]) -> np.ndarray:
    """Unit-variance complex normal samples (Rayleigh-distributed magnitude)."""
    re = rng.normal(0.0, np.sqrt(0.5), size)
    im = rng.normal(0.0, np.sqrt(0.5), size)
    return re + 1j * im


def channel_gain(d: float | np.ndarray, kappa: float, beta: float, g: complex | np.ndarray) -> np.ndarray:
    """Complex amplitude gain sqrt(kappa / d^beta) * g.

    The fading sample g is passed in (rather than drawn here) so tests can pin
    it and so the caller controls stream consumption; E[|gain|^2] = kappa/d^beta.
    """
    d = np.asarray(d, dtype=float)
    return np.sqrt(kappa / d**beta) * np.asarray(g)


def gain_sq(d: float | np.ndarray, kappa: float, beta: float, g: complex | np.ndarray) -> np.ndarray:
    """Power gain |h|^2 for the same inputs as channel_gain."""
    h = channel_gain(d, kappa, beta, g)
    return np.abs(h) ** 2


def interference(
    i: int,
    cross_gain_sq: np.ndarray,
    powers: np.ndarray,
    rng: np.random.Generator,
    ntn_std: float,
) -> float:
    """Total interference power at UE i's serving link.

    Sums every other UE's power through the cross-gain column for i, then adds
    a Gaussian NTN term floored at zero (watts cannot go negative).
    """
    cross = np.asarray(cross_gain_sq, dtype=float)
    powers = np.asarray(powers, dtype=float)
    acc = float(np.sum(powers * cross[:, i])) - float(powers[i] * cross[i, i])
    ntn = float(rng.normal(0.0, ntn_std)) if ntn_std > 0 else 0.0
    return acc + max(0.0, ntn)


def sinr(p: float, gain_sq_value: float, n0: float, i: float) -> float:
    """Signal-to-interference-plus-noise ratio p*|h|^2 / (N0 + I)."""
    return p * gain_sq_value / (n0 + i)


def sinr_vector(p: float, gains_sq: np.ndarray, n0: float, interf: np.ndarray) -> np.ndarray:
    return p * np.asarray(gains_sq, dtype=float) / (n0 + np.asarray(interf, dtype=float))


def achievable_rate(b: float | np.ndarray, sinr_value: float | np.ndarray) -> np.ndarray:
    """Shannon rate b * log2(1 + sinr); identically zero where b is zero."""
    b = np.asarray(b, dtype=float)
    return b * np.log2(1.0 + np.asarray(sinr_value, dtype=float))


def latency(
    data_bits: float | np.ndarray,
    rate: float | np.ndarray,
    t_proc: float,
    d: float | np.ndarray,
    cap: float,
) -> np.ndarray:
    """Per-UE delay: transmission + processing + propagation.

    The cap is a ceiling on any delay with data pending: a starved UE (zero
    rate) reports exactly cap rather than infinity, and a trickle-fed UE can
    never report worse than a starved one, keeping delay nonincreasing in
    rate. An empty queue costs only the processing and propagation terms,
    uncapped.
    """
    data_bits = np.asarray(data_bits, dtype=float)
    rate = np.asarray(rate, dtype=float)
    d = np.asarray(d, dtype=float)
    base = t_proc + d / SPEED_OF_LIGHT
    with np.errstate(divide="ignore", invalid="ignore"):
        full = base + np.where(data_bits > 0, data_bits / rate, 0.0)
    out = np.where(data_bits > 0, np.minimum(full, cap), base)
    return out if out.ndim else np.float64(out)
