"""Evaluation metrics and their CSV serialization.

The CSV header string is the schema version: any future change to the columns
or their order must rename a column, so readers can verify compatibility by
comparing the header verbatim. Floats are written with repr, which round-trips
every IEEE double exactly and keeps output bytes deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

CSV_HEADER = "time_s,allocator,avg_latency_s,utilization,jitter_s,mean_sync_error_bits,reward,seed"


@dataclass
class MetricsRecord:
    time_s: float
    allocator: str
    avg_latency_s: float
    utilization: float
    jitter_s: float
    mean_sync_error_bits: float
    reward: float
    seed: int


def avg_latency(latencies: np.ndarray) -> float:
    """Mean delay across UEs for one tick."""
    lat = np.asarray(latencies, dtype=float)
    if lat.size == 0:
        raise ValueError("need at least one latency sample")
    return float(np.mean(lat))


def utilization(
    allocs: np.ndarray,
    sinr: np.ndarray,
    demands: np.ndarray,
    dt: float,
    total_bandwidth: float,
) -> float:
    """Fraction of the budget doing useful work.

    A UE's useful bandwidth is capped at what would exactly serve this tick's
    demand at its current spectral efficiency; allocation beyond that is idle
    spectrum, allocation below it is fully used. Zero-demand UEs need nothing.
    """
    allocs = np.asarray(allocs, dtype=float)
    se = np.log2(1.0 + np.asarray(sinr, dtype=float))
    demands = np.asarray(demands, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        needed = np.where(demands > 0, demands / (dt * se), 0.0)
    needed = np.where((demands > 0) & (se <= 0), np.inf, needed)
    useful = float(np.sum(np.minimum(allocs, needed)))
    return float(np.clip(useful / total_bandwidth, 0.0, 1.0))


def jitter(latency_history: np.ndarray, window: int) -> float:
    """Mean over UEs of the latency standard deviation in the trailing window.

    History rows are ticks, columns are UEs. Fewer than two rows give 0 by
    convention (variation is undefined until there is a second sample).
    """
    hist = np.asarray(latency_history, dtype=float)
    if hist.ndim == 1:
        hist = hist[:, None]
    if hist.shape[0] < 2:
        return 0.0
    tail = hist[-int(window):]
    if tail.shape[0] < 2:
        return 0.0
    return float(np.mean(np.std(tail, axis=0)))


def format_record(rec: MetricsRecord) -> str:
    return ",".join(
        [
            repr(float(rec.time_s)),
            rec.allocator,
            repr(float(rec.avg_latency_s)),
            repr(float(rec.utilization)),
            repr(float(rec.jitter_s)),
            repr(float(rec.mean_sync_error_bits)),
            repr(float(rec.reward)),
            str(int(rec.seed)),
        ]
    )


def format_csv(records) -> str:
    lines = [CSV_HEADER]
    lines.extend(format_record(rec) for rec in records)
    return "\n".join(lines) + "\n"


def write_csv(records, path) -> None:
    Path(path).write_text(format_csv(records))


def parse_csv(text: str) -> list[MetricsRecord]:
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("unrecognized metrics CSV header")
    records = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 8:
            raise ValueError(f"bad metrics row: {ln!r}")
        records.append(
            MetricsRecord(
                time_s=float(parts[0]),
                allocator=parts[1],
                avg_latency_s=float(parts[2]),
                utilization=float(parts[3]),
                jitter_s=float(parts[4]),
                mean_sync_error_bits=float(parts[5]),
                reward=float(parts[6]),
                seed=int(parts[7]),
            )
        )
    return records


def read_csv(path) -> list[MetricsRecord]:
    return parse_csv(Path(path).read_text())
