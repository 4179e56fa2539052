"""Named random substreams derived from one master seed.

Each consumer (placement, traffic, fading, ...) owns an independent generator,
so adding draws to one never perturbs the others. That is what makes paired
comparisons across allocators possible: two simulations built from the same
seed see bit-identical placements, traffic, and fading no matter what the
allocator does with its own streams.
"""

from __future__ import annotations

import numpy as np

STREAM_NAMES = (
    "placement",
    "traffic",
    "fading",
    "interference",
    "exploration",
    "replay",
    "net_init",
)


class RngStreams:
    """Bundle of independent, deterministically seeded numpy generators."""

    def __init__(self, seed):
        if isinstance(seed, (int, np.integer)):
            self.seed = int(seed)
        else:
            # Entropy tuple, e.g. (master_seed, episode) for per-episode worlds.
            self.seed = tuple(int(s) for s in seed)
        root = np.random.SeedSequence(self.seed)
        children = root.spawn(len(STREAM_NAMES))
        self._streams = {name: np.random.default_rng(child) for name, child in zip(STREAM_NAMES, children)}

    def __getattr__(self, name: str) -> np.random.Generator:
        try:
            return self.__dict__["_streams"][name]
        except KeyError:
            raise AttributeError(f"no rng stream named {name!r}") from None

    def __repr__(self) -> str:
        return f"RngStreams(seed={self.seed})"
