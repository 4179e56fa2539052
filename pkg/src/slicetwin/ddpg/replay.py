"""Experience replay: a fixed-capacity ring of transitions, sampled uniformly."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Transition:
    """One step of interaction. Actions are stored as raw logits."""

    s: np.ndarray
    a: np.ndarray
    r: float
    s_next: np.ndarray
    done: bool


class ReplayBuffer:
    """FIFO ring buffer; once full, each push overwrites the oldest entry."""

    def __init__(self, capacity: int):
        if capacity <= 0:
            raise ValueError("capacity must be positive")
        self.capacity = int(capacity)
        self._storage: list[Transition] = []
        self._pos = 0

    def __len__(self) -> int:
        return len(self._storage)

    def push(self, tr: Transition) -> None:
        if len(self._storage) < self.capacity:
            self._storage.append(tr)
        else:
            self._storage[self._pos] = tr
        self._pos = (self._pos + 1) % self.capacity

    def sample(self, batch_size: int, rng: np.random.Generator):
        """Draw batch_size transitions uniformly (with replacement) and stack them.

        Returns (states, actions, rewards, next_states, dones) with rewards as
        a float vector and dones as a float 0/1 vector, ready for TD targets.
        """
        n = len(self._storage)
        if n == 0:
            raise ValueError("cannot sample from an empty buffer")
        idx = rng.integers(0, n, size=batch_size)
        batch = [self._storage[i] for i in idx]
        states = np.stack([tr.s for tr in batch])
        actions = np.stack([tr.a for tr in batch])
        rewards = np.array([tr.r for tr in batch], dtype=float)
        next_states = np.stack([tr.s_next for tr in batch])
        dones = np.array([1.0 if tr.done else 0.0 for tr in batch])
        return states, actions, rewards, next_states, dones

    def oldest(self) -> Transition:
        """The entry that the next overwrite would evict (test hook)."""
        if not self._storage:
            raise ValueError("buffer is empty")
        if len(self._storage) < self.capacity:
            return self._storage[0]
        return self._storage[self._pos]
