"""Dense networks in plain numpy: forward, backprop, SGD, soft target updates.

Shapes follow the (batch, features) convention. Hidden layers are tanh, the
output layer is linear; callers that need bounded outputs apply their own head
(the actor's softmax projection lives elsewhere). Gradients returned by
backward() are sums over the batch, so mean losses are handled by scaling the
upstream gradient before the call.
"""

from __future__ import annotations

import numpy as np


class Mlp:
    """Fully connected network with tanh hidden layers and a linear output."""

    def __init__(self, layer_sizes, rng: np.random.Generator | None = None):
        sizes = [int(n) for n in layer_sizes]
        if len(sizes) < 2 or any(n <= 0 for n in sizes):
            raise ValueError(f"bad layer sizes {sizes}")
        self.layer_sizes = sizes
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            bound = 1.0 / np.sqrt(fan_in)
            if rng is None:
                w = np.zeros((fan_in, fan_out))
                b = np.zeros(fan_out)
            else:
                w = rng.uniform(-bound, bound, size=(fan_in, fan_out))
                b = rng.uniform(-bound, bound, size=fan_out)
            self.weights.append(w)
            self.biases.append(b)

    @property
    def num_layers(self) -> int:
        return len(self.weights)

    def forward(self, x: np.ndarray) -> np.ndarray:
        out, _ = self.forward_cached(x)
        return out

    def forward_cached(self, x: np.ndarray):
        """Forward pass returning (output, cache) for a later backward call.

        A 1-D input is treated as a single sample and the output squeezed back.
        """
        x = np.asarray(x, dtype=float)
        squeeze = x.ndim == 1
        a = x[None, :] if squeeze else x
        if a.shape[1] != self.layer_sizes[0]:
            raise ValueError(f"input width {a.shape[1]} != {self.layer_sizes[0]}")
        acts = [a]
        for i in range(self.num_layers):
            z = a @ self.weights[i] + self.biases[i]
            a = np.tanh(z) if i < self.num_layers - 1 else z
            acts.append(a)
        out = acts[-1][0] if squeeze else acts[-1]
        return out, (acts, squeeze)

    def backward(self, cache, grad_out: np.ndarray):
        """Backpropagate dL/d(output); return (param grads, dL/d(input)).

        Param grads come back as a list of (dW, db) aligned with the layers,
        summed over the batch.
        """
        acts, squeeze = cache
        g = np.asarray(grad_out, dtype=float)
        if squeeze:
            g = g[None, :]
        grads: list[tuple[np.ndarray, np.ndarray]] = [None] * self.num_layers
        for i in range(self.num_layers - 1, -1, -1):
            grads[i] = (acts[i].T @ g, g.sum(axis=0))
            g = g @ self.weights[i].T
            if i > 0:
                g = g * (1.0 - acts[i] ** 2)
        grad_in = g[0] if squeeze else g
        return grads, grad_in

    def apply_grads(self, grads, lr: float, clip: float | None = None) -> None:
        """One SGD step, with optional global-norm clipping over this net."""
        if clip is not None:
            total = 0.0
            for dw, db in grads:
                total += float(np.sum(dw * dw)) + float(np.sum(db * db))
            norm = np.sqrt(total)
            if norm > clip:
                scale = clip / norm
                grads = [(dw * scale, db * scale) for dw, db in grads]
        for i, (dw, db) in enumerate(grads):
            self.weights[i] -= lr * dw
            self.biases[i] -= lr * db

    def copy(self) -> "Mlp":
        dup = Mlp(self.layer_sizes)
        dup.weights = [w.copy() for w in self.weights]
        dup.biases = [b.copy() for b in self.biases]
        return dup

    # Flat views used by the finite-difference tests and the checkpoint code.

    def parameter_vector(self) -> np.ndarray:
        parts = []
        for w, b in zip(self.weights, self.biases):
            parts.append(w.ravel())
            parts.append(b.ravel())
        return np.concatenate(parts)

    def set_parameter_vector(self, vec: np.ndarray) -> None:
        vec = np.asarray(vec, dtype=float)
        pos = 0
        for i in range(self.num_layers):
            w, b = self.weights[i], self.biases[i]
            self.weights[i] = vec[pos:pos + w.size].reshape(w.shape).copy()
            pos += w.size
            self.biases[i] = vec[pos:pos + b.size].copy()
            pos += b.size
        if pos != vec.size:
            raise ValueError(f"parameter vector length {vec.size}, expected {pos}")

    def grads_to_vector(self, grads) -> np.ndarray:
        parts = []
        for dw, db in grads:
            parts.append(dw.ravel())
            parts.append(db.ravel())
        return np.concatenate(parts)

    def all_finite(self) -> bool:
        return all(np.all(np.isfinite(w)) for w in self.weights) and all(
            np.all(np.isfinite(b)) for b in self.biases
        )


def soft_update(live: Mlp, target: Mlp, tau: float) -> None:
    """Blend target parameters toward the live net: tau*live + (1-tau)*target."""
    if live.layer_sizes != target.layer_sizes:
        raise ValueError("layer size mismatch between live and target nets")
    for i in range(live.num_layers):
        target.weights[i] = tau * live.weights[i] + (1.0 - tau) * target.weights[i]
        target.biases[i] = tau * live.biases[i] + (1.0 - tau) * target.biases[i]
