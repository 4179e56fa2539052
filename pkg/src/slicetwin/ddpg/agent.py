"""Actor-critic agent: deterministic policy, Q critic, targets, update rules."""

from __future__ import annotations

import numpy as np

from ..config import ScenarioConfig
from .actions import action_features, project_action
from .mlp import Mlp, soft_update
from .replay import ReplayBuffer


class DdpgAgent:
    """Four networks plus the update arithmetic that ties them together.

    Both nets are slot nets shared across UEs. The actor scores one slot at
    a time from that slot's features plus the shared observation tail and
    emits its logit; the slack slot rides along as a virtual UE with zeroed
    features (no demand, reference gain), so idle spectrum competes in the
    softmax like any starved user. The critic scores one UE at a time from
    the same per-slot view plus the UE's own and slack log shares; Q is the
    sum over slots. The reward is itself a sum of per-UE terms and the best
    policy treats every UE by the same rule, so the weight sharing bakes
    that structure in instead of asking one wide net to rediscover it per
    slot. Target copies trail the live nets through soft updates and supply
    the TD bootstrap.
    """

    def __init__(self, cfg: ScenarioConfig, rng: np.random.Generator | None = None):
        self.cfg = cfg
        self.state_dim = cfg.state_dim
        self.action_dim = cfg.action_dim
        tail_dim = self.state_dim - 5 * cfg.num_ues
        actor_sizes = [5 + tail_dim, *cfg.actor_hidden, 1]
        critic_sizes = [5 + tail_dim + 2, *cfg.critic_hidden, 1]
        self.actor = Mlp(actor_sizes, rng)
        self.critic = Mlp(critic_sizes, rng)
        self.target_actor = self.actor.copy()
        self.target_critic = self.critic.copy()
        self.buffer = ReplayBuffer(cfg.buffer_cap)
        self.noise_std = cfg.noise_std0

    # -- slot views ------------------------------------------------------

    def _actor_rows(self, states: np.ndarray) -> np.ndarray:
        """Per-slot actor inputs: (N, 5M+2) states -> (N*(M+1), 5+tail)."""
        n = states.shape[0]
        m = self.cfg.num_ues
        per_ue = states[:, : 5 * m].reshape(n, m, 5)
        tail = np.repeat(states[:, None, 5 * m:], m + 1, axis=1)
        slack = np.zeros((n, 1, 5))
        feats = np.concatenate([per_ue, slack], axis=1)
        return np.concatenate([feats, tail], axis=2).reshape(n * (m + 1), -1)

    def _critic_rows(self, states: np.ndarray, feats: np.ndarray) -> np.ndarray:
        """Per-UE critic inputs: (N, 5M+2) states -> (N*M, 5+tail+2)."""
        n = states.shape[0]
        m = self.cfg.num_ues
        per_ue = states[:, : 5 * m].reshape(n, m, 5)
        tail = np.repeat(states[:, None, 5 * m:], m, axis=1)
        own = feats[:, :m, None]
        slack = np.repeat(feats[:, m:][:, None, :], m, axis=1)
        return np.concatenate([per_ue, tail, own, slack], axis=2).reshape(n * m, -1)

    def policy_logits(self, net: Mlp, states: np.ndarray) -> np.ndarray:
        """Logits for a batch under the given actor net, one per slot."""
        rows = self._actor_rows(states)
        return net.forward(rows)[:, 0].reshape(-1, self.cfg.num_ues + 1)

    def critic_value(self, net: Mlp, states: np.ndarray, logits: np.ndarray) -> np.ndarray:
        """Q for a batch under the given critic net: sum of slot scores."""
        rows = self._critic_rows(states, action_features(logits))
        return net.forward(rows)[:, 0].reshape(-1, self.cfg.num_ues).sum(axis=1)

    # -- acting ---------------------------------------------------------

    def select_action(self, s: np.ndarray, explore: bool, rng: np.random.Generator | None = None):
        """Policy output for one state: (raw logits, projected bandwidths).

        With explore=True, Gaussian noise at the current schedule std lands on
        the logits before projection, so the budget constraint still holds.
        """
        s = np.asarray(s, dtype=float)
        logits = self.policy_logits(self.actor, s[None, :])[0]
        if explore and self.noise_std > 0:
            if rng is None:
                raise ValueError("exploration requires an rng")
            logits = logits + rng.normal(0.0, self.noise_std, size=logits.shape)
        rb = self.cfg.rb_bandwidth if self.cfg.quantize_rb else None
        bw = project_action(logits, self.cfg.total_bandwidth, rb)
        return logits, bw

    def decay_noise(self) -> None:
        self.noise_std *= self.cfg.noise_decay

    # -- learning -------------------------------------------------------

    def critic_update(self, batch) -> float:
        """One SGD step on the mean squared TD error; returns the pre-step loss."""
        states, actions, rewards, next_states, dones = batch
        m = self.cfg.num_ues
        next_logits = self.policy_logits(self.target_actor, next_states)
        next_q = self.critic_value(self.target_critic, next_states, next_logits)
        targets = rewards + self.cfg.discount * (1.0 - dones) * next_q
        rows = self._critic_rows(states, action_features(actions))
        q_rows, cache = self.critic.forward_cached(rows)
        delta = q_rows[:, 0].reshape(-1, m).sum(axis=1) - targets
        loss = float(np.mean(delta ** 2))
        # dL/dq is identical for every slot of a sample: slots enter Q as a sum
        grad_out = np.repeat(2.0 * delta / delta.size, m)[:, None]
        grads, _ = self.critic.backward(cache, grad_out)
        self.critic.apply_grads(grads, self.cfg.lr_critic, self.cfg.grad_clip)
        return loss

    def actor_update(self, batch) -> float:
        """Ascend mean Q(s, mu(s)) through the frozen critic; returns that mean."""
        states = batch[0]
        n = states.shape[0]
        m = self.cfg.num_ues
        actor_rows = self._actor_rows(states)
        row_logits, actor_cache = self.actor.forward_cached(actor_rows)
        logits = row_logits[:, 0].reshape(n, m + 1)
        feats = action_features(logits)
        rows = self._critic_rows(states, feats)
        q_rows, critic_cache = self.critic.forward_cached(rows)
        objective = float(np.sum(q_rows)) / n
        grad_out = np.full((n * m, 1), 1.0 / n)
        _, grad_in = self.critic.backward(critic_cache, grad_out)
        gin = grad_in.reshape(n, m, -1)
        # reassemble dQ/d(log share): own column slot-wise, slack column summed
        grad_feats = np.empty((n, m + 1))
        grad_feats[:, :m] = gin[:, :, -2]
        grad_feats[:, m] = np.sum(gin[:, :, -1], axis=1)
        # Log-softmax Jacobian transpose: rows of grad_feats become logit grads.
        shares = np.exp(feats)
        grad_logits = grad_feats - shares * np.sum(grad_feats, axis=1, keepdims=True)
        # Negated upstream gradient: apply_grads descends, we want ascent on Q.
        grads, _ = self.actor.backward(actor_cache, -grad_logits.reshape(n * (m + 1), 1))
        self.actor.apply_grads(grads, self.cfg.lr_actor, self.cfg.grad_clip)
        return objective

    def soft_update_targets(self) -> None:
        soft_update(self.actor, self.target_actor, self.cfg.soft_tau)
        soft_update(self.critic, self.target_critic, self.cfg.soft_tau)

    def all_finite(self) -> bool:
        return (
            self.actor.all_finite()
            and self.critic.all_finite()
            and self.target_actor.all_finite()
            and self.target_critic.all_finite()
        )
