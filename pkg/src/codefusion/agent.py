"""Projective-simulation agent over a dynamic percept set.

The agent keeps one h-value row and one glow row per percept it has seen,
over a fixed action set.  Action probabilities are a softmax of the h row,
re-normalized over the currently viable actions.  After each step the h
matrix absorbs reward along glowing edges and the glow decays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, TextIO

import numpy as np

from .environment import PerceptKey
from .tncode import Action, all_actions


@dataclass(frozen=True)
class AgentConfig:
    beta: float = 1.0
    eta: float = 0.05
    gamma: float = 0.0

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("softmax parameter beta must be positive")
        if not 0 <= self.eta <= 1:
            raise ValueError("glow parameter eta must lie in [0, 1]")
        if not 0 <= self.gamma <= 1:
            raise ValueError("damping parameter gamma must lie in [0, 1]")


class AgentNetwork:
    """h/g matrices growing by percept rows over a fixed action vocabulary."""

    def __init__(self, node_count: int, cfg: AgentConfig):
        self.cfg = cfg
        self.actions: List[Action] = all_actions(node_count)
        self.action_index: Dict[Action, int] = {
            a: idx for idx, a in enumerate(self.actions)
        }
        self.action_count = len(self.actions)
        self.percepts: Dict[str, int] = {}
        capacity = 64
        self.h = np.ones((capacity, self.action_count))
        self.g = np.zeros((capacity, self.action_count))

    @property
    def rows(self) -> int:
        return len(self.percepts)

    def _row_for(self, key: PerceptKey) -> int:
        idx = self.percepts.get(key.key)
        if idx is not None:
            return idx
        idx = len(self.percepts)
        if idx == self.h.shape[0]:
            grow = np.ones((self.h.shape[0], self.action_count))
            self.h = np.vstack([self.h, grow])
            self.g = np.vstack([self.g, np.zeros_like(grow)])
        self.h[idx, :] = 1.0
        self.g[idx, :] = 0.0
        self.percepts[key.key] = idx
        return idx

    def action_probabilities(
        self, key: PerceptKey, allowed: Sequence[Action]
    ) -> np.ndarray:
        """Softmax over all actions, masked and renormalized to viable ones."""
        row = self._row_for(key)
        h = self.h[row, : self.action_count]
        logits = self.cfg.beta * h
        logits = logits - logits.max()  # shift-invariant, avoids overflow
        weights = np.exp(logits)
        mask = np.zeros(self.action_count)
        for a in allowed:
            mask[self.action_index[a]] = 1.0
        weights = weights * mask
        total = weights.sum()
        if total == 0:
            raise ValueError("no viable action has nonzero probability")
        return weights / total

    def select_action(
        self, key: PerceptKey, allowed: Sequence[Action], rng: np.random.Generator
    ) -> Action:
        if not allowed:
            raise ValueError("allowed action set must be nonempty")
        probs = self.action_probabilities(key, allowed)
        choice = rng.choice(self.action_count, p=probs)
        return self.actions[int(choice)]

    def record_step(self, key: PerceptKey, action: Action) -> None:
        """Mark the traversed edge as glowing."""
        row = self._row_for(key)
        self.g[row, self.action_index[action]] = 1.0

    def update(self, reward: float) -> None:
        """h absorbs the reward along glowing edges, then the glow decays."""
        rows = len(self.percepts)
        h = self.h[:rows]
        g = self.g[:rows]
        h += reward * g + self.cfg.gamma * (1.0 - h)
        g *= 1.0 - self.cfg.eta

    def end_trial(self) -> None:
        self.g[: len(self.percepts)] = 0.0

    def write_snapshot(self, stream: TextIO) -> None:
        """Dump (percept key, h values) rows for post-hoc inspection."""
        for key, row in sorted(self.percepts.items(), key=lambda kv: kv[1]):
            values = " ".join(repr(v) for v in self.h[row, : self.action_count])
            stream.write(f"{key}\t{values}\n")
