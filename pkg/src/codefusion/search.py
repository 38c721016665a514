"""Exhaustive and random baselines over fusion-action sequences.

Brute force enumerates action multisets (as non-decreasing index sequences,
the counting convention of the analytic sequence count) depth-first, pruning
branches whose next action is structurally impossible or whose fusion fails.
Subtrees are memoized by (percept key, remaining steps, minimum action index).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from . import distance as dist
from .codes import StabilizerCode, seed
from .environment import Environment, EnvironmentConfig, percept_key
from .tncode import (
    Action,
    FusionFailure,
    TensorNetworkCode,
    all_actions,
    allowed_actions,
    combine,
    fuse,
    resolve_action,
)


class PartialResultError(RuntimeError):
    """Brute force hit the enumeration budget; resume_token marks the prefix."""

    def __init__(self, message: str, resume_token: Tuple[int, ...]):
        super().__init__(message)
        self.resume_token = resume_token


def sequence_count(node_count: int, s: int) -> int:
    """Number of action multisets of size s over the n(n+1)/2 node pairs."""
    if s < 1:
        raise ValueError("need at least one step")
    a = node_count * (node_count + 1) // 2
    return math.comb(s - 1 + a, s)


def random_search_probability(n_opt: int, big_n: int, t: int) -> float:
    """Chance that t uniform sequence draws hit one of n_opt optimal sequences."""
    if big_n < 1 or not 0 <= n_opt <= big_n:
        raise ValueError("need 0 <= n_opt <= N and N >= 1")
    return 1.0 - (1.0 - n_opt / big_n) ** t


@dataclass
class BruteForceResult:
    best_distance: int
    best_signature: Tuple[int, int, int]
    optimal_sequence_count: int
    total_sequences: int
    ordered_sequence_count: int
    distinct_best_keys: FrozenSet[str]
    best_codes: Dict[str, StabilizerCode]
    completed_sequences: int
    pruned_sequences: int
    wall_time: float

    def histograms_of_best(self) -> Dict[str, dist.WeightHistogram]:
        return {
            key: dist.weight_histograms(code) for key, code in self.best_codes.items()
        }

    def as_dict(self) -> dict:
        return {
            "best_distance": self.best_distance,
            "best_signature": list(self.best_signature),
            "optimal_sequence_count": self.optimal_sequence_count,
            "total_sequences": self.total_sequences,
            "ordered_sequence_count": self.ordered_sequence_count,
            "distinct_best_keys": sorted(self.distinct_best_keys),
            "completed_sequences": self.completed_sequences,
            "pruned_sequences": self.pruned_sequences,
            "wall_time": self.wall_time,
        }


# Subtree summary: (best distance or None, sequences attaining it,
# best codes by key, completed count, pruned count).
_Subtree = Tuple[Optional[int], int, Dict[str, StabilizerCode], int, int]


def brute_force(
    cfg: EnvironmentConfig, budget_bits: int = dist.DEFAULT_BUDGET_BITS
) -> BruteForceResult:
    """Best code reachable by any multiset of cfg.steps fusion actions."""
    start = time.monotonic()
    initial = combine([seed(name) for name in cfg.seeds])
    actions = all_actions(initial.node_count)
    a_count = len(actions)
    s = cfg.steps
    memo: Dict[Tuple[str, int, int], _Subtree] = {}

    def completions(remaining: int, min_idx: int) -> int:
        # Multisets of size `remaining` over actions with index >= min_idx.
        return math.comb(remaining - 1 + (a_count - min_idx), remaining)

    def walk(tn: TensorNetworkCode, remaining: int, min_idx: int,
             prefix: Tuple[int, ...]) -> _Subtree:
        key = percept_key(tn.code).key
        memo_key = (key, remaining, min_idx)
        hit = memo.get(memo_key)
        if hit is not None:
            return hit
        if remaining == 0:
            try:
                d = dist.distance(tn.code, budget_bits=budget_bits, cache_key=key)
            except dist.BudgetError as exc:
                raise PartialResultError(str(exc), prefix) from exc
            result: _Subtree = (d, 1, {key: tn.code}, 1, 0)
            memo[memo_key] = result
            return result
        allowed = set(allowed_actions(tn))
        best_d: Optional[int] = None
        best_count = 0
        best_codes: Dict[str, StabilizerCode] = {}
        completed = 0
        pruned = 0
        for idx in range(min_idx, a_count):
            action = actions[idx]
            child: Optional[TensorNetworkCode] = None
            if action in allowed:
                qa, qb = resolve_action(tn, action)
                fused = fuse(tn, qa, qb)
                if not isinstance(fused, FusionFailure):
                    child = fused
            if child is None:
                pruned += completions(remaining - 1, idx)
                continue
            sub_d, sub_count, sub_codes, sub_done, sub_pruned = walk(
                child, remaining - 1, idx, prefix + (idx,)
            )
            completed += sub_done
            pruned += sub_pruned
            if sub_d is None:
                continue
            if best_d is None or sub_d > best_d:
                best_d, best_count, best_codes = sub_d, sub_count, dict(sub_codes)
            elif sub_d == best_d:
                best_count += sub_count
                best_codes.update(sub_codes)
        result = (best_d, best_count, best_codes, completed, pruned)
        memo[memo_key] = result
        return result

    best_d, best_count, best_codes, completed, pruned = walk(initial, s, 0, ())
    total = sequence_count(initial.node_count, s)
    if best_d is None:
        raise RuntimeError("every fusion sequence failed; no final code reached")
    n_final = initial.code.n - 2 * s
    return BruteForceResult(
        best_distance=best_d,
        best_signature=(n_final, initial.code.k, best_d),
        optimal_sequence_count=best_count,
        total_sequences=total,
        ordered_sequence_count=a_count**s,
        distinct_best_keys=frozenset(best_codes),
        best_codes=best_codes,
        completed_sequences=completed,
        pruned_sequences=pruned,
        wall_time=time.monotonic() - start,
    )


def unrank_multiset(index: int, symbol_count: int, size: int) -> List[int]:
    """index-th size-`size` multiset over symbols 0..symbol_count-1, sorted."""
    if not 0 <= index < math.comb(size - 1 + symbol_count, size):
        raise ValueError("multiset index out of range")
    out: List[int] = []
    cur = 0
    remaining = size
    while remaining > 0:
        with_cur = math.comb(remaining - 1 + (symbol_count - cur - 1), remaining - 1)
        if index < with_cur:
            out.append(cur)
            remaining -= 1
        else:
            index -= with_cur
            cur += 1
    return out


def random_baseline(
    cfg: EnvironmentConfig,
    trials: int,
    rng: np.random.Generator,
    budget_bits: int = dist.DEFAULT_BUDGET_BITS,
    simulation: int = 0,
) -> List[dict]:
    """Uniform random sequence search, logging the RL step-record schema.

    Each trial draws one action multiset uniformly (the same distribution the
    analytic success probability assumes) and plays it in non-decreasing
    order; impossible draws terminate the trial like any failed fusion.
    """
    env = Environment(cfg, budget_bits=budget_bits)
    initial = combine([seed(name) for name in cfg.seeds])
    actions = all_actions(initial.node_count)
    total = sequence_count(initial.node_count, cfg.steps)
    records: List[dict] = []
    for trial in range(trials):
        outcome = env.reset()
        draw = unrank_multiset(int(rng.integers(total)), len(actions), cfg.steps)
        for step, idx in enumerate(draw, start=1):
            action = actions[idx]
            n, k, d = outcome.signature
            if env.done or action not in outcome.allowed:
                records.append(
                    {
                        "simulation": simulation,
                        "trial": trial,
                        "step": step,
                        "action_i": action.i,
                        "action_j": action.j,
                        "n": n,
                        "k": k,
                        "d": d,
                        "reward": -float(d),
                        "done": True,
                    }
                )
                break
            outcome = env.step(action)
            n, k, d = outcome.signature
            records.append(
                {
                    "simulation": simulation,
                    "trial": trial,
                    "step": step,
                    "action_i": action.i,
                    "action_j": action.j,
                    "n": n,
                    "k": k,
                    "d": d,
                    "reward": outcome.reward,
                    "done": outcome.done,
                }
            )
            if outcome.done and outcome.reward < 0:
                break
    return records
