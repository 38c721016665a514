"""The fusion game: percepts, rewards, termination, and the step interface."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from . import distance as dist
from .codes import StabilizerCode, seed
from .symplectic import coset_reduce, rref, to_symplectic_row
from .tncode import (
    Action,
    FusionFailure,
    TensorNetworkCode,
    allowed_actions,
    combine,
    fuse,
    resolve_action,
)


class TableMissError(LookupError):
    """A best-distance lookup fell outside the shipped tables."""


@dataclass(frozen=True)
class PerceptKey:
    key: str


def percept_key(code: StabilizerCode) -> PerceptKey:
    """Canonical, presentation-independent key for a code.

    Stabilizers are put in rref; logical representatives are reduced to the
    canonical element of their coset.  Two codes with the same stabilizer
    group and logical cosets therefore serialize identically.
    """
    reduced = rref(code.stabilizers)
    parts = [f"{code.n}.{code.k}"]
    parts.append(",".join(f"{r:x}" for r in reduced.symplectic_rows()))
    logicals = [coset_reduce(p, reduced) for p in code.logical_x] + [
        coset_reduce(p, reduced) for p in code.logical_z
    ]
    parts.append(",".join(f"{to_symplectic_row(p):x}" for p in logicals))
    return PerceptKey("|".join(parts))


class CodeTables:
    """Best known distance per (n, k), loaded from the shipped TSV."""

    def __init__(self, entries: Dict[Tuple[int, int], int]):
        self.best = entries

    @classmethod
    def from_tsv(cls, text: str) -> "CodeTables":
        entries: Dict[Tuple[int, int], int] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            n_s, k_s, d_s, _tag = line.split("\t")
            entries[(int(n_s), int(k_s))] = int(d_s)
        return cls(entries)

    @classmethod
    def bundled(cls) -> "CodeTables":
        text = resources.files("codefusion.data").joinpath(
            "best_distances.tsv"
        ).read_text()
        return cls.from_tsv(text)

    def best_known_distance(self, n: int, k: int) -> int:
        try:
            return self.best[(n, k)]
        except KeyError:
            raise TableMissError(
                f"no best-distance entry for (n={n}, k={k}); "
                "the tables must cover every state the run can reach"
            ) from None


_bundled_tables: Optional[CodeTables] = None


def best_known_distance(n: int, k: int) -> int:
    global _bundled_tables
    if _bundled_tables is None:
        _bundled_tables = CodeTables.bundled()
    return _bundled_tables.best_known_distance(n, k)


@dataclass(frozen=True)
class EnvironmentConfig:
    seeds: Tuple[str, ...]
    steps: int
    rng_seed: int = 0

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("need at least one step per trial")


@dataclass(frozen=True)
class StepOutcome:
    percept: PerceptKey
    reward: float
    done: bool
    allowed: Tuple[Action, ...]
    signature: Tuple[int, int, int]


class Environment:
    """One mutable fusion trajectory; reset() starts a fresh trial."""

    def __init__(
        self,
        cfg: EnvironmentConfig,
        tables: Optional[CodeTables] = None,
        budget_bits: int = dist.DEFAULT_BUDGET_BITS,
    ):
        self.cfg = cfg
        self.tables = tables if tables is not None else CodeTables.bundled()
        self.budget_bits = budget_bits
        self.initial_network = combine([seed(name) for name in cfg.seeds])
        self.state: TensorNetworkCode = self.initial_network
        self.step_index = 0
        self.done = False
        self._d = 0

    def _outcome(self, reward: float) -> StepOutcome:
        code = self.state.code
        allowed = tuple(allowed_actions(self.state))
        if not allowed:
            self.done = True
        return StepOutcome(
            percept=percept_key(code),
            reward=reward,
            done=self.done,
            allowed=allowed,
            signature=(code.n, code.k, self._d),
        )

    def reset(self) -> StepOutcome:
        self.state = self.initial_network
        self.step_index = 0
        self.done = False
        self._d = self._distance(self.state.code)
        return self._outcome(0.0)

    def _distance(self, code: StabilizerCode) -> int:
        return dist.distance(
            code, budget_bits=self.budget_bits, cache_key=percept_key(code).key
        )

    def step(self, a: Action) -> StepOutcome:
        if self.done:
            raise RuntimeError("environment is terminated; call reset()")
        if a not in allowed_actions(self.state):
            raise ValueError(f"action {a} is not allowed in the current state")
        qa, qb = resolve_action(self.state, a)
        result = fuse(self.state, qa, qb)
        if isinstance(result, FusionFailure):
            self.done = True
            return self._outcome(-float(self._d))
        d_old = self._d
        self.state = result
        self.step_index += 1
        d_new = self._distance(result.code)
        delta = d_new - d_old
        if delta < 0 and d_new == self.tables.best_known_distance(
            result.code.n, result.code.k
        ):
            reward = 1.0
        else:
            reward = float(delta)
        self._d = d_new
        if self.step_index >= self.cfg.steps:
            self.done = True
        return self._outcome(reward)


STEP_LOG_COLUMNS = [
    "simulation",
    "trial",
    "step",
    "action_i",
    "action_j",
    "n",
    "k",
    "d",
    "reward",
    "done",
]
