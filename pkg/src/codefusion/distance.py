"""Exact code distance and operator-weight histograms by coset enumeration.

Each coset <stabilizers> * L is walked exactly once.  The walk order is a
reflected Gray code over the generator exponents, so consecutive elements
differ by a single generator multiplication.  For speed the low generators
are expanded into numpy arrays in blocks while the block offsets follow the
Gray sequence; a pure-Python walker is kept for small cases and testing.
"""

from __future__ import annotations

import csv
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Sequence, TextIO, Tuple

import numpy as np

from . import symplectic as sp
from .codes import StabilizerCode
from .symplectic import GeneratorMatrix, PauliString, commutes, contains, multiply, weight

DEFAULT_BUDGET_BITS = 30

# Shared cache: percept key -> distance.  Filled by distance(), reused by the
# environment and the search module.
_distance_cache: Dict[str, int] = {}


class UndefinedDistanceError(ValueError):
    """Distance requested for a k = 0 state."""


class BudgetError(RuntimeError):
    """Enumeration would exceed the configured bit budget."""


def clear_cache() -> None:
    _distance_cache.clear()


def cache_size() -> int:
    return len(_distance_cache)


def gray_flip_sequence(r: int) -> Iterator[int]:
    """Indices of the bit flipped at each step of a 2^r reflected Gray walk."""
    for step in range(1, 1 << r):
        yield (step & -step).bit_length() - 1


def coset_elements(
    generators: Sequence[PauliString], rep: PauliString
) -> Iterator[PauliString]:
    """Yield every element of <generators> * rep exactly once, Gray order."""
    cur = rep
    yield cur
    for j in gray_flip_sequence(len(generators)):
        cur = multiply(cur, generators[j])
        yield cur


def logical_class_representatives(code: StabilizerCode) -> List[PauliString]:
    """One representative per nontrivial logical class (4^k - 1 of them)."""
    reps = []
    for exps in itertools.product(range(4), repeat=code.k):
        if all(e == 0 for e in exps):
            continue
        p = sp.identity(code.n)
        for alpha, e in enumerate(exps):
            if e & 1:
                p = multiply(p, code.logical_x[alpha])
            if e & 2:
                p = multiply(p, code.logical_z[alpha])
        reps.append(p)
    return reps


_BLOCK_BITS = 20


def _expand_block(
    generators: Sequence[PauliString], m: int
) -> Tuple[np.ndarray, np.ndarray]:
    """All 2^m products of the first m generators, by repeated doubling."""
    xs = np.zeros(1, dtype=np.uint64)
    zs = np.zeros(1, dtype=np.uint64)
    for g in generators[:m]:
        xs = np.concatenate([xs, xs ^ np.uint64(g.x)])
        zs = np.concatenate([zs, zs ^ np.uint64(g.z)])
    return xs, zs


def _coset_scan(
    generators: Sequence[PauliString],
    reps: Sequence[PauliString],
    n: int,
    collect_histogram: bool,
) -> Tuple[int, Counter]:
    """Minimum weight and (optionally) weight histogram over all listed cosets."""
    r = len(generators)
    m = min(r, _BLOCK_BITS)
    xs, zs = _expand_block(generators, m)
    high = generators[m:]
    best = n + 1
    hist: Counter = Counter()
    offsets: List[Tuple[int, int]] = [(0, 0)]
    if high:
        ox = oz = 0
        offs = [(0, 0)]
        for j in gray_flip_sequence(len(high)):
            ox ^= high[j].x
            oz ^= high[j].z
            offs.append((ox, oz))
        offsets = offs
    for rep in reps:
        for ox, oz in offsets:
            bx = xs ^ np.uint64(ox ^ rep.x)
            bz = zs ^ np.uint64(oz ^ rep.z)
            w = np.bitwise_count(bx | bz)
            wmin = int(w.min())
            if wmin < best:
                best = wmin
            if collect_histogram:
                counts = np.bincount(w.astype(np.int64), minlength=n + 1)
                for wt, c in enumerate(counts):
                    if c:
                        hist[wt] += int(c)
    return best, hist


def _check_budget(code: StabilizerCode, budget_bits: int) -> None:
    # Work scales as (4^k - 1) * 2^(n-k) coset elements; n + k bounds the
    # exponent of the total.
    if code.n + code.k > budget_bits:
        raise BudgetError(
            f"enumeration needs ~2^{code.n + code.k} element visits, "
            f"budget is 2^{budget_bits}; raise the budget to proceed"
        )


def distance(
    code: StabilizerCode,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    cache_key: "str | None" = None,
) -> int:
    """Exact minimum Pauli weight over all nontrivial logical cosets."""
    if code.k == 0:
        raise UndefinedDistanceError("distance is undefined for k = 0 states")
    if cache_key is None:
        from .environment import percept_key  # local import, avoids a cycle

        cache_key = percept_key(code).key
    cached = _distance_cache.get(cache_key)
    if cached is not None:
        return cached
    _check_budget(code, budget_bits)
    reps = logical_class_representatives(code)
    best, _ = _coset_scan(code.stabilizers.rows, reps, code.n, False)
    _distance_cache[cache_key] = best
    return best


@dataclass(frozen=True)
class WeightHistogram:
    stabilizer_counts: Dict[int, int]
    logical_counts: Dict[int, int]

    def min_logical_weight(self) -> int:
        return min(w for w, c in self.logical_counts.items() if c > 0)


def weight_histograms(
    code: StabilizerCode, budget_bits: int = DEFAULT_BUDGET_BITS
) -> WeightHistogram:
    """Weight distribution of the stabilizer group and all nontrivial cosets."""
    if code.k == 0:
        raise UndefinedDistanceError("histograms are undefined for k = 0 states")
    _check_budget(code, budget_bits)
    _, stab_hist = _coset_scan(
        code.stabilizers.rows, [sp.identity(code.n)], code.n, True
    )
    reps = logical_class_representatives(code)
    _, log_hist = _coset_scan(code.stabilizers.rows, reps, code.n, True)
    return WeightHistogram(dict(stab_hist), dict(log_hist))


def write_histogram_csv(hist: WeightHistogram, stream: TextIO) -> None:
    writer = csv.writer(stream)
    writer.writerow(["class", "weight", "count"])
    for w in sorted(hist.stabilizer_counts):
        writer.writerow(["stabilizer", w, hist.stabilizer_counts[w]])
    for w in sorted(hist.logical_counts):
        writer.writerow(["logical", w, hist.logical_counts[w]])


def read_histogram_csv(stream: TextIO) -> WeightHistogram:
    reader = csv.DictReader(stream)
    stab: Dict[int, int] = {}
    log: Dict[int, int] = {}
    for row in reader:
        target = stab if row["class"] == "stabilizer" else log
        target[int(row["weight"])] = int(row["count"])
    return WeightHistogram(stab, log)


def distance_oracle(code: StabilizerCode) -> int:
    """Independent check: smallest-weight Pauli in the normalizer but not the group.

    Searches all Paulis by increasing weight; never shares code with the
    Gray-code path above.
    """
    if code.k == 0:
        raise UndefinedDistanceError("distance is undefined for k = 0 states")
    n = code.n
    stabs = code.stabilizers
    for w in range(1, n + 1):
        for positions in itertools.combinations(range(n), w):
            for letters in itertools.product("XYZ", repeat=w):
                chars = ["I"] * n
                for pos, letter in zip(positions, letters):
                    chars[pos] = letter
                p = PauliString.from_text("".join(chars))
                if all(commutes(p, s) for s in stabs.rows) and not contains(stabs, p):
                    return w
    raise RuntimeError("no logical operator found; code is invalid")
