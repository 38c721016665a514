"""Shared naive oracles: tiny, obviously-correct reference implementations.

These deliberately avoid the library's optimized paths (bit packing, Gray
walks, rref shortcuts) so that tests compare two independent routes.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Tuple

import pytest

SINGLE_QUBIT_PRODUCT = {
    ("I", "I"): "I", ("I", "X"): "X", ("I", "Y"): "Y", ("I", "Z"): "Z",
    ("X", "I"): "X", ("X", "X"): "I", ("X", "Y"): "Z", ("X", "Z"): "Y",
    ("Y", "I"): "Y", ("Y", "X"): "Z", ("Y", "Y"): "I", ("Y", "Z"): "X",
    ("Z", "I"): "Z", ("Z", "X"): "Y", ("Z", "Y"): "X", ("Z", "Z"): "I",
}

ANTICOMMUTING = {
    frozenset(("X", "Y")), frozenset(("X", "Z")), frozenset(("Y", "Z")),
}


def naive_multiply(a: str, b: str) -> str:
    return "".join(SINGLE_QUBIT_PRODUCT[pair] for pair in zip(a, b))


def naive_commutes(a: str, b: str) -> bool:
    flips = sum(1 for p, q in zip(a, b) if frozenset((p, q)) in ANTICOMMUTING)
    return flips % 2 == 0


def naive_weight(a: str) -> int:
    return sum(1 for ch in a if ch != "I")


def naive_group(generators: List[str]) -> List[str]:
    """All products of generator subsets (the full group when independent)."""
    n = len(generators[0]) if generators else 0
    out = []
    for bits in itertools.product((0, 1), repeat=len(generators)):
        cur = "I" * n
        for bit, gen in zip(bits, generators):
            if bit:
                cur = naive_multiply(cur, gen)
        out.append(cur)
    return out


def naive_coset(generators: List[str], rep: str) -> List[str]:
    return [naive_multiply(g, rep) for g in naive_group(generators)]


def naive_histogram(elements: Iterable[str]) -> Dict[int, int]:
    hist: Dict[int, int] = {}
    for el in elements:
        w = naive_weight(el)
        hist[w] = hist.get(w, 0) + 1
    return hist
