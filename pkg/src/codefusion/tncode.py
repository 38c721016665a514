"""Tensor-network codes: node bookkeeping, leg fusion, and the action set.

Fusing two legs (qubits) is done on stabilizer data: the surviving stabilizer
group is the letter-matching subgroup restricted to the remaining qubits, and
each logical class is re-represented inside its coset so that it too matches
on the fused pair.  A fusion is invalid when that is impossible (a logical
degree of freedom would be measured) or when the restricted group has the
wrong rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

from .codes import StabilizerCode, make_code, verify
from .symplectic import (
    DimensionError,
    GeneratorMatrix,
    PauliString,
    combination,
    constrained_subgroup,
    multiply,
    rank,
    rref,
    solve_combination,
)


@dataclass(frozen=True, order=True)
class Action:
    """Unordered node pair; stored with i <= j."""

    i: int
    j: int

    def __post_init__(self):
        if not 0 <= self.i <= self.j:
            raise ValueError(f"action nodes must satisfy 0 <= i <= j, got {self}")


@dataclass(frozen=True)
class FusionFailure:
    reason: str  # "measures_logical" or "rank_deficient"


@dataclass(frozen=True)
class TensorNetworkCode:
    code: StabilizerCode
    node_count: int
    node_of: Tuple[int, ...]  # node id per live qubit, index 0 = qubit 1

    def __post_init__(self):
        if len(self.node_of) != self.code.n:
            raise DimensionError("node assignment must cover every live qubit")
        if any(not 0 <= v < self.node_count for v in self.node_of):
            raise ValueError("node id out of range")

    def live_qubits(self, node: int) -> List[int]:
        """1-based qubit indices currently attached to a node."""
        return [q + 1 for q, nd in enumerate(self.node_of) if nd == node]


def all_actions(node_count: int) -> List[Action]:
    """Canonical action ordering used for agent matrices."""
    return [Action(i, j) for i in range(node_count) for j in range(i, node_count)]


def combine(seeds: Sequence[StabilizerCode]) -> TensorNetworkCode:
    """Disjoint tensor product of seed codes, one node per seed."""
    if not seeds:
        raise ValueError("need at least one seed code")
    n = sum(c.n for c in seeds)
    k = sum(c.k for c in seeds)
    stab_rows: List[PauliString] = []
    lx: List[PauliString] = []
    lz: List[PauliString] = []
    node_of: List[int] = []
    offset = 0
    for node, c in enumerate(seeds):
        def pad(p: PauliString) -> PauliString:
            return PauliString(n, p.x << offset, p.z << offset)

        stab_rows += [pad(p) for p in c.stabilizers.rows]
        lx += [pad(p) for p in c.logical_x]
        lz += [pad(p) for p in c.logical_z]
        node_of += [node] * c.n
        offset += c.n
    code = make_code(n, k, GeneratorMatrix(n, tuple(stab_rows)), lx, lz)
    return TensorNetworkCode(code, len(seeds), tuple(node_of))


def allowed_actions(tn: TensorNetworkCode) -> List[Action]:
    """Node pairs that are structurally fusable right now."""
    live = [0] * tn.node_count
    for nd in tn.node_of:
        live[nd] += 1
    out = []
    for a in all_actions(tn.node_count):
        if a.i == a.j:
            if live[a.i] >= 2:
                out.append(a)
        elif live[a.i] >= 1 and live[a.j] >= 1:
            out.append(a)
    return out


def resolve_action(tn: TensorNetworkCode, a: Action) -> Tuple[int, int]:
    """Deterministic leg choice: lowest live qubit on each node (distinct)."""
    if a not in allowed_actions(tn):
        raise ValueError(f"action {a} is not allowed in this state")
    qa = tn.live_qubits(a.i)[0]
    if a.i == a.j:
        qb = tn.live_qubits(a.j)[1]
    else:
        qb = tn.live_qubits(a.j)[0]
    return qa, qb


def _restrict(p: PauliString, qa: int, qb: int) -> PauliString:
    """Drop qubits qa and qb (1-based), keeping the order of the rest."""
    x = z = 0
    pos = 0
    for q in range(1, p.n + 1):
        if q == qa or q == qb:
            continue
        xb, zb = p.letter(q)
        x |= xb << pos
        z |= zb << pos
        pos += 1
    return PauliString(p.n - 2, x, z)


def fuse(
    tn: TensorNetworkCode, qa: int, qb: int
) -> Union[TensorNetworkCode, FusionFailure]:
    """Contract two legs; returns the smaller network or a FusionFailure."""
    code = tn.code
    n, k = code.n, code.k
    if qa == qb:
        raise ValueError("cannot fuse a qubit with itself")
    if not (1 <= qa <= n) or not (1 <= qb <= n):
        raise DimensionError(f"qubit pair ({qa}, {qb}) out of range for n={n}")
    stabs = rref(code.stabilizers)

    # Letter-matching functionals over the generator exponents.
    fx = fz = 0
    for j, row in enumerate(stabs.rows):
        xa, za = row.letter(qa)
        xb, zb = row.letter(qb)
        if xa ^ xb:
            fx |= 1 << j
        if za ^ zb:
            fz |= 1 << j

    # Move each logical representative inside its coset onto a matching one.
    new_lx: List[PauliString] = []
    new_lz: List[PauliString] = []
    for source, dest in ((code.logical_x, new_lx), (code.logical_z, new_lz)):
        for rep in source:
            ra_x, ra_z = rep.letter(qa)
            rb_x, rb_z = rep.letter(qb)
            exps = solve_combination(
                stabs, [(fx, ra_x ^ rb_x), (fz, ra_z ^ rb_z)]
            )
            if exps is None:
                return FusionFailure("measures_logical")
            dest.append(_restrict(multiply(rep, combination(stabs, exps)), qa, qb))

    sub = constrained_subgroup(stabs, qa, qb)
    new_rows = tuple(_restrict(p, qa, qb) for p in sub.rows)
    new_stabs = rref(GeneratorMatrix(n - 2, new_rows))
    if len(new_stabs.rows) != (n - 2) - k:
        return FusionFailure("rank_deficient")

    new_code = make_code(n - 2, k, new_stabs, new_lx, new_lz)
    report = verify(new_code)
    if not report.ok:
        # The rank and coset solves above should guarantee this never fires.
        raise RuntimeError(f"fused code failed verification: {report.failures()}")
    node_of = tuple(
        nd for q, nd in enumerate(tn.node_of) if q + 1 not in (qa, qb)
    )
    return TensorNetworkCode(new_code, tn.node_count, node_of)


# ---------------------------------------------------------------------------
# Network file format: code file format plus a "nodes:" section listing the
# node id of each qubit, one integer per line.


def format_network(tn: TensorNetworkCode) -> str:
    from .codes import format_code

    lines = [format_code(tn.code).rstrip("\n"), "nodes:"]
    lines += [str(nd) for nd in tn.node_of]
    return "\n".join(lines) + "\n"


def parse_network(text: str) -> TensorNetworkCode:
    from .codes import parse_code

    head, _, tail = text.partition("nodes:")
    code = parse_code(head)
    node_of = tuple(int(ln) for ln in tail.split() if ln.strip())
    return TensorNetworkCode(code, max(node_of) + 1, node_of)
