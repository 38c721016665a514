"""Stabilizer codes: seed catalog, logical-operator completion, verification.

A code is stored as its stabilizer generators plus one representative per
logical X/Z class.  Representatives are canonicalized by reducing against the
stabilizer rref so that equal codes serialize identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Sequence, Tuple

from . import symplectic as sp
from .symplectic import (
    DimensionError,
    GeneratorMatrix,
    PauliString,
    commutes,
    contains,
    coset_reduce,
    multiply,
    rank,
    rref,
)


class CatalogError(KeyError):
    """Unknown seed-code name."""


class InvalidStabilizersError(ValueError):
    """Input generators do not form a commuting set."""


@dataclass(frozen=True)
class StabilizerCode:
    n: int
    k: int
    stabilizers: GeneratorMatrix
    logical_x: Tuple[PauliString, ...]
    logical_z: Tuple[PauliString, ...]

    def signature(self) -> Tuple[int, int]:
        return (self.n, self.k)


@dataclass(frozen=True)
class PureErrorSet:
    errors: Tuple[PauliString, ...]


@dataclass
class VerifyReport:
    checks: Dict[str, bool] = field(default_factory=dict)

    def record(self, name: str, ok: bool) -> None:
        self.checks[name] = bool(ok)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]


def _canonical_logicals(
    stabilizers: GeneratorMatrix,
    logical_x: Sequence[PauliString],
    logical_z: Sequence[PauliString],
) -> Tuple[Tuple[PauliString, ...], Tuple[PauliString, ...]]:
    reduced = rref(stabilizers)
    lx = tuple(coset_reduce(p, reduced) for p in logical_x)
    lz = tuple(coset_reduce(p, reduced) for p in logical_z)
    return lx, lz


def make_code(
    n: int,
    k: int,
    stabilizers: GeneratorMatrix,
    logical_x: Sequence[PauliString],
    logical_z: Sequence[PauliString],
) -> StabilizerCode:
    """Construct a code with canonicalized logical representatives."""
    lx, lz = _canonical_logicals(stabilizers, logical_x, logical_z)
    return StabilizerCode(n, k, stabilizers, lx, lz)


def complete_logicals(
    stabilizers: GeneratorMatrix,
) -> Tuple[Tuple[PauliString, ...], Tuple[PauliString, ...], PureErrorSet]:
    """Extend commuting stabilizers to a full symplectic basis of the Pauli group.

    Symplectic Gram-Schmidt: starting from the single-qubit X/Z basis, pair up
    partners for each stabilizer generator (those become the pure errors) and
    sort the leftover anticommuting pairs into logical X/Z pairs.  Output is
    deterministic for a fixed input row order.
    """
    n = stabilizers.n
    for i, p in enumerate(stabilizers.rows):
        for q in stabilizers.rows[i + 1 :]:
            if not commutes(p, q):
                raise InvalidStabilizersError("stabilizer generators must commute")
    reduced = rref(stabilizers)
    r = len(reduced)
    if r != len(stabilizers.rows):
        raise InvalidStabilizersError("stabilizer generators must be independent")

    # Pool of candidate operators spanning the full Pauli group.
    pool: List[PauliString] = list(reduced.rows)
    for i in range(1, n + 1):
        pool.append(PauliString(n, 1 << (i - 1), 0))
        pool.append(PauliString(n, 0, 1 << (i - 1)))

    pure_errors: List[PauliString] = []
    logical_pairs: List[Tuple[PauliString, PauliString]] = []
    basis_done: List[Tuple[PauliString, PauliString]] = []

    def _orthogonalize(p: PauliString) -> PauliString:
        # Make p commute with every finished symplectic pair.
        for a, b in basis_done:
            if not commutes(p, b):
                p = multiply(p, a)
            if not commutes(p, a):
                p = multiply(p, b)
        return p

    # First pair off each stabilizer generator with an anticommuting partner;
    # the partner is its pure error.
    remaining = pool[r:]
    for s in reduced.rows:
        s = _orthogonalize(s)
        partner = None
        for idx, cand in enumerate(remaining):
            cand_o = _orthogonalize(cand)
            if cand_o.is_identity():
                continue
            if not commutes(s, cand_o):
                partner = cand_o
                remaining = remaining[:idx] + remaining[idx + 1 :]
                break
        if partner is None:
            raise InvalidStabilizersError("could not complete symplectic basis")
        basis_done.append((s, partner))
        pure_errors.append(partner)

    # Remaining degrees of freedom become logical pairs.
    k = n - r
    queue = list(remaining)
    while len(logical_pairs) < k:
        first = None
        while queue:
            cand = _orthogonalize(queue.pop(0))
            if not cand.is_identity():
                first = cand
                break
        if first is None:
            raise InvalidStabilizersError("could not complete symplectic basis")
        partner = None
        for idx, cand in enumerate(queue):
            cand_o = _orthogonalize(cand)
            if cand_o.is_identity():
                continue
            if not commutes(first, cand_o):
                partner = cand_o
                queue = queue[:idx] + queue[idx + 1 :]
                break
        if partner is None:
            raise InvalidStabilizersError("could not complete symplectic basis")
        basis_done.append((first, partner))
        logical_pairs.append((first, partner))

    lx = tuple(p for p, _ in logical_pairs)
    lz = tuple(q for _, q in logical_pairs)
    lx, lz = _canonical_logicals(stabilizers, lx, lz)
    return lx, lz, PureErrorSet(tuple(pure_errors))


def verify(code: StabilizerCode) -> VerifyReport:
    """Check every structural invariant; failures are reported, never raised."""
    report = VerifyReport()
    stabs = code.stabilizers
    report.record("row_length", all(p.n == code.n for p in stabs.rows))
    report.record("rank", rank(stabs) == code.n - code.k)
    report.record("generator_count", len(stabs.rows) == code.n - code.k)
    report.record(
        "stabilizers_commute",
        all(
            commutes(p, q)
            for i, p in enumerate(stabs.rows)
            for q in stabs.rows[i + 1 :]
        ),
    )
    logicals = list(code.logical_x) + list(code.logical_z)
    report.record("logical_count", len(code.logical_x) == code.k == len(code.logical_z))
    report.record(
        "logicals_commute_with_stabilizers",
        all(commutes(l, s) for l in logicals for s in stabs.rows),
    )
    report.record(
        "logical_pairing",
        all(
            commutes(code.logical_x[a], code.logical_z[b]) == (a != b)
            for a in range(code.k)
            for b in range(code.k)
        ),
    )
    report.record(
        "logical_x_abelian",
        all(
            commutes(p, q)
            for i, p in enumerate(code.logical_x)
            for q in code.logical_x[i + 1 :]
        ),
    )
    report.record(
        "logical_z_abelian",
        all(
            commutes(p, q)
            for i, p in enumerate(code.logical_z)
            for q in code.logical_z[i + 1 :]
        ),
    )
    report.record(
        "logicals_outside_stabilizer_group",
        all(not contains(stabs, l) for l in logicals),
    )
    return report


# ---------------------------------------------------------------------------
# Seed catalog.

_FIVE_QUBIT_STABILIZERS = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
_SIX_QUBIT_STATE_STABILIZERS = [
    "XZZXII",
    "IXZZXI",
    "XIXZZI",
    "ZXIXZI",
    "XXXXXX",
    "ZZZZZZ",
]

SEED_NAMES = ("five_qubit", "six_qubit_state", "four_two_two", "ten_one_four")


def _load_data_text(name: str) -> str:
    return resources.files("codefusion.data").joinpath(name).read_text()


def seed(name: str) -> StabilizerCode:
    """Fixed catalog of seed codes used to build tensor networks."""
    if name == "five_qubit":
        stabs = GeneratorMatrix.from_texts(_FIVE_QUBIT_STABILIZERS)
        return make_code(
            5,
            1,
            stabs,
            [PauliString.from_text("XXXXX")],
            [PauliString.from_text("ZZZZZ")],
        )
    if name == "six_qubit_state":
        stabs = GeneratorMatrix.from_texts(_SIX_QUBIT_STATE_STABILIZERS)
        return StabilizerCode(6, 0, stabs, (), ())
    if name == "four_two_two":
        stabs = GeneratorMatrix.from_texts(["XXXX", "ZZZZ"])
        lx, lz, _ = complete_logicals(stabs)
        return make_code(4, 2, stabs, lx, lz)
    if name == "ten_one_four":
        code = parse_code(_load_data_text("ten_one_four.code"))
        return code
    raise CatalogError(f"unknown seed code {name!r}; known: {', '.join(SEED_NAMES)}")


# ---------------------------------------------------------------------------
# Code file format: line 1 "n k"; n-k stabilizer rows; "---"; k logical-X
# rows; k logical-Z rows.  Comment lines starting with '#' are skipped.


def format_code(code: StabilizerCode) -> str:
    lines = [f"{code.n} {code.k}"]
    lines += code.stabilizers.to_texts()
    lines.append("---")
    lines += [p.to_text() for p in code.logical_x]
    lines += [p.to_text() for p in code.logical_z]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> StabilizerCode:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty code file")
    try:
        n_str, k_str = lines[0].split()
        n, k = int(n_str), int(k_str)
    except ValueError:
        raise ValueError(f"bad header line {lines[0]!r}, expected 'n k'") from None
    stab_lines = lines[1 : 1 + (n - k)]
    if len(stab_lines) != n - k:
        raise ValueError("wrong number of stabilizer rows")
    rest = lines[1 + (n - k) :]
    if not rest or rest[0] != "---":
        raise ValueError("missing '---' separator")
    logical_lines = rest[1:]
    if len(logical_lines) != 2 * k:
        raise ValueError("wrong number of logical rows")
    if stab_lines:
        stabs = GeneratorMatrix.from_texts(stab_lines)
    else:
        stabs = GeneratorMatrix(n, ())
    lx = tuple(PauliString.from_text(t) for t in logical_lines[:k])
    lz = tuple(PauliString.from_text(t) for t in logical_lines[k:])
    for p in lx + lz:
        if p.n != n:
            raise DimensionError("logical row length does not match n")
    return StabilizerCode(n, k, stabs, lx, lz)
