"""Phaseless Pauli arithmetic over GF(2) in the symplectic (X|Z) picture.

Pauli operators are stored as a pair of integer bitmasks (x, z), one bit per
qubit: (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z.  Generator matrices use a single
2n-bit integer per row with interleaved columns (x_1, z_1, x_2, z_2, ...),
which fixes the column order used by row reduction and percept keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_LETTER = {v: k for k, v in _LETTER_TO_BITS.items()}

# Integer Pauli labels 0..3 = I, X, Y, Z mapped to (x, z) bit pairs.
_LABEL_TO_BITS = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}
_BITS_TO_LABEL = {v: k for k, v in _LABEL_TO_BITS.items()}


class DimensionError(ValueError):
    """Operands act on different qubit counts or use an invalid index."""


@dataclass(frozen=True)
class PauliString:
    """Phaseless n-qubit Pauli operator. Qubit i (1-based) is bit i-1."""

    n: int
    x: int
    z: int

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError(f"need at least one qubit, got n={self.n}")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise DimensionError("bit-vector wider than qubit count")

    @classmethod
    def from_text(cls, text: str) -> "PauliString":
        """Parse an I/X/Y/Z string, leftmost character = qubit 1."""
        x = z = 0
        for i, ch in enumerate(text):
            try:
                xb, zb = _LETTER_TO_BITS[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {ch!r}") from None
            x |= xb << i
            z |= zb << i
        return cls(len(text), x, z)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "PauliString":
        """Build from integer labels 0..3 = I, X, Y, Z, one per qubit."""
        x = z = 0
        for i, g in enumerate(labels):
            xb, zb = _LABEL_TO_BITS[g]
            x |= xb << i
            z |= zb << i
        return cls(len(labels), x, z)

    def to_text(self) -> str:
        return "".join(
            _BITS_TO_LETTER[(self.x >> i) & 1, (self.z >> i) & 1] for i in range(self.n)
        )

    def to_labels(self) -> Tuple[int, ...]:
        return tuple(
            _BITS_TO_LABEL[(self.x >> i) & 1, (self.z >> i) & 1] for i in range(self.n)
        )

    def letter(self, qubit: int) -> Tuple[int, int]:
        """(x, z) bit pair on a 1-based qubit index."""
        if not 1 <= qubit <= self.n:
            raise DimensionError(f"qubit {qubit} out of range for n={self.n}")
        i = qubit - 1
        return ((self.x >> i) & 1, (self.z >> i) & 1)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def __str__(self) -> str:
        return self.to_text()


def identity(n: int) -> PauliString:
    return PauliString(n, 0, 0)


def _check_same_n(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise DimensionError(f"qubit counts differ: {p.n} vs {q.n}")


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic product sum_i (p.x_i q.z_i + p.z_i q.x_i) is even."""
    _check_same_n(p, q)
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) % 2 == 0


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Phaseless group product: componentwise XOR of x and z bit-vectors."""
    _check_same_n(p, q)
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z)


def weight(p: PauliString) -> int:
    """Number of qubits where the operator acts non-trivially."""
    return (p.x | p.z).bit_count()


# ---------------------------------------------------------------------------
# Interleaved symplectic row vectors: bit 2i = x_{i+1}, bit 2i+1 = z_{i+1}.


def to_symplectic_row(p: PauliString) -> int:
    row = 0
    for i in range(p.n):
        row |= ((p.x >> i) & 1) << (2 * i)
        row |= ((p.z >> i) & 1) << (2 * i + 1)
    return row


def from_symplectic_row(n: int, row: int) -> PauliString:
    x = z = 0
    for i in range(n):
        x |= ((row >> (2 * i)) & 1) << i
        z |= ((row >> (2 * i + 1)) & 1) << i
    return PauliString(n, x, z)


@dataclass(frozen=True)
class GeneratorMatrix:
    """Ordered list of equal-length Pauli rows; the span is a phaseless group."""

    n: int
    rows: Tuple[PauliString, ...]

    def __post_init__(self):
        for r in self.rows:
            if r.n != self.n:
                raise DimensionError(
                    f"row acts on {r.n} qubits, matrix expects {self.n}"
                )

    @classmethod
    def from_texts(cls, texts: Iterable[str]) -> "GeneratorMatrix":
        rows = tuple(PauliString.from_text(t) for t in texts)
        if not rows:
            raise ValueError("cannot infer qubit count from an empty matrix")
        return cls(rows[0].n, rows)

    def to_texts(self) -> List[str]:
        return [r.to_text() for r in self.rows]

    def symplectic_rows(self) -> List[int]:
        return [to_symplectic_row(r) for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)


def _rref_rows(rows: List[int], n_cols: int) -> List[int]:
    """Reduced row echelon form of integer bit-rows, LSB = first column."""
    work = [r for r in rows if r]
    out: List[int] = []
    for col in range(n_cols):
        bit = 1 << col
        pivot = None
        for idx, r in enumerate(work):
            if r & bit:
                pivot = idx
                break
        if pivot is None:
            continue
        prow = work.pop(pivot)
        work = [r ^ prow if r & bit else r for r in work]
        out = [r ^ prow if r & bit else r for r in out]
        out.append(prow)
        work = [r for r in work if r]
    return out


def rref(m: GeneratorMatrix) -> GeneratorMatrix:
    """Unique reduced echelon form over GF(2), interleaved column order."""
    reduced = _rref_rows(m.symplectic_rows(), 2 * m.n)
    return GeneratorMatrix(m.n, tuple(from_symplectic_row(m.n, r) for r in reduced))


def rank(m: GeneratorMatrix) -> int:
    return len(_rref_rows(m.symplectic_rows(), 2 * m.n))


def _reduce_against(row: int, reduced_rows: Sequence[int]) -> int:
    """XOR away pivots of an rref basis; result 0 iff row is in the span."""
    for r in reduced_rows:
        pivot = r & (-r)
        if row & pivot:
            row ^= r
    return row


def contains(m: GeneratorMatrix, p: PauliString) -> bool:
    """True iff p is a GF(2) combination of the rows of m."""
    if p.n != m.n:
        raise DimensionError(f"qubit counts differ: {p.n} vs {m.n}")
    reduced = _rref_rows(m.symplectic_rows(), 2 * m.n)
    return _reduce_against(to_symplectic_row(p), reduced) == 0


def coset_reduce(p: PauliString, stabilizer_rref: GeneratorMatrix) -> PauliString:
    """Canonical representative of the coset <stabilizers> * p.

    stabilizer_rref must already be in rref; reduction against its pivots
    picks one fixed element per coset.
    """
    row = _reduce_against(
        to_symplectic_row(p), stabilizer_rref.symplectic_rows()
    )
    return from_symplectic_row(p.n, row)


def _nullspace(rows: List[int], n_cols: int) -> List[int]:
    """Basis of {v : for every row r, parity(r & v) == 0}, vectors as ints."""
    reduced = _rref_rows(rows, n_cols)
    pivots = []
    for r in reduced:
        pivots.append((r & (-r)).bit_length() - 1)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for r, pc in zip(reduced, pivots):
            if (r >> free) & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


def constrained_subgroup(m: GeneratorMatrix, a: int, b: int) -> GeneratorMatrix:
    """Generators of the subgroup of <m> acting with equal letters on qubits a, b.

    Solved in exponent space: the two functionals x_a + x_b and z_a + z_b are
    linear in the generator exponents, so the subgroup is the image of their
    common nullspace.  Qubit indices are 1-based.
    """
    if a == b or not (1 <= a <= m.n) or not (1 <= b <= m.n):
        raise DimensionError(f"invalid qubit pair ({a}, {b}) for n={m.n}")
    r = len(m.rows)
    if r == 0:
        return GeneratorMatrix(m.n, ())
    fx = fz = 0
    for j, row in enumerate(m.rows):
        xa, za = row.letter(a)
        xb, zb = row.letter(b)
        if xa ^ xb:
            fx |= 1 << j
        if za ^ zb:
            fz |= 1 << j
    combos = _nullspace([fx, fz], r)
    out = []
    for c in combos:
        g = identity(m.n)
        for j in range(r):
            if (c >> j) & 1:
                g = multiply(g, m.rows[j])
        out.append(g)
    return GeneratorMatrix(m.n, tuple(out))


def solve_combination(
    m: GeneratorMatrix, targets: Sequence[Tuple[int, int]]
) -> "int | None":
    """Find exponents c with parity(functional_i & c) == target_i for each i.

    Each entry of targets is (functional_mask, wanted_parity) where the mask
    selects generator indices.  Returns one solution as an exponent bitmask,
    or None when the affine system is inconsistent.
    """
    r = len(m.rows)
    # Gaussian elimination on the augmented system, rows = functionals.
    eqs = [(mask, par) for mask, par in targets]
    solution = 0
    reduced: List[Tuple[int, int]] = []
    for mask, par in eqs:
        for rm, rp in reduced:
            pivot = rm & (-rm)
            if mask & pivot:
                mask ^= rm
                par ^= rp
        if mask == 0:
            if par:
                return None
            continue
        pivot = mask & (-mask)
        reduced = [
            (om ^ mask, op ^ par) if om & pivot else (om, op) for om, op in reduced
        ]
        reduced.append((mask, par))
    for mask, par in reduced:
        if par:
            solution |= mask & (-mask)
    # Verify (cheap, r is small) and guard against bookkeeping slips.
    for mask, par in targets:
        if (mask & solution).bit_count() % 2 != par:
            return None
    return solution


def combination(m: GeneratorMatrix, exponents: int) -> PauliString:
    """Product of the rows selected by an exponent bitmask."""
    g = identity(m.n)
    for j, row in enumerate(m.rows):
        if (exponents >> j) & 1:
            g = multiply(g, row)
    return g
