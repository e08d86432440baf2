"""Generalized Bacon-Shor codes from binary matrices, and the two-local
[[6k,2k,2]] chain family used throughout the package.

A binary matrix A defines a subsystem code with one qubit per nonzero cell,
XX gauge terms between cells sharing a row and ZZ terms between cells sharing
a column.  Code parameters are [[|A|, rank(A), min(d_row, d_col)]] where the
distances are minimum weights over the row and column spaces.

The chain family is the (2k+1) x (2k+1) instance whose cells split into
diagonal (B), first-column (R) and last-row (L) qubits; its gauge group is
generated by the two-local set {X_B X_R, X_L X_L', Z_B Z_L, Z_R Z_R'}.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import as_gf2, gf2_rank, min_weight_in_span
from .codes import SubsystemCode
from .paulis import PauliOp

__all__ = [
    "MatrixLayout",
    "chain_matrix",
    "code_from_matrix",
    "code_params",
    "chain_code",
    "chain_logicals",
    "chain_stabilizers",
    "chain_gauge_pairs",
]


@dataclass(frozen=True)
class MatrixLayout:
    """Row-major qubit numbering of the nonzero cells of a binary matrix."""

    matrix: np.ndarray
    qubit_of_cell: dict[tuple[int, int], int]
    labels: dict[int, str]

    @property
    def n(self) -> int:
        return len(self.qubit_of_cell)


def _layout(a: np.ndarray, labels: dict[int, str] | None = None) -> MatrixLayout:
    a = as_gf2(a)
    cells = {}
    for r in range(a.shape[0]):
        for c in range(a.shape[1]):
            if a[r, c]:
                cells[(r, c)] = len(cells)
    return MatrixLayout(a, cells, labels or {})


def chain_matrix(k: int) -> np.ndarray:
    """The (2k+1) x (2k+1) defining matrix of the [[6k,2k,2]] chain family.

    Rows 0..2k-1 have ones in column 0 and column r+1; the last row has ones
    everywhere except column 0.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    m = 2 * k + 1
    a = np.zeros((m, m), dtype=np.uint8)
    for r in range(2 * k):
        a[r, 0] = 1
        a[r, r + 1] = 1
    a[2 * k, 1:] = 1
    return a


def chain_layout(k: int) -> MatrixLayout:
    """Chain-family layout with B/L/R qubit roles attached.

    B_i sits on cell (i-1, i), R_i on cell (i-1, 0) and L_i on cell (2k, i),
    for 1 <= i <= 2k.
    """
    lay = _layout(chain_matrix(k))
    labels = {}
    for i in range(1, 2 * k + 1):
        labels[lay.qubit_of_cell[(i - 1, 0)]] = f"R{i}"
        labels[lay.qubit_of_cell[(i - 1, i)]] = f"B{i}"
        labels[lay.qubit_of_cell[(2 * k, i)]] = f"L{i}"
    return MatrixLayout(lay.matrix, lay.qubit_of_cell, labels)


def code_from_matrix(a: np.ndarray, labels: dict[int, str] | None = None) -> SubsystemCode:
    """Subsystem code of a binary matrix: XX between consecutive nonzero cells
    of each row, ZZ between consecutive nonzero cells of each column.

    Adjacent pairs generate the same group as all same-row/column pairs.
    """
    lay = _layout(a, labels)
    if lay.n == 0:
        raise ValueError("matrix has no nonzero cells")
    rows, cols = lay.matrix.shape
    n = lay.n
    gens: list[PauliOp] = []
    for r in range(rows):
        line = [lay.qubit_of_cell[(r, c)] for c in range(cols) if lay.matrix[r, c]]
        for a_, b_ in zip(line, line[1:]):
            gens.append(PauliOp.hermitian(n, (1 << a_) | (1 << b_), 0))
    for c in range(cols):
        line = [lay.qubit_of_cell[(r, c)] for r in range(rows) if lay.matrix[r, c]]
        for a_, b_ in zip(line, line[1:]):
            gens.append(PauliOp.hermitian(n, 0, (1 << a_) | (1 << b_)))
    return SubsystemCode(n, tuple(gens), lay.labels)


def code_params(a: np.ndarray) -> tuple[int, int, int]:
    """[[n, k, d]] of the matrix code: n = |A|, k = rank(A),
    d = min weight over the nonzero row-space and column-space vectors."""
    a = as_gf2(a)
    n = int(a.sum())
    if n == 0:
        raise ValueError("matrix has no nonzero cells")
    k = gf2_rank(a)
    d = min(min_weight_in_span(a), min_weight_in_span(a.T))
    return n, k, d


def chain_code(k: int) -> SubsystemCode:
    """The [[6k,2k,2]] code with labeled qubits and 8k-2 two-local generators."""
    lay = chain_layout(k)
    return code_from_matrix(lay.matrix, lay.labels)


def _op(code: SubsystemCode, xs: list[str], zs: list[str]) -> PauliOp:
    x = z = 0
    for lab in xs:
        x |= 1 << code.qubit(lab)
    for lab in zs:
        z |= 1 << code.qubit(lab)
    return PauliOp.hermitian(code.n, x, z)


def chain_logicals(k: int, code: SubsystemCode | None = None) -> list[tuple[PauliOp, PauliOp]]:
    """The 2k bare-logical pairs (X on B_i L_i, Z on B_i R_i)."""
    code = code or chain_code(k)
    return [(_op(code, [f"B{i}", f"L{i}"], []), _op(code, [], [f"B{i}", f"R{i}"]))
            for i in range(1, 2 * k + 1)]


def chain_stabilizers(k: int, code: SubsystemCode | None = None) -> tuple[PauliOp, PauliOp]:
    """The X-type and Z-type stabilizers (all-X and all-Z on the 6k qubits).

    Both are verified to commute with every gauge generator and to lie in
    span(G); a failure would mean the generalization from the k=1 instance is
    wrong, so it raises rather than returning silently.
    """
    code = code or chain_code(k)
    full = (1 << code.n) - 1
    sx = PauliOp.hermitian(code.n, full, 0)
    sz = PauliOp.hermitian(code.n, 0, full)
    span = code.gauge_span()
    for s in (sx, sz):
        if not all(s.commutes(g) for g in code.gauge_generators):
            raise RuntimeError(f"candidate stabilizer {s} is not in the centralizer")
        if not span.contains(s.x | (s.z << code.n)):
            raise RuntimeError(f"candidate stabilizer {s} is not in span(G)")
    return sx, sz


def chain_gauge_pairs(k: int, code: SubsystemCode | None = None) -> list[tuple[PauliOp, PauliOp]]:
    """The 4k-2 canonical anticommuting gauge pairs of the chain family:

        (X_{L_i} X_{L_{i+1}},  prod_{j<=i} Z_{L_j} Z_{B_j})           1 <= i <= 2k-1
        (Z_{R_i} Z_{R_{i+1}},  X_{L_{2k}}^i prod_{j>i} X_{L_j} X_{B_j} X_{R_j})

    The exponent i on X_{L_{2k}} is taken mod 2 (Pauli involution).  Canonical
    commutation is asserted on every call.
    """
    code = code or chain_code(k)
    pairs = []
    for i in range(1, 2 * k):
        head = _op(code, [f"L{i}", f"L{i + 1}"], [])
        tail = _op(code, [], [lab for j in range(1, i + 1) for lab in (f"L{j}", f"B{j}")])
        pairs.append((head, tail))
    for i in range(1, 2 * k):
        head = _op(code, [], [f"R{i}", f"R{i + 1}"])
        xs = [f"L{2 * k}"] * (i % 2)
        part = [lab for j in range(i + 1, 2 * k + 1) for lab in (f"L{j}", f"B{j}", f"R{j}")]
        x = 0
        for lab in xs + part:
            x ^= 1 << code.qubit(lab)
        pairs.append((head, PauliOp.hermitian(code.n, x, 0)))

    flat = [p for pair in pairs for p in pair]
    for a in range(len(flat)):
        for b in range(a + 1, len(flat)):
            want = (b == a + 1 and a % 2 == 0)  # partners anticommute, others commute
            if flat[a].commutes(flat[b]) == want:
                raise RuntimeError(
                    f"canonical gauge pair check failed between {flat[a]} and {flat[b]}")
    return pairs
