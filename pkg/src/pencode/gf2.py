"""Linear algebra over GF(2) on numpy uint8 arrays.

All routines treat matrices as collections of row vectors with entries in
{0, 1}; arithmetic is mod 2 (XOR).  Sizes stay at desk scale, so everything
is plain Gaussian elimination.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "as_gf2",
    "gf2_rank",
    "gf2_row_basis",
    "gf2_rref",
    "gf2_nullspace",
    "gf2_solve",
    "gf2_in_span",
    "min_weight_in_span",
    "parse_binary_matrix",
    "format_binary_matrix",
]

# exhaustive span enumeration refuses to go past this many combinations
DEFAULT_COMBO_CAP = 1 << 24


def as_gf2(a) -> np.ndarray:
    """Coerce to a 2-D uint8 array with entries reduced mod 2."""
    m = np.atleast_2d(np.asarray(a))
    return (m & 1).astype(np.uint8)


def gf2_rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2); returns (rref, pivot columns)."""
    m = as_gf2(a).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def gf2_rank(a: np.ndarray) -> int:
    """Rank over GF(2)."""
    return len(gf2_rref(a)[1])


def gf2_row_basis(a: np.ndarray) -> np.ndarray:
    """Independent rows spanning the row space of a (in RREF order)."""
    rref, pivots = gf2_rref(a)
    return rref[: len(pivots)]


def gf2_nullspace(a: np.ndarray) -> np.ndarray:
    """Basis of {x : a @ x = 0 mod 2}, one vector per row; shape (dim, cols)."""
    rref, pivots = gf2_rref(a)
    cols = rref.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            if rref[r, fc]:
                basis[i, pc] = 1
    return basis


def gf2_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution x of a @ x = b mod 2, or None if inconsistent."""
    a = as_gf2(a)
    b = (np.asarray(b).ravel() & 1).astype(np.uint8)
    rows, cols = a.shape
    if b.size != rows:
        raise ValueError(f"rhs length {b.size} != row count {rows}")
    aug = np.concatenate([a, b[:, None]], axis=1)
    rref, pivots = gf2_rref(aug)
    # pivot in the augmented column means no solution
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for r, pc in enumerate(pivots):
        x[pc] = rref[r, cols]
    return x


def gf2_in_span(v: np.ndarray, basis: np.ndarray) -> np.ndarray | None:
    """Coefficients c with c @ basis = v mod 2, or None if v is outside the row space."""
    basis = as_gf2(basis)
    if basis.shape[0] == 0:
        v = (np.asarray(v).ravel() & 1).astype(np.uint8)
        return np.zeros(0, dtype=np.uint8) if not v.any() else None
    return gf2_solve(basis.T, v)


def min_weight_in_span(a: np.ndarray, exclude_zero: bool = True,
                       combo_cap: int = DEFAULT_COMBO_CAP) -> int:
    """Minimum Hamming weight over the row span of a.

    Enumerates all 2^rank combinations of an independent row basis (Gray-code
    order, one XOR per step).  With exclude_zero the zero vector is skipped;
    an empty span then raises ValueError.  Spans larger than combo_cap raise
    rather than silently subsample.
    """
    basis = gf2_row_basis(a)
    r = basis.shape[0]
    if r == 0:
        if exclude_zero:
            raise ValueError("span contains only the zero vector")
        return 0
    if (1 << r) > combo_cap:
        raise ValueError(f"2^{r} combinations exceed cap {combo_cap}")
    cur = np.zeros(basis.shape[1], dtype=np.uint8)
    best = basis.shape[1] + 1 if exclude_zero else 0
    for i in range(1, 1 << r):
        # Gray code: flip the basis row indexed by the lowest set bit of i
        cur ^= basis[(i & -i).bit_length() - 1]
        w = int(cur.sum())
        if exclude_zero and w == 0:
            continue
        best = min(best, w)
    return best


def parse_binary_matrix(text: str) -> np.ndarray:
    """Parse the row-per-line '0'/'1' text format; rejects ragged or bad rows."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    width = len(lines[0])
    rows = []
    for i, ln in enumerate(lines):
        ln = ln.strip()
        if len(ln) != width:
            raise ValueError(f"ragged row {i}: width {len(ln)} != {width}")
        if set(ln) - {"0", "1"}:
            raise ValueError(f"row {i} has characters outside 0/1")
        rows.append([int(ch) for ch in ln])
    return np.array(rows, dtype=np.uint8)


def format_binary_matrix(a: np.ndarray) -> str:
    """Inverse of parse_binary_matrix (trailing newline included)."""
    a = as_gf2(a)
    return "\n".join("".join(str(int(x)) for x in row) for row in a) + "\n"
