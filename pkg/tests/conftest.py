"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's fast paths: matrices are
built by Kronecker products of 2x2 Paulis, centralizers by scanning all 4^n
Paulis, span minima by direct subset enumeration.  Tests compare the library
against these.
"""
from functools import reduce
from itertools import combinations, product

import numpy as np
import pytest

from pencode.bacon_shor import chain_code, chain_logicals, chain_stabilizers
from pencode.codes import derive_structure
from pencode.hamiltonians import penalty_hamiltonian
from pencode.paulis import PauliOp
from pencode.spectral import diagonalize

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
SINGLE = {"I": I2, "X": SX, "Y": SY, "Z": SZ}


def kron_matrix(op: PauliOp) -> np.ndarray:
    """Oracle dense matrix: i^phase * kron of X^x Z^z factors, qubit 0 least
    significant."""
    factors = []
    for q in range(op.n - 1, -1, -1):
        f = I2.copy()
        if (op.x >> q) & 1:
            f = f @ SX
        if (op.z >> q) & 1:
            f = f @ SZ
        factors.append(f)
    m = reduce(np.kron, factors) if factors else np.array([[1.0 + 0j]])
    return (1j ** op.phase) * m


def all_paulis(n: int):
    """Every phase-free n-qubit Pauli as (x, z) masks, identity included."""
    for x in range(1 << n):
        for z in range(1 << n):
            yield x, z


def brute_min_weight_span(rows: np.ndarray) -> int:
    """Direct enumeration of all nonzero subset sums of the rows."""
    rows = np.atleast_2d(rows)
    best = None
    for r in range(1, rows.shape[0] + 1):
        for idx in combinations(range(rows.shape[0]), r):
            v = np.bitwise_xor.reduce(rows[list(idx)], axis=0)
            w = int(v.sum())
            if w and (best is None or w < best):
                best = w
    return best


@pytest.fixture(scope="session")
def chain1():
    code = chain_code(1)
    return code, derive_structure(code)


@pytest.fixture(scope="session")
def chain1_spectral(chain1):
    code, structure = chain1
    penalty = penalty_hamiltonian(code)
    return code, structure, penalty, diagonalize(penalty)


@pytest.fixture(scope="session")
def chain2():
    code = chain_code(2)
    return code, derive_structure(code)


@pytest.fixture(scope="session")
def chain2_spectral(chain2):
    code, structure = chain2
    penalty = penalty_hamiltonian(code)
    return code, structure, penalty, diagonalize(penalty)
