import numpy as np
import pytest

from pencode.paulis import PauliOp, symplectic_product
from conftest import kron_matrix


def test_single_qubit_products():
    x = PauliOp.single(1, 0, "X")
    z = PauliOp.single(1, 0, "Z")
    y = PauliOp.single(1, 0, "Y")
    # XZ = -iY
    assert np.allclose(kron_matrix(x * z), -1j * kron_matrix(y))
    assert (x * x).is_identity and (x * x).phase == 0
    assert (z * z).is_identity and (z * z).phase == 0
    # ZX = iY
    assert np.allclose(kron_matrix(z * x), 1j * kron_matrix(y))


def test_weight_examples(chain1):
    code, _ = chain1
    assert PauliOp.identity(6).weight == 0
    assert code.op("X B1 X L1").weight == 2
    stab = code.op("X L1 X L2 X B1 X R1 X B2 X R2")
    assert stab.weight == 6


def test_product_matches_dense_oracle(chain1):
    code, _ = chain1
    p = code.op("X B1 X L1")
    q = code.op("Z B1 Z R1")
    prod = p * q
    assert prod.weight == 4
    assert np.allclose(kron_matrix(prod), kron_matrix(p) @ kron_matrix(q))


def test_commutes_matches_dense_commutator(chain1):
    code, _ = chain1
    gens = code.gauge_generators
    mats = [kron_matrix(g) for g in gens]
    for i in range(len(gens)):
        for j in range(len(gens)):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            assert gens[i].commutes(gens[j]) == np.allclose(comm, 0)


def test_homomorphism_random_pairs():
    rng = np.random.default_rng(17)
    for n in range(1, 5):
        for _ in range(25):
            p = PauliOp(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)),
                        int(rng.integers(4)))
            q = PauliOp(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)),
                        int(rng.integers(4)))
            assert np.allclose(kron_matrix(p * q), kron_matrix(p) @ kron_matrix(q))
            # products differ exactly by the symplectic sign
            sign = (-1) ** symplectic_product(p, q)
            assert np.allclose(kron_matrix(q * p), sign * kron_matrix(p * q))


def test_weight_subadditive():
    rng = np.random.default_rng(23)
    for _ in range(100):
        n = int(rng.integers(1, 8))
        p = PauliOp.hermitian(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
        q = PauliOp.hermitian(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
        assert (p * q).weight <= p.weight + q.weight


def test_hermitian_square_is_positive_identity():
    rng = np.random.default_rng(29)
    for _ in range(50):
        n = int(rng.integers(1, 7))
        p = PauliOp.hermitian(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
        sq = p * p
        assert sq.is_identity and sq.phase == 0


def test_string_roundtrip():
    op = PauliOp.from_string("X0 Y2 Z5", 6)
    assert str(op) == "X0 Y2 Z5"
    assert op.weight == 3
    assert PauliOp.from_string("I", 3).is_identity
    assert PauliOp.from_string("", 3).is_identity


@pytest.mark.parametrize("bad", ["Q0", "X9", "X0 Z0", "Xa"])
def test_string_rejects(bad):
    with pytest.raises(ValueError):
        PauliOp.from_string(bad, 4)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        PauliOp.single(2, 0, "X") * PauliOp.single(3, 0, "X")
    with pytest.raises(ValueError):
        PauliOp.single(2, 0, "X").commutes(PauliOp.single(3, 0, "X"))


def test_symplectic_roundtrip():
    rng = np.random.default_rng(31)
    for _ in range(20):
        n = int(rng.integers(1, 9))
        p = PauliOp.hermitian(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
        assert PauliOp.from_symplectic(p.symplectic()) == p


def test_hermitian_sign():
    y = PauliOp.single(1, 0, "Y")
    assert y.hermitian_sign() == 1
    minus_y = PauliOp(1, 1, 1, 3)
    assert minus_y.hermitian_sign() == -1
    xz = PauliOp(1, 1, 1, 0)  # XZ = -iY, not Hermitian
    assert not xz.is_hermitian
    with pytest.raises(ValueError):
        xz.hermitian_sign()
