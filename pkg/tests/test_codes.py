import numpy as np
import pytest

from pencode.bacon_shor import chain_code, chain_logicals, code_from_matrix
from pencode.codes import (SpanGF2, SubsystemCode, WeightCapExceeded,
                           centralizer_basis, code_distance, derive_structure,
                           is_css_two_local, min_weight_bare_representative,
                           min_weight_dressed_representative)
from pencode.paulis import PauliOp
from conftest import all_paulis


def scan_centralizer(code):
    """Oracle: packed [x|z] of every Pauli commuting with all generators."""
    out = []
    for x, z in all_paulis(code.n):
        p = PauliOp.hermitian(code.n, x, z)
        if all(p.commutes(g) for g in code.gauge_generators):
            out.append(x | (z << code.n))
    return out


def test_centralizer_empty_gauge_group():
    code = SubsystemCode(2, ())
    assert len(centralizer_basis(code)) == 4  # 2n


def test_centralizer_single_generator():
    code = SubsystemCode(2, (PauliOp.from_string("X0 X1", 2),))
    basis = centralizer_basis(code)
    assert len(basis) == 3
    span = SpanGF2(p.x | (p.z << 2) for p in basis)
    commuting = scan_centralizer(code)
    assert len(commuting) == 2 ** 3
    assert all(span.contains(v) for v in commuting)


def test_centralizer_chain_exhaustive(chain1):
    code, _ = chain1
    basis = centralizer_basis(code)
    assert len(basis) == 6
    span = SpanGF2(p.x | (p.z << code.n) for p in basis)
    commuting = scan_centralizer(code)  # scans all 4^6 Paulis
    assert len(commuting) == 2 ** 6
    assert all(span.contains(v) for v in commuting)


def test_structure_counts_chain(chain1):
    _, st = chain1
    assert (st.k, st.s, st.g) == (2, 2, 2)
    assert st.n == st.k + st.s + st.g == 6


def test_structure_trivial_code():
    st = derive_structure(SubsystemCode(1, ()))
    assert (st.k, st.s, st.g) == (1, 0, 0)


def test_structure_bacon_shor_3x3():
    code = code_from_matrix(np.ones((3, 3), dtype=np.uint8))
    st = derive_structure(code)
    assert st.k == 1  # equals rank of the all-ones matrix
    assert st.n == 9 == st.k + st.s + st.g
    assert (st.s, st.g) == (4, 4)


@pytest.mark.parametrize("maker", [
    lambda: chain_code(1),
    lambda: chain_code(2),
    lambda: code_from_matrix(np.ones((3, 3), dtype=np.uint8)),
    lambda: code_from_matrix(np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)),
])
def test_canonical_commutation_exhaustive(maker):
    code = maker()
    st = derive_structure(code)
    logicals = [p for pair in st.logical_pairs for p in pair]
    # pairs anticommute exactly with their partner
    for i, (xi, zi) in enumerate(st.logical_pairs):
        for j, (xj, zj) in enumerate(st.logical_pairs):
            assert xi.commutes(zj) == (i != j)
            assert xi.commutes(xj) and zi.commutes(zj)
    # logicals are bare, stabilizers commute with everything in G and C(G)
    for p in logicals:
        assert all(p.commutes(g) for g in code.gauge_generators)
    for s in st.stabilizer_basis:
        assert all(s.commutes(g) for g in code.gauge_generators)
        assert all(s.commutes(p) for p in logicals)
        assert all(s.commutes(t) for t in st.stabilizer_basis)
    # gauge pairs: partner anticommutes, everything else commutes, and all
    # gauge members commute with all logicals
    flat = [p for pair in st.gauge_pairs for p in pair]
    for i, (a, b) in enumerate(st.gauge_pairs):
        assert not a.commutes(b)
        for j, (c, d) in enumerate(st.gauge_pairs):
            if i != j:
                assert a.commutes(c) and a.commutes(d) and b.commutes(d)
    for p in flat:
        assert all(p.commutes(q) for q in logicals)


def test_code_distance_examples(chain1):
    code, st = chain1
    assert code_distance(code, 4, st) == 2
    bs = code_from_matrix(np.ones((3, 3), dtype=np.uint8))
    assert code_distance(bs, 4) == 3
    assert code_distance(SubsystemCode(1, ()), 4) == 1


def test_code_distance_cap():
    bs = code_from_matrix(np.ones((3, 3), dtype=np.uint8))
    with pytest.raises(WeightCapExceeded):
        code_distance(bs, 2)
    with pytest.raises(ValueError):
        code_distance(bs, 0)


def test_is_css_two_local(chain1):
    code, _ = chain1
    assert is_css_two_local(code)
    with_y = SubsystemCode(2, (PauliOp.from_string("Y0 Y1", 2),))
    assert not is_css_two_local(with_y)
    three = SubsystemCode(3, (PauliOp.from_string("X0 X1 X2", 3),))
    assert not is_css_two_local(three)


def test_min_weight_bare_representative(chain1):
    code, st = chain1
    (x1, _), (x2, _) = chain_logicals(1, code)
    rep = min_weight_bare_representative(code, x1, structure=st)
    assert rep == x1 and rep.weight == 2
    ident = min_weight_bare_representative(code, PauliOp.identity(6), structure=st)
    assert ident.is_identity and ident.weight == 0
    # the product Xbar1 Xbar2 is weight 4 but the all-X stabilizer reduces it
    # to the weight-2 bare operator on the two R qubits
    prod = min_weight_bare_representative(code, x1 * x2, structure=st)
    assert prod.weight == 2
    assert prod == code.op("X R1 X R2")


def test_min_weight_bare_representative_k2():
    code = chain_code(2)
    st = derive_structure(code)
    (x1, _), (x2, _) = chain_logicals(2, code)[:2]
    # at k=2 no stabilizer lightens the product: the bare minimum stays 4
    rep = min_weight_bare_representative(code, x1 * x2, structure=st)
    assert rep.weight == 4
    dressed = min_weight_dressed_representative(code, x1 * x2)
    assert dressed.weight == 2


def test_min_weight_dressed_representative(chain1):
    code, _ = chain1
    (x1, _), (x2, _) = chain_logicals(1, code)
    rep = min_weight_dressed_representative(code, x1 * x2)
    assert rep.weight == 2
    assert rep == code.op("X B1 X B2")


def test_bare_representative_requires_centralizer(chain1):
    code, st = chain1
    with pytest.raises(ValueError, match="not bare"):
        min_weight_bare_representative(code, code.op("Z B1"), structure=st)


def test_bare_representative_cap(chain1):
    code, st = chain1
    with pytest.raises(WeightCapExceeded):
        min_weight_bare_representative(code, st.logical_pairs[0][0], w_max=1,
                                       structure=st)


def test_code_json_roundtrip(chain1):
    code, _ = chain1
    restored = SubsystemCode.from_json(code.to_json())
    assert restored.n == code.n
    assert restored.gauge_generators == code.gauge_generators
    assert restored.labels == code.labels
