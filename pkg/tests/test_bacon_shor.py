import numpy as np
import pytest

from pencode.bacon_shor import (chain_code, chain_gauge_pairs, chain_logicals,
                                chain_matrix, chain_stabilizers,
                                code_from_matrix, code_params)
from pencode.codes import (SpanGF2, WeightCapExceeded, code_distance,
                           derive_structure)
from pencode.nogo import random_code_matrix


def pack_span(code, ops):
    return SpanGF2(op.x | (op.z << code.n) for op in ops)


def spans_equal(a: SpanGF2, b: SpanGF2) -> bool:
    return a.rank == b.rank and all(b.contains(r) for r in a)


def test_chain_matrix_k1():
    assert chain_matrix(1).tolist() == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]


def test_chain_matrix_weights():
    m2 = chain_matrix(2)
    assert m2.shape == (5, 5) and int(m2.sum()) == 12
    for k in range(1, 6):
        assert int(chain_matrix(k).sum()) == 6 * k


def test_chain_matrix_rejects():
    with pytest.raises(ValueError):
        chain_matrix(0)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_code_params_chain(k):
    assert code_params(chain_matrix(k)) == (6 * k, 2 * k, 2)


def test_code_params_other():
    assert code_params(np.ones((3, 3), dtype=np.uint8)) == (9, 1, 3)
    assert code_params(np.array([[1]], dtype=np.uint8)) == (1, 1, 1)
    with pytest.raises(ValueError):
        code_params(np.zeros((2, 2), dtype=np.uint8))


def test_code_from_matrix_generator_counts():
    bs = code_from_matrix(np.ones((3, 3), dtype=np.uint8))
    assert len(bs.gauge_generators) == 12
    assert sum(g.is_x_type for g in bs.gauge_generators) == 6
    single = code_from_matrix(np.array([[1]], dtype=np.uint8))
    assert single.n == 1 and not single.gauge_generators
    assert derive_structure(single).k == 1
    with pytest.raises(ValueError):
        code_from_matrix(np.zeros((2, 2), dtype=np.uint8))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_chain_code_matches_labeled_families(k):
    """The matrix construction reproduces the explicit two-local families."""
    code = chain_code(k)
    assert len(code.gauge_generators) == 8 * k - 2
    explicit = []
    for i in range(1, 2 * k + 1):
        explicit.append(code.op(f"X B{i} X R{i}"))
        explicit.append(code.op(f"Z B{i} Z L{i}"))
    for i in range(1, 2 * k):
        explicit.append(code.op(f"X L{i} X L{i + 1}"))
        explicit.append(code.op(f"Z R{i} Z R{i + 1}"))
    assert spans_equal(pack_span(code, explicit), code.gauge_span())
    assert set(g.key() for g in code.gauge_generators) == set(p.key() for p in explicit)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_chain_structure_counts(k):
    st = derive_structure(chain_code(k))
    assert st.k == 2 * k
    assert st.s == 2
    assert st.n == 6 * k == st.k + st.s + st.g


def test_chain_logicals_properties():
    for k in (1, 2, 3):
        code = chain_code(k)
        pairs = chain_logicals(k, code)
        assert len(pairs) == 2 * k
        for i, (xi, zi) in enumerate(pairs):
            assert xi.weight == 2 and zi.weight == 2
            assert all(xi.commutes(g) and zi.commutes(g)
                       for g in code.gauge_generators)
            for j, (xj, zj) in enumerate(pairs):
                assert xi.commutes(zj) == (i != j)


def test_logical_product_dressed_to_weight_two(chain1):
    code, _ = chain1
    (x1, _), (x2, _) = chain_logicals(1, code)
    gauge = code.op("X L1 X L2")
    assert (x1 * x2) * gauge == code.op("X B1 X B2")


def test_chain_stabilizers(chain1):
    code, st = chain1
    sx, sz = chain_stabilizers(1, code)
    assert sx == code.op("X L1 X L2 X B1 X R1 X B2 X R2")
    assert sz == code.op("Z L1 Z L2 Z B1 Z R1 Z B2 Z R2")
    span = st.stabilizer_span()
    for s in (sx, sz):
        assert span.contains(s.x | (s.z << code.n))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_chain_stabilizers_any_k(k):
    sx, sz = chain_stabilizers(k)
    assert sx.weight == sz.weight == 6 * k


@pytest.mark.parametrize("k", [1, 2, 3])
def test_chain_gauge_pairs(k):
    code = chain_code(k)
    pairs = chain_gauge_pairs(k, code)
    assert len(pairs) == 4 * k - 2
    logicals = chain_logicals(k, code)
    for a, b in pairs:
        for xl, zl in logicals:
            assert a.commutes(xl) and a.commutes(zl)
            assert b.commutes(xl) and b.commutes(zl)
    # pairs plus the two stabilizers generate the gauge group
    sx, sz = chain_stabilizers(k, code)
    ops = [p for pair in pairs for p in pair] + [sx, sz]
    assert spans_equal(pack_span(code, ops), code.gauge_span())


def test_chain_gauge_pairs_k1_explicit(chain1):
    code, _ = chain1
    pairs = chain_gauge_pairs(1, code)
    assert [(a.key(), b.key()) for a, b in pairs] == [
        (code.op("X L1 X L2").key(), code.op("Z L1 Z B1").key()),
        (code.op("Z R1 Z R2").key(), code.op("X B2 X R2").key()),
    ]


@pytest.mark.parametrize("k", [1, 2])
def test_chain_distance_enumeration(k):
    code = chain_code(k)
    assert code_distance(code, 2) == 2


def test_random_matrix_distance_agreement():
    """Enumeration distance equals the row/column-space formula."""
    rng = np.random.default_rng(42)
    checked = 0
    while checked < 50:
        m = random_code_matrix(rng, 5)
        _, _, d_formula = code_params(m)
        code = code_from_matrix(m)
        try:
            d_enum = code_distance(code, 4)
        except WeightCapExceeded:
            assert d_formula > 4
            continue
        assert d_enum == d_formula
        checked += 1
