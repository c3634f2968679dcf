import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_matrix, random_relation
from sigflow.errors import DimensionMismatch, FieldMismatch, NotAMap, OracleTooLarge
from sigflow.exactfield import GF, QQ, QS
from sigflow.linrel import (
    LinRel,
    Matrix,
    annihilator,
    as_map,
    brute_compose,
    format_rel,
    graph_of,
    identity_rel,
    nullspace,
    rel_compose,
    rel_dagger,
    rel_equal,
    rel_tensor,
    relation_elements,
    relation_from_constraints,
    rref,
    span,
)


def M(field, rows, cols=None):
    return Matrix.from_rows(field, rows, cols)


def rel(field, m, n, rows):
    return span(m, n, [[field(x) for x in r] for r in rows], field)


def is_rref(A: Matrix) -> bool:
    last = -1
    for i, r in enumerate(A.data):
        nz = [j for j, x in enumerate(r) if not x.is_zero()]
        if not nz or nz[0] <= last:
            return False
        p = nz[0]
        if not r[p].is_one():
            return False
        if any(not A.data[k][p].is_zero() for k in range(A.rows) if k != i):
            return False
        last = p
    return True


def test_rref_examples():
    assert rref(M(QQ, [[2, 4], [1, 2]])) == M(QQ, [[1, 2]])
    assert rref(Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 3)
    assert rref(M(QS, [["0", "s"], ["s", "0"]])) == Matrix.identity(QS, 2)


@pytest.mark.parametrize("field", [QQ, QS, GF(2), GF(5)], ids=str)
def test_rref_is_canonical_for_the_row_space(field):
    rng = random.Random(21)
    for _ in range(60):
        A = random_matrix(rng, field, rng.randint(0, 4), rng.randint(1, 4))
        R = rref(A)
        assert is_rref(R)
        # mixing rows never changes the canonical form
        T = random_matrix(rng, field, A.rows, A.rows)
        assert rref(T @ A).rows <= R.rows
        if A.rows and rref(T).rows == A.rows:
            assert rref(T @ A) == R
        assert rref(R) == R


def test_nullspace_is_orthogonal_and_complete():
    rng = random.Random(8)
    for _ in range(50):
        A = random_matrix(rng, QQ, rng.randint(1, 4), rng.randint(1, 5))
        K = nullspace(A)
        assert K.rows + rref(A).rows == A.cols
        if K.rows:
            assert A @ K.transpose() == Matrix.zeros(QQ, A.rows, K.rows)


def test_matrix_checks_shape_and_field():
    with pytest.raises(DimensionMismatch):
        Matrix(QQ, 2, 2, [[QQ(1), QQ(2)]])
    with pytest.raises(FieldMismatch):
        Matrix(QQ, 1, 1, [[GF(5)(1)]])
    with pytest.raises(DimensionMismatch):
        M(QQ, [[1, 2]]) @ M(QQ, [[1, 2]])


def test_span_examples():
    assert rel(QQ, 1, 1, [[1, 1], [2, 2]]).rows() == M(QQ, [[1, 1]]).data
    cup = rel(QQ, 2, 0, [[1, 1]])
    assert cup.signature == (2, 0) and cup.dim == 1
    empty = span(0, 0, [], QQ)
    assert empty.dim == 0 and empty.signature == (0, 0)
    with pytest.raises(DimensionMismatch):
        rel(QQ, 1, 1, [[1, 2, 3]])
    with pytest.raises(ValueError):
        span(1, 1, [])


def test_compose_examples():
    two = graph_of(M(QQ, [[2]]))
    three = graph_of(M(QQ, [[3]]))
    assert rel_compose(two, three) == graph_of(M(QQ, [[6]]))
    cap = rel(QQ, 0, 2, [[1, 1]])
    cup = rel(QQ, 2, 0, [[1, 1]])
    one = identity_rel(QQ, 1)
    assert rel_compose(rel_tensor(cap, one), rel_tensor(one, cup)) == one
    with pytest.raises(DimensionMismatch):
        rel_compose(cap, cap)


def test_tensor_examples():
    one = identity_rel(QQ, 1)
    assert rel_tensor(one, one) == identity_rel(QQ, 2)
    cup = rel(QQ, 2, 0, [[1, 1]])
    cap = rel(QQ, 0, 2, [[1, 1]])
    assert rel_tensor(cup, cap).rows() == M(QQ, [[1, 1, 0, 0], [0, 0, 1, 1]]).data
    zero = graph_of(Matrix(QQ, 1, 0, [[]]))
    assert rel_tensor(zero, zero) == graph_of(Matrix(QQ, 2, 0, [[], []]))


def test_tensor_output_is_canonical():
    rng = random.Random(31)
    for _ in range(100):
        a = random_relation(rng, GF(3), rng.randint(0, 3), rng.randint(0, 3))
        b = random_relation(rng, GF(3), rng.randint(0, 3), rng.randint(0, 3))
        t = rel_tensor(a, b)
        assert is_rref(t.basis)
        assert t == span(t.m, t.n, t.rows(), GF(3))


def test_dagger_examples():
    assert rel_dagger(graph_of(M(QQ, [[2]]))) == graph_of(M(QQ, [["1/2"]]))
    assert rel_dagger(graph_of(M(QQ, [[0]]))) == rel(QQ, 1, 1, [[0, 1]])
    coadd = rel_dagger(graph_of(M(QQ, [[1, 1]])))
    assert coadd.signature == (1, 2)
    assert coadd == rel(QQ, 1, 2, [[1, 1, 0], [1, 0, 1]])


def test_equality_examples():
    assert rel_equal(rel(QQ, 1, 1, [[1, 1]]), rel(QQ, 1, 1, [[3, 3]]))
    cup = rel(QQ, 2, 0, [[1, 1]])
    assert not rel_equal(cup, rel(QQ, 0, 2, [[1, 1]]))
    assert not rel_equal(span(1, 1, [], QQ), span(1, 1, [], GF(5)))


def test_graph_examples():
    g = graph_of(M(QQ, [[0, 1], [1, 0]]))
    assert g.rows() == M(QQ, [[1, 0, 0, 1], [0, 1, 1, 0]]).data
    empty = graph_of(Matrix(QQ, 1, 0, [[]]))
    assert empty.signature == (0, 1) and empty.dim == 0


def test_graph_is_a_functor():
    rng = random.Random(41)
    for field in (QQ, QS, GF(7)):
        for _ in range(30):
            A, B = random_matrix(rng, field, 2, 2), random_matrix(rng, field, 2, 2)
            assert graph_of(A @ B) == rel_compose(graph_of(B), graph_of(A))


def test_as_map_examples():
    with pytest.raises(NotAMap) as info:
        as_map(rel(QQ, 2, 0, [[1, 1]]))
    assert info.value.reason == "not-total"
    c = QS("(s+1)/s")
    assert as_map(graph_of(Matrix(QS, 1, 1, [[c]]))) == Matrix(QS, 1, 1, [[c]])
    with pytest.raises(NotAMap) as info:
        as_map(rel_dagger(graph_of(M(QQ, [[0]]))))
    assert info.value.reason == "not-functional"


def test_as_map_inverts_graph():
    rng = random.Random(12)
    for field in (QQ, GF(5)):
        for _ in range(50):
            A = random_matrix(rng, field, rng.randint(0, 4), rng.randint(0, 4))
            assert as_map(graph_of(A)) == A


def test_annihilator_examples():
    assert annihilator(rel(QQ, 1, 1, [[1, 1]])) == M(QQ, [[1, -1]])
    rng = random.Random(9)
    for _ in range(60):
        L = random_relation(rng, QQ, rng.randint(0, 3), rng.randint(0, 3))
        C = annihilator(L)
        assert is_rref(C) or C.rows == 0
        assert C.rows == L.m + L.n - L.dim
        assert relation_from_constraints(L.m, L.n, C) == L


def test_format_rel():
    text = format_rel(rel(QS, 1, 1, [[1, "1/s"]]))
    assert text.splitlines() == ["rel 1 1 1", "1 1/s"]


def test_brute_examples():
    one = identity_rel(GF(2), 1)
    assert brute_compose(one, one) == one
    with pytest.raises(OracleTooLarge):
        big = identity_rel(GF(2**31 - 1), 1)
        brute_compose(big, big)
    with pytest.raises(TypeError):
        brute_compose(identity_rel(QQ, 1), identity_rel(QQ, 1))


def test_brute_matches_on_every_generator_pair_over_gf2():
    from sigflow.diagram import ADD, BRAID, CAP, CUP, DELETE, DUP, ID, ZERO
    from sigflow.semantics import eval_rel

    F = GF(2)
    gens = [eval_rel(g, F) for g in (ADD, BRAID, CAP, CUP, DELETE, DUP, ID, ZERO)]
    gens.append(eval_rel(ZERO @ ID, F))
    pairs = 0
    for a, b in itertools.product(gens, repeat=2):
        if a.n == b.m:
            assert rel_compose(a, b) == brute_compose(a, b)
            pairs += 1
    assert pairs > 10


def test_brute_matches_on_random_gf3():
    rng = random.Random(77)
    for _ in range(60):
        m, p, n = (rng.randint(0, 3) for _ in range(3))
        a = random_relation(rng, GF(3), m, p, dim=rng.randint(0, min(3, m + p)))
        b = random_relation(rng, GF(3), p, n, dim=rng.randint(0, min(3, p + n)))
        assert rel_compose(a, b) == brute_compose(a, b)


def test_elements_count_matches_dimension():
    rng = random.Random(6)
    for _ in range(30):
        L = random_relation(rng, GF(3), rng.randint(0, 2), rng.randint(0, 2))
        assert len(relation_elements(L)) == 3**L.dim


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_composition_is_associative(seed):
    rng = random.Random(seed)
    F = rng.choice([QQ, GF(3)])
    dims = [rng.randint(0, 3) for _ in range(4)]
    a = random_relation(rng, F, dims[0], dims[1])
    b = random_relation(rng, F, dims[1], dims[2])
    c = random_relation(rng, F, dims[2], dims[3])
    assert rel_compose(rel_compose(a, b), c) == rel_compose(a, rel_compose(b, c))
    assert rel_compose(identity_rel(F, dims[0]), a) == a == rel_compose(a, identity_rel(F, dims[1]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_interchange_law(seed):
    rng = random.Random(seed)
    F = GF(5)
    d = [rng.randint(0, 2) for _ in range(6)]
    a, b = random_relation(rng, F, d[0], d[1]), random_relation(rng, F, d[1], d[2])
    c, e = random_relation(rng, F, d[3], d[4]), random_relation(rng, F, d[4], d[5])
    lhs = rel_compose(rel_tensor(a, c), rel_tensor(b, e))
    assert lhs == rel_tensor(rel_compose(a, b), rel_compose(c, e))


def test_operators_on_linrel():
    one = identity_rel(QQ, 1)
    assert isinstance(one >> one, LinRel)
    assert (one @ one).signature == (2, 2)
    assert one.dagger() == one
    assert len({one, identity_rel(QQ, 1)}) == 1
