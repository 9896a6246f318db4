import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from redop import (
    GenSet,
    ReductionMatrixError,
    ReductionOperator,
    Vector,
    apply,
    from_matrix,
    kernel_basis,
    leading_generator,
    reduce_basis,
    theta,
)
from redop.basis import InvalidOperatorError, is_idempotent_matrix, span_sum

import brute
from gen import ambients, operators, subspaces, to_dense, vectors
from worked_examples import G4, MEET_M, T1, T2

V = lambda **kw: Vector.from_labels(G4, [(c, g) for g, c in kw.items()])


def test_reduce_basis_worked_example():
    B = reduce_basis([V(g2=1, g1=-1), V(g4=1, g3=-1), V(g4=1, g2=-1)])
    assert set(B.vectors()) == {V(g2=1, g1=-1), V(g3=1, g1=-1), V(g4=1, g1=-1)}


def test_reduce_basis_trivial_cases():
    assert reduce_basis([], G4).dim == 0
    assert reduce_basis([V(g1=2)]).vectors() == [V(g1=1)]
    assert reduce_basis([Vector.zero(G4), V(g2=1), V(g2=3)]).vectors() == [V(g2=1)]
    with pytest.raises(ValueError):
        reduce_basis([])


def test_theta_examples():
    M = theta(reduce_basis([V(g2=1, g1=-1), V(g3=1, g1=-1), V(g4=1, g1=-1)]))
    assert M == from_matrix(MEET_M, G4)
    assert theta(reduce_basis([], G4)) == ReductionOperator.identity(G4)
    full = reduce_basis([Vector.gen(G4, g) for g in range(4)])
    assert theta(full) == ReductionOperator.zero(G4)


def test_kernel_basis_examples():
    assert set(kernel_basis(T1()).vectors()) == {V(g2=1, g1=-1), V(g4=1, g3=-1)}
    assert kernel_basis(ReductionOperator.identity(G4)).dim == 0
    G2 = GenSet.standard(2)
    assert kernel_basis(ReductionOperator.zero(G2)).vectors() == [Vector.gen(G2, 0), Vector.gen(G2, 1)]


def test_from_matrix_accepts_and_rejects():
    zero = [[0] * 4 for _ in range(4)]
    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    assert from_matrix(zero, G4) == ReductionOperator.zero(G4)
    assert from_matrix(ident, G4) == ReductionOperator.identity(G4)
    assert from_matrix(MEET_M, G4).nred == {1, 2, 3}
    bad2 = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(ReductionMatrixError, match="condition 2") as e:
        from_matrix(bad2, G4)
    assert (e.value.condition, e.value.row, e.value.col) == (2, 1, 2)
    bad1 = [[1, 0], [1, 0]]
    with pytest.raises(ReductionMatrixError, match="condition 1"):
        from_matrix(bad1, GenSet.standard(2))
    bad3 = [[1, 1], [0, 1]]
    with pytest.raises(ReductionMatrixError, match="condition 3"):
        from_matrix(bad3, GenSet.standard(2))
    with pytest.raises(ReductionMatrixError, match="condition 1"):
        from_matrix([[2, 0], [0, 1]], GenSet.standard(2))
    with pytest.raises(ReductionMatrixError):
        from_matrix([[1, 0]], GenSet.standard(2))


def test_operator_constructor_validation():
    with pytest.raises(InvalidOperatorError, match="not smaller"):
        ReductionOperator(G4, {1: {2: 1}})
    with pytest.raises(InvalidOperatorError, match="not idempotent"):
        ReductionOperator(G4, {1: {0: 1}, 2: {1: 1}})
    with pytest.raises(InvalidOperatorError):
        ReductionOperator(G4, {7: {}})


def test_apply_examples():
    T = T1()
    assert apply(T, Vector.gen(G4, 3)) == Vector.gen(G4, 2)
    w = V(g1=3, g3=-1)
    assert apply(T, w) == w
    assert apply(from_matrix(MEET_M, G4), Vector.gen(G4, 3)) == Vector.gen(G4, 0)


@st.composite
def spanning_sets(draw):
    amb = draw(ambients)
    vs = [draw(vectors(amb)) for _ in range(draw(st.integers(0, 4)))]
    return amb, vs


@given(spanning_sets(), st.randoms(use_true_random=False))
def test_reduced_basis_is_unique(data, rnd):
    amb, vs = data
    B = reduce_basis(vs, amb)
    # shuffled, rescaled and padded with redundant combinations
    ws = [w.scale(rnd.choice([1, -2, Fraction(1, 3)])) for w in vs]
    if len(vs) >= 2:
        ws.append(vs[0] + vs[1])
    ws.append(Vector.zero(amb))
    rnd.shuffle(ws)
    assert reduce_basis(ws, amb) == B


@given(spanning_sets())
def test_reduced_basis_conditions(data):
    amb, vs = data
    B = reduce_basis(vs, amb)
    leads = set(B.leads)
    for g in B.leads:
        e = B[g]
        assert leading_generator(e) == g and e[g] == 1
        assert not (e.support() - {g}) & leads
    # same span as the input, checked densely
    n = len(amb)
    dense = [tuple(w[i] for i in range(n)) for w in vs]
    mine = [tuple(e[i] for i in range(n)) for e in B.vectors()]
    assert brute.rank(dense, n) == len(mine) == brute.rank(dense + mine, n)


@given(ambients.flatmap(lambda a: subspaces(a)))
def test_theta_kernel_round_trip(Vb):
    T = theta(Vb)
    assert kernel_basis(T) == Vb
    assert theta(kernel_basis(T)) == T
    assert T.nred == set(Vb.leads)


@given(ambients.flatmap(lambda a: operators(a)))
def test_operator_invariants(T):
    n = len(T.ambient)
    for g in range(n):
        img = apply(T, Vector.gen(T.ambient, g))
        assert apply(T, img) == img
        if g in T.nred and img:
            assert leading_generator(img) < g
    M = T.matrix()
    assert is_idempotent_matrix(M)
    assert from_matrix(M, T.ambient) == T
    assert brute.is_reduction_matrix(to_dense(T))
    # the kernel of the dense matrix is the span of the kernel basis
    ker = brute.kernel(to_dense(T))
    mine = [tuple(e[i] for i in range(n)) for e in kernel_basis(T).vectors()]
    assert brute.rank(ker, n) == len(mine) == brute.rank(ker + mine, n)


def test_dense_oracle_agrees_on_random_theta():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 6)
        amb = GenSet.standard(n)
        vs = [Vector(amb, {g: rng.randint(-2, 2) for g in range(n)}) for _ in range(rng.randint(0, 3))]
        T = theta(reduce_basis(vs, amb))
        expect = brute.operator_with_kernel([tuple(w[i] for i in range(n)) for w in vs], n)
        assert to_dense(T) == expect
