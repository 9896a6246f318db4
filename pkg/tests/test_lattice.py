import pytest
from hypothesis import given
from hypothesis import strategies as st

from redop import GenSet, OperatorFamily, ReductionOperator, Vector, from_matrix, is_confluent, join, leq, meet, \
    obstructions, red_family
from redop.basis import kernel_basis
from redop.lattice import intersect, join_all, leq_by_composition
from redop.completion import f_complement

import brute
from gen import families, operators, to_dense
from worked_examples import G4, MEET_M, P, T1, T2


def test_leq_examples():
    W = meet(P())
    assert leq(W, T1())
    assert leq(T1(), ReductionOperator.identity(G4))
    assert not leq(T1(), T2())
    assert not leq_by_composition(T1(), T2())


def test_meet_examples():
    assert meet(P()) == from_matrix(MEET_M, G4)
    I = ReductionOperator.identity(G4)
    assert meet([T1(), I]) == T1()
    assert meet([T1(), T1()]) == T1()


def test_join_examples():
    assert join(T1(), T2()) == ReductionOperator.identity(G4)
    assert join(T1(), ReductionOperator.identity(G4)) == ReductionOperator.identity(G4)
    assert join(T1(), T1()) == T1()


def test_obstructions_examples():
    assert red_family(P()) == {0, 2}
    assert obstructions(P()) == {2}
    assert obstructions([T1()]) == set()
    assert not is_confluent(P())
    assert is_confluent([T2()])
    F = P()
    assert is_confluent(F + [f_complement(F)])


def test_family_requires_common_ambient():
    with pytest.raises(ValueError):
        OperatorFamily([])
    with pytest.raises(ValueError):
        OperatorFamily([T1(), ReductionOperator.identity(GenSet.standard(3))])


@st.composite
def triples(draw):
    amb = GenSet.standard(draw(st.integers(1, 6)))
    return tuple(draw(operators(amb)) for _ in range(3))


@given(triples())
def test_lattice_laws(t):
    a, b, c = t
    assert meet([a, b]) == meet([b, a]) and join(a, b) == join(b, a)
    assert meet([a, meet([b, c])]) == meet([meet([a, b]), c]) == meet([a, b, c])
    assert join(a, join(b, c)) == join(join(a, b), c) == join_all([a, b, c])
    assert meet([a, a]) == a and join(a, a) == a
    assert meet([a, join(a, b)]) == a
    assert join(a, meet([a, b])) == a


@given(triples())
def test_order_properties(t):
    a, b, c = t
    W = meet([a, b])
    assert leq(W, a) and leq(W, b)
    if leq(c, a) and leq(c, b):
        assert leq(c, W)
    J = join(a, b)
    assert leq(a, J) and leq(b, J)
    for x, y in ((a, b), (b, c), (W, a), (a, J)):
        assert leq(x, y) == leq_by_composition(x, y)
        if leq(x, y):
            assert x.red <= y.red


@given(triples())
def test_kernels_of_meet_and_join(t):
    a, b, _ = t
    n = len(a.ambient)
    dense = lambda T: [tuple(e[i] for i in range(n)) for e in kernel_basis(T).vectors()]
    ka, kb, km, kj = dense(a), dense(b), dense(meet([a, b])), dense(join(a, b))
    assert brute.rank(km, n) == brute.rank(ka + kb, n) == brute.rank(ka + kb + km, n)
    # kernel of the join: inside both kernels, and of the dimension of their intersection
    assert brute.rank(ka + kj, n) == brute.rank(ka, n)
    assert brute.rank(kb + kj, n) == brute.rank(kb, n)
    assert len(kj) == len(ka) + len(kb) - brute.rank(ka + kb, n)
    assert intersect(kernel_basis(a), kernel_basis(b)) == kernel_basis(join(a, b))


@given(families())
def test_obstructions_match_dense_oracle(F):
    cols = [to_dense(T) for T in F]
    assert set(obstructions(F)) == brute.obstructions(cols)
    assert to_dense(meet(F)) == brute.meet(cols)
    assert meet(F).red <= red_family(F)
