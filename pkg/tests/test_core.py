from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from redop import GenSet, Vector, leading_coefficient, leading_generator, multiset_leq, vec_add, vec_scale
from redop.core import AmbientMismatch, multiset_lt, to_scalar

from gen import vectors

G3 = GenSet.standard(3)
G4 = GenSet.standard(4)


def v(amb, **kw):
    return Vector.from_labels(amb, [(c, g) for g, c in kw.items()])


def test_scalars_are_exact():
    assert to_scalar("3/6") == Fraction(1, 2)
    assert to_scalar(4) == Fraction(4)
    with pytest.raises(TypeError):
        to_scalar(0.5)
    with pytest.raises(TypeError):
        to_scalar(True)
    with pytest.raises(ValueError):
        to_scalar("0.5")


def test_genset_labels_and_order():
    G = GenSet(["a", "b"])
    assert G.index("b") == 1 and G.label(0) == "a"
    with pytest.raises(ValueError):
        GenSet(["a", "a"])
    assert len(GenSet([])) == 0


def test_leading_generator():
    assert leading_generator(v(G4, g4=1, g3=-1)) == 3
    assert leading_generator(v(G4, g1=5)) == 0
    assert leading_generator(v(G4, g3=1, g1=-2)) == 2
    with pytest.raises(ValueError, match="no leading generator of zero"):
        leading_generator(Vector.zero(G4))


def test_leading_coefficient():
    assert leading_coefficient(v(G4, g3=1, g1=-2)) == 1
    assert leading_coefficient(v(G4, g1=5)) == 5
    assert leading_coefficient(v(G4, g4=-1, g2=1)) == -1
    with pytest.raises(ValueError):
        leading_coefficient(Vector.zero(G4))


def test_multiset_examples():
    assert multiset_leq(Vector.zero(G3), v(G3, g2=1))
    assert multiset_leq(v(G3, g1=1, g3=1), v(G3, g2=1, g3=1))
    assert not multiset_leq(v(G3, g2=1), v(G3, g1=1))
    with pytest.raises(AmbientMismatch):
        multiset_leq(v(G3, g1=1), v(G4, g1=1))


def test_vec_add_and_scale():
    assert vec_add(v(G4, g2=1, g1=-1), v(G4, g1=1)) == v(G4, g2=1)
    assert vec_scale(v(G4, g3=1, g1=-1), 0) == Vector.zero(G4)
    assert vec_add(v(G4, g4=1, g2=-1), v(G4, g2=1, g1=-1)) == v(G4, g4=1, g1=-1)
    with pytest.raises(AmbientMismatch):
        vec_add(v(G3, g1=1), v(G4, g1=1))


def test_vector_string_and_terms():
    w = v(G4, g4=1, g3=-1)
    assert str(w) == "g4 - g3"
    assert w.to_terms() == [(Fraction(1), "g4"), (Fraction(-1), "g3")]
    assert str(Vector.zero(G4)) == "0"


amb5 = GenSet.standard(5)


@given(vectors(amb5), vectors(amb5), st.sampled_from([0, 1, -1, Fraction(2, 3)]))
def test_arithmetic_never_stores_zero(a, b, k):
    for w in (a + b, a - b, a.scale(k), -a, a - a):
        assert all(c != 0 for c in w.coeffs.values())


@given(vectors(amb5), vectors(amb5), vectors(amb5))
def test_multiset_reflexive_transitive(a, b, c):
    assert multiset_leq(a, a)
    if multiset_leq(a, b) and multiset_leq(b, c):
        assert multiset_leq(a, c)


@given(st.lists(vectors(amb5), min_size=1, max_size=40))
def test_strict_descent_terminates(vs):
    # a strictly descending chain over subsets of 5 generators has at most 2^5 elements
    chain = [vs[0]]
    for w in vs[1:]:
        if multiset_lt(w, chain[-1]):
            chain.append(w)
    assert len(chain) <= 2 ** 5
    assert len({frozenset(x.support()) for x in chain}) == len(chain)
