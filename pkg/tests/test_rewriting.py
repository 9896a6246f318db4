import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from redop import GenSet, ReductionOperator, Vector, apply, is_confluent, meet, multiset_leq
from redop.basis import kernel_basis
from redop.completion import f_complement
from redop.core import multiset_lt
from redop.rewriting import (
    ConsistencyError,
    all_normal_forms,
    church_rosser_witness,
    class_minimum,
    equivalent,
    has_church_rosser,
    is_locally_confluent,
    is_normal_form,
    local_confluence_witness,
    normal_form,
    parse_strategy,
    reachable,
    rewrite_step,
    trace_normal_form,
    unique_normal_form_witness,
)

import brute
from gen import families, random_family, to_dense, to_dense_vector, vectors
from worked_examples import G4, P, T1

g = lambda k: Vector.gen(G4, k - 1)


def test_rewrite_step_examples():
    assert rewrite_step(P(), g(4)) == (0, g(3))
    assert rewrite_step(P(), g(2)) == (0, g(1))
    assert rewrite_step(P(), g(1) + g(3)) is None


def test_normal_form_strategies():
    assert normal_form(P(), g(4), "priority:0") == g(3)
    assert normal_form(P(), g(4), "priority:1") == g(1)
    assert normal_form(P(), g(4), [1, 0]) == g(1)
    assert normal_form(P(), Vector.zero(G4)) == Vector.zero(G4)
    tr = trace_normal_form(P(), g(4), "priority:1")
    assert [i for i, _ in tr.steps] == [1, 0] and tr.result == g(1)


def test_parse_strategy():
    assert parse_strategy("first", 3) == (0, 1, 2)
    assert parse_strategy("priority:2", 3) == (2, 0, 1)
    for bad in ("last", "priority:5", "priority:1,1", "priority:a"):
        with pytest.raises(ValueError):
            parse_strategy(bad, 3)


def test_all_normal_forms_examples():
    assert all_normal_forms(P(), g(4)) == {g(1), g(3)}
    F = P() + [f_complement(P())]
    W = meet(F)
    for v in (g(4), g(2) + g(3), g(4) - g(1)):
        assert all_normal_forms(F, v) == {apply(W, v)}
    assert all_normal_forms(P(), g(1) + g(3)) == {g(1) + g(3)}


def test_equivalence_and_class_minimum():
    assert equivalent(P(), g(3), g(1))
    assert equivalent(P(), g(2), g(2))
    assert not equivalent(P(), g(3), g(3) + g(1))
    assert class_minimum(P(), g(4)) == g(1)
    assert class_minimum(P(), g(1)) == g(1)
    assert class_minimum(P(), g(3) + g(4)) == g(1).scale(2)


def test_confluence_characterisations_examples():
    assert not is_locally_confluent(P()) and not has_church_rosser(P())
    assert is_locally_confluent([T1()]) and has_church_rosser([T1()])
    F = P() + [f_complement(P())]
    assert is_locally_confluent(F) and has_church_rosser(F)
    assert local_confluence_witness(P()) is not None
    assert church_rosser_witness(P()) == g(3)


def test_search_disagreement_is_reported(monkeypatch):
    import redop.rewriting as rw

    monkeypatch.setattr(rw, "is_confluent", lambda F: True)
    with pytest.raises(ConsistencyError):
        rw.is_locally_confluent(P())


@given(families(), st.data())
def test_steps_decrease_and_stay_in_class(F, data):
    amb = F[0].ambient
    v = data.draw(vectors(amb))
    tr = trace_normal_form(F, v)
    prev = v
    ker = kernel_basis(meet(F))
    for _, w in tr.steps:
        assert multiset_lt(w, prev) and multiset_leq(w, prev)
        assert ker.contains(v - w)
        prev = w
    assert is_normal_form(F, tr.result)


@given(families(), st.data())
def test_confluent_families_are_strategy_independent(F, data):
    amb = F[0].ambient
    v = data.draw(vectors(amb))
    if not is_confluent(F):
        F = list(F) + [f_complement(F)]
    W = meet(F)
    for s in ("first", list(range(len(F)))[::-1]):
        assert normal_form(F, v, s) == apply(W, v)
    assert all_normal_forms(F, v) == {apply(W, v)}


@given(families())
def test_four_characterisations_agree(F):
    c = is_confluent(F)
    assert is_locally_confluent(F, cross_check=True) == c
    assert has_church_rosser(F, cross_check=True) == c
    assert (unique_normal_form_witness(F) is None) == c


@given(families(), st.data())
def test_reach_sets_match_brute(F, data):
    amb = F[0].ambient
    v = data.draw(vectors(amb))
    cols = [to_dense(T) for T in F]
    mine = {to_dense_vector(w) for w in reachable(F, v)}
    assert mine == brute.reach(cols, to_dense_vector(v))
    assert {to_dense_vector(w) for w in all_normal_forms(F, v)} == brute.normal_forms(cols, to_dense_vector(v))


def _zigzag_path(F, v1, v2):
    """An explicit zigzag v2 = w0, w1, ..., wk = v1 - nothing searched.

    v1 - v2 is written as a combination of kernel vectors g - T(g); consecutive
    w's differ by a kernel vector of one T, so both rewrite by T to the same
    vector (or are equal)."""
    amb = F[0].ambient
    rows = [(T, gg) for T in F for gg in sorted(T.nred)]
    dense = [to_dense_vector(Vector.gen(amb, gg) - T.image(gg)) for T, gg in rows]
    n = len(amb)
    # solve sum c_j dense_j = v1 - v2 through the nullspace of [dense | -(v1 - v2)]
    target = to_dense_vector(v1 - v2)
    cols = dense + [tuple(-x for x in target)]
    mat = [tuple(col[i] for col in cols) for i in range(n)]
    sols = [s for s in brute.nullspace(mat, len(cols)) if s[-1]]
    assert sols, "v1 - v2 not in the kernel sum"
    s = sols[0]
    coef = [x / s[-1] for x in s[:-1]]
    path = [v2]
    for c, (T, gg) in zip(coef, rows):
        if c:
            path.append(path[-1] + (Vector.gen(amb, gg) - T.image(gg)).scale(c))
    assert path[-1] == v1
    return [(T, gg) for c, (T, gg) in zip(coef, rows) if c], path


@given(families(max_gens=5), st.data())
def test_equivalence_agrees_with_zigzags(F, data):
    amb = F[0].ambient
    v1 = data.draw(vectors(amb))
    # forward direction: a random walk mixing steps and inverse steps stays in the class
    rnd = data.draw(st.randoms(use_true_random=False))
    w = v1
    for _ in range(6):
        T = rnd.choice(list(F))
        if rnd.random() < 0.5 and not T.fixes(w):
            w = apply(T, w)
        elif T.nred:
            gg = rnd.choice(sorted(T.nred))
            w = w + (Vector.gen(amb, gg) - T.image(gg)).scale(rnd.choice([1, -1, 2]))
    assert equivalent(F, v1, w)
    # converse: equivalent vectors are joined by an explicit zigzag of single steps
    v2 = apply(meet(F), v1)
    if v2 != v1:
        used, path = _zigzag_path(F, v1, v2)
        for (T, _), a, b in zip(used, path, path[1:]):
            ta, tb = apply(T, a), apply(T, b)
            assert ta == tb
            for x in (a, b):
                assert x == ta or ta in reachable([T], x)


def test_probe_searches_on_many_random_instances():
    rng = random.Random(11)
    for _ in range(300):
        F = random_family(rng)
        c = is_confluent(F)
        assert (local_confluence_witness(F) is None) == c
        assert (church_rosser_witness(F) is None) == c
