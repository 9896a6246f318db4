"""Rewriting with a family of reduction operators.

``v ->_F T(v)`` whenever some ``T`` in the family moves ``v``.  Every step
strictly decreases the support in the multiset order, so all searches here
terminate on a finite generator set.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence, Union

from .basis import ReductionOperator, apply, kernel_basis
from .core import Vector, check_same, multiset_lt
from .lattice import OperatorFamily, as_family, is_confluent, meet

Strategy = Union[str, Sequence[int]]

# cross-checks run by default only on ambient sets up to this size
CROSS_CHECK_LIMIT = 12


class ConsistencyError(RuntimeError):
    """The algebraic verdict and the exhaustive search disagree."""


@dataclass(frozen=True)
class RewriteTrace:
    start: Vector
    steps: tuple = field(default_factory=tuple)  # ((operator index, vector), ...)

    @property
    def result(self) -> Vector:
        return self.steps[-1][1] if self.steps else self.start


def parse_strategy(strategy: Strategy, size: int) -> tuple:
    """Operator indices in the order they are tried.

    ``"first"`` tries operators by index; ``"priority:2,0"`` (or ``[2, 0]``)
    tries the listed ones first and then the rest by index.
    """
    if isinstance(strategy, str):
        s = strategy.strip()
        if s == "first":
            return tuple(range(size))
        if not s.startswith("priority:"):
            raise ValueError(f"unknown strategy {strategy!r}")
        body = s[len("priority:"):]
        try:
            order = [int(x) for x in body.split(",") if x.strip()]
        except ValueError:
            raise ValueError(f"bad priority list in {strategy!r}") from None
    else:
        order = [int(x) for x in strategy]
    for i in order:
        if not 0 <= i < size:
            raise ValueError(f"operator index {i} out of range for a family of {size}")
    if len(set(order)) != len(order):
        raise ValueError("priority list repeats an operator")
    return tuple(order) + tuple(i for i in range(size) if i not in order)


def rewrite_step(F, v: Vector, strategy: Strategy = "first"):
    """One ``->_F`` step as ``(operator index, T(v))``, or None at a normal form."""
    F = as_family(F)
    check_same(F.ambient, v.ambient)
    for i in parse_strategy(strategy, len(F)):
        T = F[i]
        if not T.fixes(v):
            return i, apply(T, v)
    return None


def is_normal_form(F, v: Vector) -> bool:
    return all(T.fixes(v) for T in as_family(F))


def trace_normal_form(F, v: Vector, strategy: Strategy = "first") -> RewriteTrace:
    F = as_family(F)
    check_same(F.ambient, v.ambient)
    order = parse_strategy(strategy, len(F))
    steps = []
    cur = v
    while True:
        for i in order:
            if not F[i].fixes(cur):
                nxt = apply(F[i], cur)
                if not multiset_lt(nxt, cur):
                    raise ConsistencyError(f"step by operator {i} did not decrease {cur}")
                steps.append((i, nxt))
                cur = nxt
                break
        else:
            return RewriteTrace(v, tuple(steps))


def normal_form(F, v: Vector, strategy: Strategy = "first") -> Vector:
    return trace_normal_form(F, v, strategy).result


def successors(F: OperatorFamily, v: Vector) -> list:
    return [apply(T, v) for T in F if not T.fixes(v)]


def reachable(F, v: Vector) -> frozenset:
    """All vectors ``v'`` with ``v ->*_F v'`` (breadth-first)."""
    F = as_family(F)
    check_same(F.ambient, v.ambient)
    seen = {v}
    todo = deque([v])
    while todo:
        x = todo.popleft()
        for y in successors(F, x):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def all_normal_forms(F, v: Vector) -> frozenset:
    F = as_family(F)
    return frozenset(x for x in reachable(F, v) if is_normal_form(F, x))


def equivalent(F, v1: Vector, v2: Vector) -> bool:
    """v1 ↔*_F v2, decided as v1 - v2 ∈ ker(∧F)."""
    F = as_family(F)
    return kernel_basis(meet(F)).contains(v1 - v2)


def class_minimum(F, v: Vector) -> Vector:
    """The smallest element of the class of ``v``: (∧F)(v)."""
    return apply(meet(F), v)


def default_probes(F: OperatorFamily) -> list:
    """Every generator, then every sum of two distinct generators."""
    amb = F.ambient
    gens = [Vector.gen(amb, g) for g in range(len(amb))]
    return gens + [a + b for a, b in combinations(gens, 2)]


class _Reach:
    def __init__(self, F):
        self.F = F
        self.cache = {}

    def __call__(self, v):
        r = self.cache.get(v)
        if r is None:
            r = self.cache[v] = reachable(self.F, v)
        return r


def local_confluence_witness(F, probes: Iterable[Vector] | None = None):
    """First ``(v, i, j)`` with T_i(v), T_j(v) not joinable, else None."""
    F = as_family(F)
    reach = _Reach(F)
    for v in default_probes(F) if probes is None else probes:
        for i, j in combinations(range(len(F)), 2):
            a, b = apply(F[i], v), apply(F[j], v)
            if a == b:
                continue
            if not reach(a) & reach(b):
                return v, i, j
    return None


def church_rosser_witness(F, probes: Iterable[Vector] | None = None):
    """First probe ``v`` that does not rewrite into (∧F)(v), else None."""
    F = as_family(F)
    wedge = meet(F)
    for v in default_probes(F) if probes is None else probes:
        if apply(wedge, v) not in reachable(F, v):
            return v
    return None


def unique_normal_form_witness(F, probes: Iterable[Vector] | None = None):
    """First probe with more than one normal form, else None."""
    F = as_family(F)
    for v in default_probes(F) if probes is None else probes:
        if len(all_normal_forms(F, v)) > 1:
            return v
    return None


def _cross(F, cross_check):
    return len(F.ambient) <= CROSS_CHECK_LIMIT if cross_check is None else cross_check


def is_locally_confluent(F, cross_check: bool | None = None) -> bool:
    """Decided through Newman's lemma; the witness search must agree."""
    F = as_family(F)
    verdict = is_confluent(F)
    if _cross(F, cross_check):
        found = local_confluence_witness(F)
        if (found is None) != verdict:
            raise ConsistencyError(f"local confluence search disagrees with Obs(F): witness {found}")
    return verdict


def has_church_rosser(F, cross_check: bool | None = None) -> bool:
    F = as_family(F)
    verdict = is_confluent(F)
    if _cross(F, cross_check):
        found = church_rosser_witness(F)
        if (found is None) != verdict:
            raise ConsistencyError(f"Church-Rosser search disagrees with Obs(F): witness {found}")
    return verdict
