"""Braided products of a pair of reduction operators.

For a pair (T1, T2), ``<T2,T1>^n`` is the alternating product of n factors
ending with T1 on the right (T1 is applied first).  Each generator's two
alternating sequences reach a normal form of the pair after ``n_g`` factors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .basis import LinearMap, ReductionOperator
from .core import Vector, check_same
from .lattice import join


class PairNotConfluent(ValueError):
    pass


@dataclass(frozen=True)
class BraidedPair:
    left: ReductionOperator
    right: ReductionOperator
    forward: LinearMap  # <T2,T1>: T1 applied first
    backward: LinearMap  # <T1,T2>: T2 applied first
    counts: dict  # generator -> n_g

    @property
    def confluent(self) -> bool:
        return self.forward == self.backward


def _step_cap(n: int) -> int:
    return n * (n + 1) + 2


def _fixed_by_both(c: dict, T1: ReductionOperator, T2: ReductionOperator) -> bool:
    return not any(g in T1._images or g in T2._images for g in c)


def _alternate(c: dict, first: ReductionOperator, second: ReductionOperator, n: int) -> dict:
    ops = (first._images, second._images)
    for k in range(n):
        c = kernels.apply_images(c, ops[k % 2])
    return c


def stabilization_count(T1: ReductionOperator, T2: ReductionOperator, g: int) -> int:
    """Least n >= 1 with both alternating products of n factors at a normal form.

    n starts at 1: with n = 0 the dual products would not vanish on
    generators reduced by one operator of the pair.
    """
    cap = _step_cap(len(T1.ambient))
    a = kernels.apply_images({g: Fraction(1)}, T1._images)
    b = kernels.apply_images({g: Fraction(1)}, T2._images)
    n = 1
    while not (_fixed_by_both(a, T1, T2) and _fixed_by_both(b, T1, T2)):
        if n >= cap:
            raise RuntimeError(f"braided products of generator {g} did not stabilize within {cap} factors")
        n += 1
        a = kernels.apply_images(a, (T2 if n % 2 == 0 else T1)._images)
        b = kernels.apply_images(b, (T1 if n % 2 == 0 else T2)._images)
    return n


def braided(T1: ReductionOperator, T2: ReductionOperator) -> BraidedPair:
    check_same(T1.ambient, T2.ambient)
    fwd, bwd, counts = {}, {}, {}
    for g in range(len(T1.ambient)):
        n = stabilization_count(T1, T2, g)
        counts[g] = n
        unit = {g: Fraction(1)}
        fwd[g] = _alternate(unit, T1, T2, n)
        bwd[g] = _alternate(unit, T2, T1, n)
    amb = T1.ambient
    return BraidedPair(T1, T2, LinearMap(amb, fwd), LinearMap(amb, bwd), counts)


def pair_confluent(T1: ReductionOperator, T2: ReductionOperator) -> bool:
    return braided(T1, T2).confluent


def alternating_power(T1: ReductionOperator, T2: ReductionOperator, n: int, v: Vector) -> Vector:
    """<T2,T1>^n(v): n alternating factors, T1 applied first."""
    return Vector._wrap(v.ambient, _alternate(v._c, T1, T2, n))


def _complement_images(T: ReductionOperator, n: int) -> dict:
    # images of id - T on every generator
    out = {}
    for g in range(n):
        img = {h: -c for h, c in T._images.get(g, {g: Fraction(1)}).items()}
        out[g] = kernels.add_scaled({g: Fraction(1)}, img, Fraction(1))
    return out


def dual_power_by_composition(T1: ReductionOperator, T2: ReductionOperator, n: int, v: Vector) -> Vector:
    """<id-T2, id-T1>^n(v) by composing the complementary projectors."""
    size = len(T1.ambient)
    maps = (_complement_images(T1, size), _complement_images(T2, size))
    c = v._c
    for k in range(n):
        c = kernels.apply_images(c, maps[k % 2])
    return Vector._wrap(v.ambient, c)


def dual_power_by_sum(T1: ReductionOperator, T2: ReductionOperator, n: int, v: Vector) -> Vector:
    """<id-T2, id-T1>^n(v) through the alternating-sum identity

    id + sum_{0<i<n} (-1)^i (<T1,T2>^i + <T2,T1>^i) + (-1)^n <T2,T1>^n   (n >= 1).
    """
    if n == 0:
        return v
    acc = dict(v._c)
    for i in range(1, n):
        sign = Fraction(-1) ** i
        acc = kernels.add_scaled(acc, _alternate(v._c, T2, T1, i), sign)
        acc = kernels.add_scaled(acc, _alternate(v._c, T1, T2, i), sign)
    acc = kernels.add_scaled(acc, _alternate(v._c, T1, T2, n), Fraction(-1) ** n)
    return Vector._wrap(v.ambient, acc)


def dual_braided(T1: ReductionOperator, T2: ReductionOperator, counts: dict | None = None,
                 method: str = "sum") -> tuple[LinearMap, LinearMap]:
    """The two dual braided products, stabilized per generator at n_g."""
    check_same(T1.ambient, T2.ambient)
    amb = T1.ambient
    if counts is None:
        counts = {g: stabilization_count(T1, T2, g) for g in range(len(amb))}
    power = dual_power_by_sum if method == "sum" else dual_power_by_composition
    if method not in ("sum", "compose"):
        raise ValueError(f"unknown method {method!r}")
    fwd, bwd = {}, {}
    for g in range(len(amb)):
        e = Vector.gen(amb, g)
        fwd[g] = power(T1, T2, counts[g], e)._c
        bwd[g] = power(T2, T1, counts[g], e)._c
    return LinearMap(amb, fwd), LinearMap(amb, bwd)


def join_via_duality(T1: ReductionOperator, T2: ReductionOperator) -> ReductionOperator:
    """T1 ∨ T2 = id - <id-T2, id-T1> for a confluent pair."""
    bp = braided(T1, T2)
    if not bp.confluent:
        raise PairNotConfluent("pair not confluent; dual braided products disagree")
    fwd, bwd = dual_braided(T1, T2, bp.counts)
    if fwd != bwd:
        raise PairNotConfluent("pair not confluent; dual braided products disagree")
    amb = T1.ambient
    images = {}
    for g in range(len(amb)):
        d = fwd._images.get(g, {g: Fraction(1)})
        images[g] = kernels.add_scaled({g: Fraction(1)}, d, Fraction(-1))
    return ReductionOperator(amb, images)


def join_checked(T1: ReductionOperator, T2: ReductionOperator) -> ReductionOperator:
    """Lattice join, cross-validated against the dual braided form when the pair is confluent."""
    j = join(T1, T2)
    if pair_confluent(T1, T2) and join_via_duality(T1, T2) != j:
        raise RuntimeError("join through duality disagrees with the kernel intersection")
    return j
