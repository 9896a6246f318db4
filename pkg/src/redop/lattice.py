"""The order on reduction operators, meets and joins, obstructions, confluence."""
from __future__ import annotations

from typing import Iterable, Sequence

from . import kernels
from .basis import ReducedBasis, ReductionOperator, kernel_basis, span_sum, theta
from .core import GenSet, check_same


class OperatorFamily(Sequence):
    """A nonempty finite sequence of reduction operators over one ambient set."""

    __slots__ = ("ambient", "members")

    def __init__(self, members: Iterable[ReductionOperator], ambient: GenSet | None = None):
        members = tuple(members)
        if not members:
            raise ValueError("an operator family must be nonempty")
        ambient = ambient if ambient is not None else members[0].ambient
        for T in members:
            check_same(ambient, T.ambient)
        self.ambient = ambient
        self.members = members

    def __getitem__(self, i):
        return self.members[i]

    def __len__(self) -> int:
        return len(self.members)

    def __add__(self, other: Iterable[ReductionOperator]) -> "OperatorFamily":
        return OperatorFamily(self.members + tuple(other), self.ambient)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorFamily):
            return NotImplemented
        return self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self) -> str:
        return f"OperatorFamily({list(self.members)!r})"


def as_family(F) -> OperatorFamily:
    return F if isinstance(F, OperatorFamily) else OperatorFamily(F)


def leq(T1: ReductionOperator, T2: ReductionOperator) -> bool:
    """T1 ⪯ T2, i.e. ker(T2) ⊆ ker(T1)."""
    check_same(T1.ambient, T2.ambient)
    k1 = kernel_basis(T1)
    return kernel_basis(T2).issubspace(k1)


def leq_by_composition(T1: ReductionOperator, T2: ReductionOperator) -> bool:
    """The same order tested through T1∘T2 = T1."""
    check_same(T1.ambient, T2.ambient)
    for g in range(len(T1.ambient)):
        img2 = T2._images.get(g)
        if img2 is None:
            continue
        lhs = kernels.apply_images(img2, T1._images)
        rhs = T1._images.get(g, {g: 1})
        if lhs != rhs:
            return False
    return True


def kernel_sum(F: Iterable[ReductionOperator]) -> ReducedBasis:
    return span_sum(*(kernel_basis(T) for T in F))


def meet(F: Iterable[ReductionOperator]) -> ReductionOperator:
    """∧F = θ(Σ ker T): one elimination over all kernel bases at once."""
    F = as_family(F)
    return theta(kernel_sum(F))


def intersect(U: ReducedBasis, W: ReducedBasis) -> ReducedBasis:
    """Reduced basis of U ∩ W by Zassenhaus elimination.

    Rows (u, u) and (w, 0) live in a doubled space where the first copy sits
    above the second; after elimination the rows led from the lower copy
    span the intersection.
    """
    check_same(U.ambient, W.ambient)
    rows = kernels.intersect_rows(list(U._rows.values()), list(W._rows.values()), len(U.ambient))
    return ReducedBasis(U.ambient, rows)


def join(T1: ReductionOperator, T2: ReductionOperator) -> ReductionOperator:
    """T1 ∨ T2 = θ(ker T1 ∩ ker T2)."""
    check_same(T1.ambient, T2.ambient)
    return theta(intersect(kernel_basis(T1), kernel_basis(T2)))


def join_all(F: Iterable[ReductionOperator]) -> ReductionOperator:
    F = as_family(F)
    out = F[0]
    for T in F[1:]:
        out = join(out, T)
    return out


def red_family(F: Iterable[ReductionOperator]) -> frozenset:
    F = as_family(F)
    nred = set()
    for T in F:
        nred |= T._images.keys()
    return frozenset(g for g in range(len(F.ambient)) if g not in nred)


def obstructions(F: Iterable[ReductionOperator], wedge: ReductionOperator | None = None) -> frozenset:
    """Obs(F) = Red(F) minus Red(∧F)."""
    F = as_family(F)
    if wedge is None:
        wedge = meet(F)
    return frozenset(g for g in red_family(F) if g in wedge._images)


def is_confluent(F: Iterable[ReductionOperator]) -> bool:
    return not obstructions(F)
