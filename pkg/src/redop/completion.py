"""Complements of a family and its canonical completion."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .basis import ReductionOperator
from .core import check_same
from .lattice import OperatorFamily, as_family, join, leq, meet, obstructions, red_family
from .pairs import join_via_duality


@dataclass(frozen=True)
class CompletionReport:
    family: OperatorFamily
    meet: ReductionOperator
    obstructions: frozenset
    complement: ReductionOperator
    completed_family: OperatorFamily

    @property
    def confluent(self) -> bool:
        return not obstructions(self.completed_family, self.meet)


def residual(F) -> ReductionOperator:
    """θ(K^(Red F)): kills every generator of Red(F), fixes the others."""
    F = as_family(F)
    return ReductionOperator(F.ambient, {g: {} for g in red_family(F)})


def _closed_form(F: OperatorFamily, wedge: ReductionOperator, obs: frozenset) -> ReductionOperator:
    # C(g) = g - (id - U)(id - ∧F)(g) on obstructions, identity elsewhere
    red = red_family(F)
    images = {}
    for g in obs:
        d = kernels.add_scaled({g: Fraction(1)}, wedge._images.get(g, {g: Fraction(1)}), Fraction(-1))
        d = {h: c for h, c in d.items() if h in red}  # id - U projects onto K^(Red F)
        images[g] = kernels.add_scaled({g: Fraction(1)}, d, Fraction(-1))
    return ReductionOperator(F.ambient, images)


def f_complement(F, *, verify: bool = True) -> ReductionOperator:
    """C^F = (∧F) ∨ (∨F̄), the canonical minimal complement.

    With ``verify`` the lattice join is checked against the closed form on
    obstructions and against the join through dual braided products.
    """
    F = as_family(F)
    wedge = meet(F)
    U = residual(F)
    C = join(wedge, U)
    if verify:
        obs = obstructions(F, wedge)
        if _closed_form(F, wedge, obs) != C:
            raise RuntimeError("F-complement: closed form disagrees with the lattice join")
        if join_via_duality(wedge, U) != C:
            raise RuntimeError("F-complement: dual braided join disagrees with the lattice join")
    return C


def is_complement(F, C: ReductionOperator) -> bool:
    """(∧F) ∧ C = ∧F and Obs(F) ⊆ Nred(C)."""
    F = as_family(F)
    check_same(F.ambient, C.ambient)
    wedge = meet(F)
    return leq(wedge, C) and obstructions(F, wedge) <= C.nred


def is_minimal_complement(F, C: ReductionOperator) -> bool:
    F = as_family(F)
    return is_complement(F, C) and obstructions(F) == C.nred


def complete(F) -> CompletionReport:
    F = as_family(F)
    wedge = meet(F)
    obs = obstructions(F, wedge)
    C = f_complement(F)
    done = F + (C,)
    if meet(done) != wedge:
        raise RuntimeError("completion changed the meet")
    return CompletionReport(F, wedge, obs, C, done)
