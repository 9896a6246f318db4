"""Reduction operators relative to a partial order on the generators.

Without a total order a subspace need not have a reduced basis, so meets
only exist for *completable* families.  Operators here are plain image maps
checked against a ``PartialOrder``; the total-order machinery is not reused
because its validation relies on index order.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Mapping, Sequence

from . import kernels
from .basis import LinearMap, ReductionOperator
from .core import GenSet, Vector, check_same

MAX_SEARCH_GENERATORS = 16
# below this size a coefficient sweep backs up the pair-sum probes
SWEEP_LIMIT = 6


class NotCompletable(ValueError):
    pass


class PartialOrder:
    """Strict partial order on ``range(n)``, stored transitively closed."""

    __slots__ = ("n", "_below")

    def __init__(self, n: int, below: Sequence[frozenset]):
        self.n = n
        self._below = tuple(below)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "PartialOrder":
        """Order generated by ``a < b`` for each pair; raises on a cycle."""
        below = _closure(n, pairs)
        if below is None:
            raise ValueError("order pairs contain a cycle")
        return cls(n, below)

    @classmethod
    def total(cls, n: int) -> "PartialOrder":
        return cls(n, [frozenset(range(g)) for g in range(n)])

    def lt(self, a: int, b: int) -> bool:
        return a in self._below[b]

    def down(self, g: int) -> frozenset:
        """Generators strictly below g."""
        return self._below[g]

    def pairs(self) -> list[tuple[int, int]]:
        return sorted((a, b) for b in range(self.n) for a in self._below[b])

    def covers(self) -> list[tuple[int, int]]:
        """The Hasse diagram: pairs a < b with nothing in between."""
        out = []
        for b in range(self.n):
            for a in self._below[b]:
                if not any(a in self._below[c] for c in self._below[b]):
                    out.append((a, b))
        return sorted(out)

    def is_total(self) -> bool:
        return all(self.lt(a, b) or self.lt(b, a) for a, b in combinations(range(self.n), 2))

    def __le__(self, other: "PartialOrder") -> bool:
        """Containment of the relations."""
        return self.n == other.n and all(x <= y for x, y in zip(self._below, other._below))

    def __eq__(self, other) -> bool:
        return isinstance(other, PartialOrder) and self.n == other.n and self._below == other._below

    def __hash__(self):
        return hash((self.n, self._below))

    def __repr__(self) -> str:
        return f"PartialOrder({self.n}, {self.covers()})"


def _closure(n: int, pairs: Iterable[tuple[int, int]]):
    """Transitive closure as per-element down-sets, or None on a cycle
    (including a self-loop)."""
    succ = [set() for _ in range(n)]
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"order pair ({a}, {b}) out of range")
        succ[b].add(a)  # a is directly below b
    below = []
    for g in range(n):
        seen = set()
        todo = deque(succ[g])
        while todo:
            h = todo.popleft()
            if h not in seen:
                seen.add(h)
                todo.extend(succ[h])
        if g in seen:
            return None
        below.append(frozenset(seen))
    return below


def _images_of(T) -> dict:
    if isinstance(T, (LinearMap, ReductionOperator, GeneralReductionOperator)):
        return T._images
    return {g: (img._c if isinstance(img, Vector) else dict(img)) for g, img in T.items()}


def _is_idempotent(images: Mapping[int, dict]) -> bool:
    for g, img in images.items():
        if kernels.apply_images(img, images) != {h: c for h, c in img.items() if c}:
            return False
    return True


def _order_violations(images: Mapping[int, dict], order: PartialOrder) -> list[tuple[int, int]]:
    return [(g, h) for g, img in sorted(images.items()) for h in sorted(img) if not order.lt(h, g)]


class GeneralReductionOperator:
    """Idempotent T with T(g) = g or supp T(g) strictly below g."""

    __slots__ = ("ambient", "order", "_images")

    def __init__(self, ambient: GenSet, order: PartialOrder, images: Mapping[int, Vector | dict]):
        if order.n != len(ambient):
            raise ValueError("order and generator set differ in size")
        imgs = {}
        for g, img in images.items():
            c = img._c if isinstance(img, Vector) else {h: Fraction(x) for h, x in img.items() if x}
            if c != {g: 1}:
                imgs[g] = dict(c)
        bad = _order_violations(imgs, order)
        if bad:
            g, h = bad[0]
            raise ValueError(f"image of {ambient.label(g)} contains {ambient.label(h)}, which is not below it")
        if not _is_idempotent(imgs):
            raise ValueError("operator is not idempotent")
        self.ambient = ambient
        self.order = order
        self._images = imgs

    @property
    def nred(self) -> frozenset:
        return frozenset(self._images)

    @property
    def red(self) -> frozenset:
        return frozenset(g for g in range(len(self.ambient)) if g not in self._images)

    def image(self, g: int) -> Vector:
        img = self._images.get(g)
        return Vector._wrap(self.ambient, dict(img) if img is not None else {g: Fraction(1)})

    def __call__(self, v: Vector) -> Vector:
        check_same(self.ambient, v.ambient)
        return Vector._wrap(self.ambient, kernels.apply_images(v._c, self._images))

    def kernel_rows(self) -> list[dict]:
        return [kernels.add_scaled({g: Fraction(1)}, img, Fraction(-1)) for g, img in self._images.items()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneralReductionOperator):
            return NotImplemented
        return self.ambient == other.ambient and self._images == other._images

    def __hash__(self):
        return hash(frozenset((g, frozenset(r.items())) for g, r in self._images.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{self.ambient.label(g)} -> {self.image(g)}" for g in sorted(self._images))
        return f"GeneralReductionOperator({body or 'id'})"


def order_from_projectors(F: Sequence) -> PartialOrder | None:
    """The relation <_F (g' <_F g when some T moves g and g' occurs in T(g)),
    transitively closed; None when it is not antisymmetric."""
    F = list(F)
    if not F:
        raise ValueError("an operator family must be nonempty")
    n = len(F[0].ambient)
    pairs = []
    for i, T in enumerate(F):
        images = _images_of(T)
        if not _is_idempotent(images):
            raise ValueError(f"operator {i} is not idempotent")
        pairs.extend((h, g) for g, img in images.items() for h in img)
    below = _closure(n, pairs)
    return None if below is None else PartialOrder(n, below)


def is_general_reduction_operator(T, order: PartialOrder) -> bool:
    images = _images_of(T)
    images = {g: c for g, c in images.items() if c != {g: 1}}
    return _is_idempotent(images) and not _order_violations(images, order)


def general_family(F: Sequence, order: PartialOrder) -> list[GeneralReductionOperator]:
    """Validate every member against the order."""
    out = []
    for i, T in enumerate(F):
        if isinstance(T, GeneralReductionOperator) and T.order == order:
            out.append(T)
            continue
        try:
            out.append(GeneralReductionOperator(T.ambient, order, _images_of(T)))
        except ValueError as e:
            raise ValueError(f"operator {i}: {e}") from None
    if not out:
        raise ValueError("an operator family must be nonempty")
    for T in out[1:]:
        check_same(out[0].ambient, T.ambient)
    return out


def _kernel_sum_rows(F: Sequence[GeneralReductionOperator]) -> list[dict]:
    basis: dict = {}
    for T in F:
        for r in T.kernel_rows():
            kernels.insert_row(basis, r)
    return list(basis.values())


def _rref_on(rows: list[dict], pivots: Sequence[int]):
    """Basis of span(rows) in echelon form on the given pivot columns, or None
    when those columns do not form an invertible block."""
    rows = [dict(r) for r in rows]
    out = {}
    for p in pivots:
        k = next((i for i, r in enumerate(rows) if r.get(p)), None)
        if k is None:
            return None
        r = rows.pop(k)
        inv = 1 / r[p]
        r = {h: c * inv for h, c in r.items()}
        rows = [kernels.add_scaled(x, r, -x[p]) if x.get(p) else x for x in rows]
        for q in out:
            if out[q].get(p):
                out[q] = kernels.add_scaled(out[q], r, -out[q][p])
        out[p] = r
    return out


def is_completable(F: Sequence, order: PartialOrder) -> GeneralReductionOperator | None:
    """∧F when some reduction operator has kernel Σ ker T, else None.

    The search runs over candidate sets B of non-reduced generators (the
    image being K^(G minus B)), lexicographically, within the support of the
    kernel sum.  Operators with equal kernels are equal, so the witness is
    unique when it exists.
    """
    F = general_family(F, order)
    amb = F[0].ambient
    if len(amb) > MAX_SEARCH_GENERATORS:
        raise ValueError(f"completability search is limited to {MAX_SEARCH_GENERATORS} generators")
    rows = _kernel_sum_rows(F)
    d = len(rows)
    supp = sorted(set().union(*rows)) if rows else []
    for B in combinations(supp, d):
        # each nonreduced generator must sit above everything else it meets
        echelon = _rref_on(rows, B)
        if echelon is None:
            continue
        images = {}
        ok = True
        for b, r in echelon.items():
            rest = {h: -c for h, c in r.items() if h != b}
            if not all(order.lt(h, b) for h in rest):
                ok = False
                break
            images[b] = rest
        if ok:
            return GeneralReductionOperator(amb, order, images)
    return None


def _require_meet(F, order):
    W = is_completable(F, order)
    if W is None:
        raise NotCompletable("family not completable; confluence undefined")
    return W


def general_obstructions(F: Sequence, order: PartialOrder) -> frozenset:
    F = general_family(F, order)
    W = _require_meet(F, order)
    red = frozenset(range(len(F[0].ambient)))
    for T in F:
        red &= T.red
    return frozenset(g for g in red if g in W._images)


def _step_targets(F, c: dict) -> list[dict]:
    out = []
    for T in F:
        if any(g in T._images for g in c):
            out.append(kernels.apply_images(c, T._images))
    return out


def _key(c: dict):
    return frozenset(c.items())


def _reachable(F, c: dict, cache: dict) -> dict:
    k = _key(c)
    hit = cache.get(k)
    if hit is not None:
        return hit
    seen = {k: c}
    todo = deque([c])
    while todo:
        x = todo.popleft()
        for y in _step_targets(F, x):
            ky = _key(y)
            if ky not in seen:
                seen[ky] = y
                todo.append(y)
    cache[k] = seen
    return seen


def _probes(n: int, sweep: bool):
    for g in range(n):
        yield {g: Fraction(1)}
    for a, b in combinations(range(n), 2):
        yield {a: Fraction(1), b: Fraction(1)}
    if sweep:
        for cs in product((0, 1, -1, 2), repeat=n):
            c = {g: Fraction(x) for g, x in enumerate(cs) if x}
            if len(c) > 2:
                yield c


@dataclass(frozen=True)
class GeneralConfluenceReport:
    confluent: bool
    church_rosser: bool
    normalising: bool
    relation_confluent: bool
    obstructions: frozenset
    meet: GeneralReductionOperator
    witness: Vector | None = None

    def as_dict(self) -> dict:
        return {
            "confluent": self.confluent,
            "church_rosser": self.church_rosser,
            "normalising": self.normalising,
            "relation_confluent": self.relation_confluent,
        }


def general_confluence(F: Sequence, order: PartialOrder) -> GeneralConfluenceReport:
    """Evaluate the three equivalent assertions by finite search and check
    that they agree: (confluent and normalising), Church-Rosser, confluence of
    the rewriting relation."""
    F = general_family(F, order)
    W = _require_meet(F, order)
    amb = F[0].ambient
    n = len(amb)
    red = frozenset(range(n))
    for T in F:
        red &= T.red
    obs = frozenset(g for g in red if g in W._images)
    cache: dict = {}

    normalising = True
    church_rosser = True
    relation_confluent = True
    witness = None
    for c in _probes(n, sweep=bool(obs) and n <= SWEEP_LIMIT):
        reach = _reachable(F, c, cache)
        nfs = [x for x in reach.values() if not any(g in T._images for T in F for g in x)]
        if not nfs:
            normalising = False
        if church_rosser and _key(kernels.apply_images(c, W._images)) not in reach:
            church_rosser = False
            witness = witness or Vector._wrap(amb, c)
        if relation_confluent and len(nfs) > 1:
            relation_confluent = False
            witness = Vector._wrap(amb, c)
        if not relation_confluent and not church_rosser:
            break
    confluent = not obs
    if not ((confluent and normalising) == church_rosser == relation_confluent):
        from .rewriting import ConsistencyError
        raise ConsistencyError(
            f"confluence assertions disagree: confluent={confluent}, normalising={normalising}, "
            f"church_rosser={church_rosser}, relation_confluent={relation_confluent}"
        )
    return GeneralConfluenceReport(confluent, church_rosser, normalising, relation_confluent, obs, W, witness)


def general_leq(T1: GeneralReductionOperator, T2: GeneralReductionOperator) -> bool:
    """T1 ⪯ T2 iff ker T2 ⊆ ker T1."""
    check_same(T1.ambient, T2.ambient)
    basis: dict = {}
    for r in T1.kernel_rows():
        kernels.insert_row(basis, r)
    return all(not kernels.remainder(r, basis) for r in T2.kernel_rows())


def general_is_complement(F: Sequence, C, order: PartialOrder) -> bool:
    """∧F ⪯ C and Obs(F) ⊆ Nred(C)."""
    F = general_family(F, order)
    W = _require_meet(F, order)
    C = general_family([C], order)[0]
    return general_leq(W, C) and general_obstructions(F, order) <= C.nred


def from_total(T: ReductionOperator) -> GeneralReductionOperator:
    """View a total-order operator as a general one over the index order."""
    return GeneralReductionOperator(T.ambient, PartialOrder.total(len(T.ambient)), T._images)
