"""Reduced bases and the bijection between subspaces and reduction operators."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import kernels
from .core import GenSet, ScalarLike, Vector, check_same, to_scalar


class InvalidOperatorError(ValueError):
    pass


class ReductionMatrixError(InvalidOperatorError):
    """A matrix violates one of the three reduction-matrix conditions."""

    def __init__(self, condition: int, message: str, row: int | None = None, col: int | None = None):
        super().__init__(f"condition {condition} violated: {message}")
        self.condition = condition
        self.row = row
        self.col = col


class ReducedBasis:
    """The reduced basis ``(e_g)`` of a subspace, keyed by leading generator."""

    __slots__ = ("ambient", "_rows")

    def __init__(self, ambient: GenSet, rows: dict):
        # rows must already be a reduced basis; use reduce_basis() otherwise
        self.ambient = ambient
        self._rows = rows

    @property
    def leads(self) -> tuple:
        return tuple(sorted(self._rows))

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __iter__(self):
        return iter(self.leads)

    def __getitem__(self, g: int) -> Vector:
        return Vector._wrap(self.ambient, dict(self._rows[g]))

    def __contains__(self, g) -> bool:
        return g in self._rows

    def vectors(self) -> list[Vector]:
        return [self[g] for g in self.leads]

    def remainder(self, v: Vector) -> Vector:
        check_same(self.ambient, v.ambient)
        return Vector._wrap(self.ambient, kernels.remainder(v._c, self._rows))

    def contains(self, v: Vector) -> bool:
        """Membership of ``v`` in the spanned subspace."""
        check_same(self.ambient, v.ambient)
        return not kernels.remainder(v._c, self._rows)

    def issubspace(self, other: "ReducedBasis") -> bool:
        check_same(self.ambient, other.ambient)
        return all(not kernels.remainder(r, other._rows) for r in self._rows.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReducedBasis):
            return NotImplemented
        return self.ambient == other.ambient and self._rows == other._rows

    def __hash__(self):
        return hash(frozenset((g, frozenset(r.items())) for g, r in self._rows.items()))

    def __repr__(self) -> str:
        return "ReducedBasis{" + ", ".join(str(v) for v in self.vectors()) + "}"


def reduce_basis(vectors: Iterable[Vector], ambient: GenSet | None = None) -> ReducedBasis:
    """The unique reduced basis of the span of ``vectors``.

    Zero vectors and linear redundancy are ignored. ``ambient`` is required
    only when ``vectors`` is empty.
    """
    vectors = list(vectors)
    if ambient is None:
        if not vectors:
            raise ValueError("ambient generator set needed for an empty family")
        ambient = vectors[0].ambient
    for v in vectors:
        check_same(ambient, v.ambient)
    return ReducedBasis(ambient, kernels.reduce_rows([v._c for v in vectors]))


def span_sum(*bases: ReducedBasis) -> ReducedBasis:
    ambient = bases[0].ambient
    rows = []
    for b in bases:
        check_same(ambient, b.ambient)
        rows.extend(b._rows.values())
    return ReducedBasis(ambient, kernels.reduce_rows(rows))


class LinearMap:
    """Endomorphism of K^(G) given by the images that differ from the identity."""

    __slots__ = ("ambient", "_images")

    def __init__(self, ambient: GenSet, images: Mapping[int, Vector | dict]):
        imgs = {}
        for g, img in images.items():
            c = img._c if isinstance(img, Vector) else img
            if c != {g: 1}:
                imgs[g] = dict(c)
        self.ambient = ambient
        self._images = imgs

    def image(self, g: int) -> Vector:
        img = self._images.get(g)
        return Vector._wrap(self.ambient, dict(img) if img is not None else {g: Fraction(1)})

    def __call__(self, v: Vector) -> Vector:
        check_same(self.ambient, v.ambient)
        return Vector._wrap(self.ambient, kernels.apply_images(v._c, self._images))

    def moved(self) -> frozenset:
        """Generators whose image differs from themselves."""
        return frozenset(self._images)

    def matrix(self) -> list[list[Fraction]]:
        return _dense(self.ambient, self._images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (LinearMap, ReductionOperator)):
            return NotImplemented
        return self.ambient == other.ambient and self._images == other._images

    def __hash__(self):
        return hash(frozenset((g, frozenset(r.items())) for g, r in self._images.items()))

    def as_operator(self) -> "ReductionOperator":
        return ReductionOperator(self.ambient, self._images)

    def __repr__(self) -> str:
        body = ", ".join(f"{self.ambient.label(g)} -> {self.image(g)}" for g in sorted(self._images))
        return f"LinearMap({body or 'id'})"


def _dense(ambient: GenSet, images: dict) -> list[list[Fraction]]:
    n = len(ambient)
    m = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        img = images.get(j)
        if img is None:
            m[j][j] = Fraction(1)
        else:
            for i, c in img.items():
                m[i][j] = c
    return m


class ReductionOperator:
    """Idempotent order-decreasing endomorphism of K^(G).

    Only the images of non-reduced generators are stored; every other
    generator is fixed.
    """

    __slots__ = ("ambient", "_images", "_hash")

    def __init__(self, ambient: GenSet, images: Mapping[int, Vector | dict] | None = None):
        imgs = {}
        for g, img in (images or {}).items():
            c = img._c if isinstance(img, Vector) else img
            if isinstance(img, Vector):
                check_same(ambient, img.ambient)
            if not isinstance(g, int) or not 0 <= g < len(ambient):
                raise InvalidOperatorError(f"generator index {g!r} out of range")
            c = {h: to_scalar(x) for h, x in c.items()}
            c = {h: x for h, x in c.items() if x}
            if c == {g: 1}:
                continue
            imgs[g] = c
        for g, img in imgs.items():
            for h in img:
                if not isinstance(h, int) or h < 0:
                    raise InvalidOperatorError(f"bad generator index {h!r} in image of {ambient.label(g)}")
                if h >= g:
                    raise InvalidOperatorError(
                        f"image of {ambient.label(g)} contains {ambient.label(h)}, which is not smaller"
                    )
                if h in imgs:
                    raise InvalidOperatorError(
                        f"image of {ambient.label(g)} contains the non-reduced generator "
                        f"{ambient.label(h)}; the map is not idempotent"
                    )
        self.ambient = ambient
        self._images = imgs
        self._hash = None

    @classmethod
    def identity(cls, ambient: GenSet) -> "ReductionOperator":
        return cls(ambient, {})

    @classmethod
    def zero(cls, ambient: GenSet) -> "ReductionOperator":
        op = cls(ambient, {})
        op._images = {g: {} for g in range(len(ambient))}
        return op

    @classmethod
    def from_rules(cls, ambient: GenSet, rules: Mapping[str, Iterable[tuple[ScalarLike, str]]]) -> "ReductionOperator":
        """Build from ``{label: [(coef, label), ...]}``."""
        return cls(ambient, {ambient.index(k): Vector.from_labels(ambient, v) for k, v in rules.items()})

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
        return apply(self, v)

    def fixes(self, v: Vector) -> bool:
        """True when ``v`` lies in K^(Red T)."""
        return not any(g in self._images for g in v._c)

    def matrix(self) -> list[list[Fraction]]:
        """Dense matrix, column j holding the coefficients of T(g_j)."""
        return _dense(self.ambient, self._images)

    def as_map(self) -> LinearMap:
        return LinearMap(self.ambient, self._images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (ReductionOperator, LinearMap)):
            return NotImplemented
        return self.ambient == other.ambient and self._images == other._images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset((g, frozenset(r.items())) for g, r in self._images.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._images:
            return "ReductionOperator(id)"
        body = ", ".join(f"{self.ambient.label(g)} -> {self.image(g)}" for g in sorted(self._images))
        return f"ReductionOperator({body})"


def theta(V: ReducedBasis) -> ReductionOperator:
    """The unique reduction operator whose kernel is span(V)."""
    images = {}
    for g, e in V._rows.items():
        img = {h: -c for h, c in e.items() if h != g}
        images[g] = img
    op = ReductionOperator.__new__(ReductionOperator)
    op.ambient = V.ambient
    op._images = images
    op._hash = None
    return op


def kernel_basis(T: ReductionOperator) -> ReducedBasis:
    """{g - T(g) : g in Nred(T)}, which is already reduced."""
    rows = {}
    for g, img in T._images.items():
        e = {h: -c for h, c in img.items()}
        e[g] = Fraction(1)
        rows[g] = e
    return ReducedBasis(T.ambient, rows)


def apply(T: ReductionOperator | LinearMap, v: Vector) -> Vector:
    check_same(T.ambient, v.ambient)
    return Vector._wrap(T.ambient, kernels.apply_images(v._c, T._images))


def from_matrix(M: Sequence[Sequence[ScalarLike]], ambient: GenSet) -> ReductionOperator:
    """Validate a reduction matrix (column j = image of g_j) and wrap it."""
    n = len(ambient)
    if len(M) != n or any(len(row) != n for row in M):
        raise ReductionMatrixError(0, f"matrix must be {n}x{n}")
    A = [[to_scalar(x) for x in row] for row in M]
    for i in range(n):
        d = A[i][i]
        if d not in (0, 1):
            raise ReductionMatrixError(1, f"diagonal entry ({i + 1},{i + 1}) is {d}, not 0 or 1", i, i)
        for j in range(i):
            if A[i][j]:
                raise ReductionMatrixError(1, f"entry ({i + 1},{j + 1}) below the diagonal is nonzero", i, j)
    for i in range(n):
        if A[i][i] == 0:
            for j in range(n):
                if j != i and A[i][j]:
                    raise ReductionMatrixError(
                        2, f"row {i + 1} has diagonal 0 but entry ({i + 1},{j + 1}) is nonzero", i, j
                    )
        else:
            for k in range(n):
                if k != i and A[k][i]:
                    raise ReductionMatrixError(
                        3, f"column {i + 1} has diagonal 1 but entry ({k + 1},{i + 1}) is nonzero", k, i
                    )
    images = {}
    for j in range(n):
        if A[j][j] == 0:
            images[j] = {i: A[i][j] for i in range(n) if A[i][j]}
    return ReductionOperator(ambient, images)


def is_idempotent_matrix(M: Sequence[Sequence[Fraction]]) -> bool:
    n = len(M)
    return all(
        sum(M[i][k] * M[k][j] for k in range(n)) == M[i][j] for i in range(n) for j in range(n)
    )
