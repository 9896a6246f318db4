"""Exact scalars, ordered generator sets and sparse vectors.

A generator is referred to by its integer position in a :class:`GenSet`;
position 0 is the smallest generator.  Labels only matter for I/O.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from . import kernels

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]


class AmbientMismatch(ValueError):
    """Two objects live over different generator sets."""


class ZeroVectorError(ValueError):
    pass


def to_scalar(x: ScalarLike) -> Fraction:
    """Parse an exact scalar; accepts Fraction, int or a ``"p/q"`` string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or "." in s or "e" in s.lower():
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def format_scalar(c: Fraction) -> str:
    return str(c)


class GenSet:
    """A finite totally ordered set of named generators (ascending order)."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(str(n) for n in names)
        index = {}
        for i, name in enumerate(names):
            if name in index:
                raise ValueError(f"duplicate generator label {name!r}")
            index[name] = i
        self.names = names
        self._index = index

    @classmethod
    def standard(cls, n: int, prefix: str = "g") -> "GenSet":
        """``g1 < g2 < ... < gn``."""
        return cls(f"{prefix}{i + 1}" for i in range(n))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[int]:
        return iter(range(len(self.names)))

    def __contains__(self, label) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown generator {label!r}") from None

    def label(self, i: int) -> str:
        return self.names[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, GenSet) and (other is self or other.names == self.names)

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"GenSet({list(self.names)!r})"


def check_same(a: GenSet, b: GenSet) -> None:
    if a is not b and a != b:
        raise AmbientMismatch("objects are defined over different generator sets")


class Vector:
    """An element of K^(G) stored as {generator index: nonzero Fraction}."""

    __slots__ = ("ambient", "_c", "_hash")

    def __init__(self, ambient: GenSet, coeffs: Mapping[int, ScalarLike] | None = None):
        n = len(ambient)
        c = {}
        for i, x in (coeffs or {}).items():
            if not isinstance(i, int) or not 0 <= i < n:
                raise IndexError(f"generator index {i!r} out of range for {n} generators")
            x = to_scalar(x)
            if x:
                c[i] = x
        self.ambient = ambient
        self._c = c
        self._hash = None

    @classmethod
    def _wrap(cls, ambient: GenSet, coeffs: dict) -> "Vector":
        # trusted path: coeffs already clean and owned by the new vector
        v = object.__new__(cls)
        v.ambient = ambient
        v._c = coeffs
        v._hash = None
        return v

    @classmethod
    def zero(cls, ambient: GenSet) -> "Vector":
        return cls._wrap(ambient, {})

    @classmethod
    def gen(cls, ambient: GenSet, g: int | str) -> "Vector":
        if isinstance(g, str):
            g = ambient.index(g)
        return cls(ambient, {g: 1})

    @classmethod
    def from_labels(cls, ambient: GenSet, terms: Iterable[tuple[ScalarLike, str]]) -> "Vector":
        c: dict[int, Fraction] = {}
        for coef, label in terms:
            i = ambient.index(label)
            c[i] = c.get(i, Fraction(0)) + to_scalar(coef)
        return cls(ambient, c)

    @property
    def coeffs(self) -> dict:
        """A copy of the coefficient map."""
        return dict(self._c)

    def support(self) -> frozenset:
        return frozenset(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, g: int) -> Fraction:
        return self._c.get(g, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def _same(self, other: "Vector") -> None:
        if not isinstance(other, Vector):
            raise TypeError("expected a Vector")
        check_same(self.ambient, other.ambient)

    def __add__(self, other: "Vector") -> "Vector":
        self._same(other)
        return Vector._wrap(self.ambient, kernels.add_scaled(self._c, other._c, Fraction(1)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._same(other)
        return Vector._wrap(self.ambient, kernels.add_scaled(self._c, other._c, Fraction(-1)))

    def __neg__(self) -> "Vector":
        return Vector._wrap(self.ambient, {g: -c for g, c in self._c.items()})

    def scale(self, k: ScalarLike) -> "Vector":
        k = to_scalar(k)
        if not k:
            return Vector.zero(self.ambient)
        return Vector._wrap(self.ambient, {g: k * c for g, c in self._c.items()})

    def __mul__(self, k):
        if isinstance(k, Vector):
            return NotImplemented
        return self.scale(k)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self._c == other._c and (self.ambient is other.ambient or self.ambient == other.ambient)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def to_terms(self) -> list[tuple[Fraction, str]]:
        """Terms by descending generator, as (coefficient, label)."""
        return [(c, self.ambient.label(g)) for g, c in sorted(self._c.items(), reverse=True)]

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for c, label in self.to_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            term = label if a == 1 else f"{a}*{label}"
            out.append(f"{sign} {term}")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"Vector({self})"


def leading_generator(v: Vector) -> int:
    if not v:
        raise ZeroVectorError("no leading generator of zero")
    return max(v._c)


def leading_coefficient(v: Vector) -> Fraction:
    if not v:
        raise ZeroVectorError("no leading coefficient of zero")
    return v._c[max(v._c)]


def multiset_leq(v: Vector, w: Vector) -> bool:
    """Support-only multiset comparison: every generator that ``v`` has and
    ``w`` lacks is dominated by one that ``w`` has and ``v`` lacks."""
    v._same(w)
    sv, sw = v._c.keys(), w._c.keys()
    extra = sw - sv
    top = max(extra) if extra else -1
    return all(g < top for g in sv - sw)


def multiset_lt(v: Vector, w: Vector) -> bool:
    return multiset_leq(v, w) and v.support() != w.support()


def vec_add(v: Vector, w: Vector) -> Vector:
    return v + w


def vec_scale(v: Vector, k: ScalarLike) -> Vector:
    return v.scale(k)
