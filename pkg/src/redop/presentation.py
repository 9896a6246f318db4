"""Presentations by operator over a finite alphabet, truncated at a degree bound.

Words are Python strings over single-character letters; the generators of
the truncated word space are all words of length <= N in deglex order, the
empty word first (labelled ``"1"``).  Every verdict here holds up to degree N
only.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence, Union

from .basis import ReductionOperator, apply, kernel_basis, reduce_basis, theta
from .completion import f_complement
from .core import GenSet, Vector, to_scalar
from .lattice import OperatorFamily, meet, obstructions
from .rewriting import Strategy, normal_form

EMPTY_LABEL = "1"


class PresentationError(ValueError):
    pass


def deglex_key(word: str, alphabet: Sequence[str]):
    pos = {a: i for i, a in enumerate(alphabet)}
    try:
        return len(word), tuple(pos[a] for a in word)
    except KeyError as e:
        raise PresentationError(f"letter {e.args[0]!r} is not in the alphabet") from None


def deglex_compare(w1: str, w2: str, alphabet: Sequence[str]) -> int:
    """-1, 0 or 1 as w1 is smaller than, equal to or greater than w2."""
    k1, k2 = deglex_key(w1, alphabet), deglex_key(w2, alphabet)
    return (k1 > k2) - (k1 < k2)


class WordSpace:
    """All words of length <= degree, sorted by deglex."""

    def __init__(self, alphabet: Sequence[str], degree: int):
        alphabet = tuple(alphabet)
        for a in alphabet:
            if len(a) != 1 or a.isspace() or a.isdigit() or a in "+-*/()":
                raise PresentationError(f"letters must be single non-digit characters, got {a!r}")
        if len(set(alphabet)) != len(alphabet):
            raise PresentationError("alphabet letters must be distinct")
        if degree < 0:
            raise PresentationError("degree bound must be nonnegative")
        self.alphabet = alphabet
        self.degree = degree
        words = [""]
        for k in range(1, degree + 1):
            words.extend("".join(p) for p in product(alphabet, repeat=k))
        self.words = tuple(words)  # product() already yields lexicographic order per length
        self.gens = GenSet(w if w else EMPTY_LABEL for w in words)
        self._index = {w: i for i, w in enumerate(words)}

    def __len__(self) -> int:
        return len(self.words)

    def index(self, word: str) -> int:
        try:
            return self._index[word]
        except KeyError:
            if len(word) > self.degree:
                raise PresentationError(f"word {word!r} exceeds the degree bound {self.degree}") from None
            raise PresentationError(f"word {word!r} is not over the alphabet") from None

    def word(self, i: int) -> str:
        return self.words[i]

    def vector(self, terms: Iterable[tuple]) -> Vector:
        """Vector from (coefficient, word) terms."""
        c: dict[int, Fraction] = {}
        for coef, w in terms:
            w = "" if w == EMPTY_LABEL else w
            i = self.index(w)
            c[i] = c.get(i, Fraction(0)) + to_scalar(coef)
        return Vector(self.gens, c)

    def __eq__(self, other):
        return isinstance(other, WordSpace) and (self.alphabet, self.degree) == (other.alphabet, other.degree)

    def __hash__(self):
        return hash((self.alphabet, self.degree))


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*)?\s*([^\s+\-*/\d]*)\s*")


def parse_polynomial(space: WordSpace, text: str) -> Vector:
    """Parse e.g. ``"yxy - 2*xx + 1/2"`` into a vector of the word space."""
    terms = []
    pos = 0
    text = text.strip()
    if not text:
        raise PresentationError("empty polynomial")
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, coef, star, word = m.groups()
        if m.end() == pos or (coef is None and not word):
            raise PresentationError(f"cannot parse polynomial at column {pos + 1}: {text!r}")
        if terms and sign is None:
            raise PresentationError(f"missing operator before column {pos + 1}: {text!r}")
        if star and not word:
            raise PresentationError(f"dangling '*' near column {pos + 1}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        if word == EMPTY_LABEL:
            word = ""
        for a in word:
            if a not in space.alphabet:
                raise PresentationError(f"letter {a!r} is not in the alphabet")
        if len(word) > space.degree:
            raise PresentationError(f"monomial {word!r} exceeds the degree bound {space.degree}")
        terms.append((c, word))
        pos = m.end()
    return space.vector(terms)


def format_polynomial(space: WordSpace, v: Vector) -> str:
    if not v:
        return "0"
    parts = []
    for g, c in sorted(v.coeffs.items(), reverse=True):
        w = space.word(g)
        a = abs(c)
        if not w:
            body = str(a)
        elif a == 1:
            body = w
        else:
            body = f"{a}*{w}"
        parts.append(("- " if c < 0 else "+ ") + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True)
class Presentation:
    space: WordSpace
    S: ReductionOperator

    @property
    def degree(self) -> int:
        return self.space.degree

    def rules(self) -> list[tuple[str, Vector]]:
        """(lhs word, rhs) pairs read off the reduced basis of ker S."""
        return [(self.space.word(g), self.S.image(g)) for g in sorted(self.S.nred)]

    def rule_degrees(self) -> list[int]:
        return [len(self.space.word(g)) for g in self.S.nred]


def _as_vector(space: WordSpace, rhs) -> Vector:
    if isinstance(rhs, Vector):
        return rhs
    if isinstance(rhs, str):
        return parse_polynomial(space, rhs)
    return space.vector(rhs)


def make_presentation(alphabet: Sequence[str], rules: Iterable[tuple], degree: int) -> Presentation:
    """Semi-reduced presentation from ``(lhs word, rhs)`` rules.

    ``rhs`` is a Vector, a polynomial string or a list of (coefficient, word).
    """
    space = WordSpace(alphabet, degree)
    kernel = []
    for lhs, rhs in rules:
        if lhs == EMPTY_LABEL:
            lhs = ""
        if len(lhs) > degree:
            raise PresentationError(f"rule {lhs!r} has degree {len(lhs)} above the bound {degree}")
        l = space.index(lhs)
        r = _as_vector(space, rhs)
        bad = [g for g in r.support() if g >= l]
        if bad:
            raise PresentationError(
                f"rule {lhs!r} -> {format_polynomial(space, r)} is not deglex-decreasing "
                f"({space.word(max(bad)) or EMPTY_LABEL!r} is not smaller than {lhs!r})"
            )
        kernel.append(Vector.gen(space.gens, l) - r)
    return Presentation(space, theta(reduce_basis(kernel, space.gens)))


def extension(P: Presentation, n: int, m: int) -> ReductionOperator:
    """T_{n,m}: apply S to the middle factor of words, fixing n letters on the
    left and m on the right; words shorter than n+m are fixed."""
    if n < 0 or m < 0:
        raise ValueError("extension indices must be nonnegative")
    if n == 0 and m == 0:
        return P.S
    space, S = P.space, P.S
    images = {}
    for i, w in enumerate(space.words):
        k = len(w)
        if k < n + m:
            continue
        mid = space._index[w[n:k - m]]
        img = S._images.get(mid)
        if img is None:
            continue
        left, right = w[:n], w[k - m:]
        images[i] = {space._index[left + space.words[j] + right]: c for j, c in img.items()}
    return ReductionOperator(space.gens, images)


def family_shape(P: Presentation, selector: str = "full") -> list[tuple[int, int]]:
    """The (n, m) indices of the family, in family order."""
    if selector == "pair":
        return [(0, 1), (1, 0)]
    if selector != "full":
        raise ValueError(f"unknown family selector {selector!r}")
    degs = P.rule_degrees()
    if not degs:
        return [(0, 0)]
    span = P.degree - min(degs)
    return [(n, s - n) for s in range(span + 1) for n in range(s + 1)]


def reduction_family(P: Presentation, selector: str = "full") -> OperatorFamily:
    return OperatorFamily([extension(P, n, m) for n, m in family_shape(P, selector)], P.space.gens)


def presentation_obstructions(P: Presentation, selector: str = "full") -> list[str]:
    F = reduction_family(P, selector)
    return [P.space.word(g) for g in sorted(obstructions(F))]


def is_confluent_presentation(P: Presentation, selector: str = "full") -> bool:
    return not presentation_obstructions(P, selector)


def complete_presentation(P: Presentation, max_rounds: int | None = None) -> Presentation:
    """Replace S by S ∧ C^F for the full family until no obstruction of degree
    <= N is left."""
    cap = max_rounds if max_rounds is not None else 2 * len(P.space)
    for _ in range(cap + 1):
        F = reduction_family(P, "full")
        wedge = meet(F)
        if not obstructions(F, wedge):
            return P
        C = f_complement(F)
        P = Presentation(P.space, meet([P.S, C]))
    raise PresentationError(f"completion did not reach a fixpoint within {cap} rounds")


def word_normal_form(P: Presentation, f, selector: str = "full", strategy: Strategy = "first") -> Vector:
    if isinstance(f, str):
        f = parse_polynomial(P.space, f)
    elif not isinstance(f, Vector):
        f = P.space.vector(f)
    return normal_form(reduction_family(P, selector), f, strategy)


def ideal_kernel(P: Presentation):
    """Reduced basis of the truncated two-sided ideal spanned by the rules:
    all u·(l - r)·v of degree <= N."""
    space = P.space
    rows = []
    for g, e in kernel_basis(P.S)._rows.items():
        top = len(space.word(g))
        for a in range(space.degree - top + 1):
            for left in (w for w in space.words if len(w) <= a):
                for right in (w for w in space.words if len(w) == a - len(left)):
                    rows.append(Vector(space.gens, {space._index[left + space.words[j] + right]: c
                                                    for j, c in e.items()}))
    return reduce_basis(rows, space.gens)


def class_representative(P: Presentation, f) -> Vector:
    """(∧F)(f) for the full family: the canonical form modulo the truncated ideal."""
    if isinstance(f, str):
        f = parse_polynomial(P.space, f)
    return apply(meet(reduction_family(P, "full")), f)
