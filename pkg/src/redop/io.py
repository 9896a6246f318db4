"""JSON reading and writing for families, presentations and reports.

Scalars are exact ``"p/q"`` strings, vectors are lists of ``[coefficient,
label]`` terms in descending generator order.  Parse errors carry a JSON path
such as ``operators[1].matrix[2][0]``.
"""
from __future__ import annotations

import hashlib
import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .basis import InvalidOperatorError, LinearMap, ReductionMatrixError, ReductionOperator, from_matrix, \
    kernel_basis, reduce_basis, theta
from .core import GenSet, Vector, to_scalar
from .general import PartialOrder
from .lattice import OperatorFamily
from .presentation import EMPTY_LABEL, Presentation, PresentationError, format_polynomial, make_presentation

MATRIX_OUTPUT_LIMIT = 32
DEFAULT_MAX_GENERATORS = 4096


class InputError(ValueError):
    """Malformed input; ``path`` locates the offending element."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def max_generators() -> int:
    raw = os.environ.get("REDOP_MAX_GENERATORS", "")
    if not raw:
        return DEFAULT_MAX_GENERATORS
    try:
        cap = int(raw)
    except ValueError:
        raise InputError("REDOP_MAX_GENERATORS", f"not an integer: {raw!r}") from None
    if cap < 1:
        raise InputError("REDOP_MAX_GENERATORS", "must be positive")
    return cap


def load_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}:{e.lineno}:{e.colno}", e.msg) from None


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def digest(obj: Any) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()


# -- scalars and vectors -----------------------------------------------------

def scalar_out(c: Fraction) -> str:
    return str(c)


def scalar_in(x: Any, path: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(path, f"expected an exact scalar (int or \"p/q\"), got {x!r}")
    try:
        return to_scalar(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(path, f"not an exact scalar: {x!r}") from None


def vector_out(v: Vector) -> list:
    return [[scalar_out(c), label] for c, label in v.to_terms()]


def vector_in(ambient: GenSet, data: Any, path: str) -> Vector:
    if not isinstance(data, list):
        raise InputError(path, "a vector is a list of [coefficient, label] terms")
    coeffs: dict[int, Fraction] = {}
    for k, term in enumerate(data):
        p = f"{path}[{k}]"
        if not isinstance(term, list) or len(term) != 2:
            raise InputError(p, "expected [coefficient, label]")
        c = scalar_in(term[0], p + "[0]")
        label = term[1]
        if label not in ambient:
            raise InputError(p + "[1]", f"unknown generator {label!r}")
        g = ambient.index(label)
        coeffs[g] = coeffs.get(g, Fraction(0)) + c
    return Vector(ambient, coeffs)


_VTERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([^\s+\-*]+)?\s*")


def parse_vector(ambient: GenSet, text: str) -> Vector:
    """Parse ``"g4 - 2*g3 + 1/2 g1"`` or a JSON term list."""
    s = text.strip()
    if s.startswith("["):
        return vector_in(ambient, load_json(s, "--vector"), "vector")
    if not s:
        raise InputError("vector", "empty vector")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _VTERM.match(s, pos)
        sign, coef, label = m.groups()
        if m.end() == pos or label is None:
            raise InputError(f"vector:{pos + 1}", f"expected a generator label in {text!r}")
        if not first and sign is None:
            raise InputError(f"vector:{pos + 1}", f"missing '+' or '-' in {text!r}")
        if label not in ambient:
            raise InputError(f"vector:{m.start(3) + 1}", f"unknown generator {label!r}")
        c = Fraction(coef) if coef else Fraction(1)
        g = ambient.index(label)
        coeffs[g] = coeffs.get(g, Fraction(0)) + (-c if sign == "-" else c)
        pos = m.end()
        first = False
    return Vector(ambient, coeffs)


# -- operators ----------------------------------------------------------------

def matrix_out(M) -> list:
    return [[scalar_out(c) for c in row] for row in M]


def operator_out(T: ReductionOperator | LinearMap, with_matrix: bool | None = None) -> dict:
    n = len(T.ambient)
    if with_matrix is None:
        with_matrix = n <= MATRIX_OUTPUT_LIMIT
    out: dict = {"nred": [T.ambient.label(g) for g in sorted(T._images)]}
    if isinstance(T, ReductionOperator):
        out["kernel"] = [vector_out(v) for v in kernel_basis(T).vectors()]
    else:
        out["images"] = {T.ambient.label(g): vector_out(T.image(g)) for g in sorted(T._images)}
    if with_matrix:
        out["matrix"] = matrix_out(T.matrix())
    return out


def _matrix_in(data: Any, n: int, path: str) -> list[list[Fraction]]:
    if not isinstance(data, list) or len(data) != n:
        raise InputError(path, f"expected a {n}x{n} matrix")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{path}[{i}]", f"expected a row of {n} entries")
        rows.append([scalar_in(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    return rows


def _images_in(ambient: GenSet, data: Any, path: str) -> dict[int, dict]:
    if not isinstance(data, dict):
        raise InputError(path, "expected an object {label: vector}")
    out = {}
    for label, vec in data.items():
        if label not in ambient:
            raise InputError(f"{path}.{label}", f"unknown generator {label!r}")
        out[ambient.index(label)] = vector_in(ambient, vec, f"{path}.{label}")._c
    return out


@dataclass
class RawOperator:
    """An operator as written in the file, before any validation."""

    ambient: GenSet
    path: str
    matrix: list | None = None
    kernel: list | None = None
    images: dict | None = None

    def dense(self) -> list[list[Fraction]]:
        n = len(self.ambient)
        if self.matrix is not None:
            return self.matrix
        if self.images is not None:
            M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
            for j, img in self.images.items():
                for i in range(n):
                    M[i][j] = img.get(i, Fraction(0))
            return M
        return theta(reduce_basis(self.kernel, self.ambient)).matrix()

    def images_map(self) -> dict[int, dict]:
        if self.matrix is None and self.images is not None:
            return {g: dict(c) for g, c in self.images.items() if c != {g: 1}}
        M = self.dense()
        n = len(M)
        out = {}
        for j in range(n):
            col = {i: M[i][j] for i in range(n) if M[i][j]}
            if col != {j: 1}:
                out[j] = col
        return out


def raw_operator_in(ambient: GenSet, data: Any, path: str) -> RawOperator:
    if not isinstance(data, dict):
        raise InputError(path, "an operator is an object with \"matrix\", \"kernel\" or \"images\"")
    known = {"matrix", "kernel", "images", "nred", "name"}
    extra = set(data) - known
    if extra:
        raise InputError(f"{path}.{sorted(extra)[0]}", "unknown operator field")
    if not ({"matrix", "kernel", "images"} & set(data)):
        raise InputError(path, "operator needs \"matrix\", \"kernel\" or \"images\"")
    raw = RawOperator(ambient, path)
    n = len(ambient)
    if "matrix" in data:
        raw.matrix = _matrix_in(data["matrix"], n, path + ".matrix")
    if "kernel" in data:
        k = data["kernel"]
        if not isinstance(k, list):
            raise InputError(path + ".kernel", "expected a list of vectors")
        raw.kernel = [vector_in(ambient, v, f"{path}.kernel[{i}]") for i, v in enumerate(k)]
    if "images" in data:
        raw.images = _images_in(ambient, data["images"], path + ".images")
    return raw


def operator_from_raw(raw: RawOperator) -> ReductionOperator:
    """Validated total-order operator; every given form must agree."""
    forms = []
    try:
        if raw.matrix is not None:
            forms.append(("matrix", from_matrix(raw.matrix, raw.ambient)))
        if raw.images is not None:
            forms.append(("images", ReductionOperator(raw.ambient, raw.images)))
        if raw.kernel is not None:
            forms.append(("kernel", theta(reduce_basis(raw.kernel, raw.ambient))))
    except ReductionMatrixError as e:
        where = raw.path + ".matrix"
        if e.row is not None:
            where += f"[{e.row}][{e.col}]"
        raise InputError(where, str(e)) from None
    except InvalidOperatorError as e:
        raise InputError(raw.path + ".images", str(e)) from None
    name, T = forms[0]
    for other, U in forms[1:]:
        if U != T:
            raise InputError(raw.path, f"the {name} and {other} forms describe different operators")
    return T


# -- family files -------------------------------------------------------------

@dataclass
class FamilyFile:
    ambient: GenSet
    raw: list[RawOperator]
    order: PartialOrder | None
    document: Any

    def family(self) -> OperatorFamily:
        if not self.raw:
            raise InputError("operators", "the family is empty")
        return OperatorFamily([operator_from_raw(r) for r in self.raw], self.ambient)

    def maps(self) -> list[LinearMap]:
        return [LinearMap(self.ambient, r.images_map()) for r in self.raw]


def _generators_in(doc: dict) -> GenSet:
    gens = doc.get("generators")
    if isinstance(gens, int) and not isinstance(gens, bool):
        if gens < 1:
            raise InputError("generators", "need at least one generator")
        names = [f"g{i + 1}" for i in range(gens)]
    elif isinstance(gens, list) and gens and all(isinstance(x, str) for x in gens):
        names = gens
    else:
        raise InputError("generators", "expected a nonempty list of labels (ascending) or a count")
    if len(names) > max_generators():
        raise InputError("generators", f"{len(names)} generators exceed the cap {max_generators()} "
                                       "(REDOP_MAX_GENERATORS)")
    try:
        return GenSet(names)
    except ValueError as e:
        raise InputError("generators", str(e)) from None


def order_in(ambient: GenSet, data: Any) -> PartialOrder:
    if not isinstance(data, dict) or not isinstance(data.get("pairs"), list):
        raise InputError("order", "expected {\"pairs\": [[smaller, larger], ...]}")
    pairs = []
    for k, p in enumerate(data["pairs"]):
        path = f"order.pairs[{k}]"
        if not isinstance(p, list) or len(p) != 2:
            raise InputError(path, "expected [smaller, larger]")
        for j, label in enumerate(p):
            if label not in ambient:
                raise InputError(f"{path}[{j}]", f"unknown generator {label!r}")
        pairs.append((ambient.index(p[0]), ambient.index(p[1])))
    try:
        return PartialOrder.from_pairs(len(ambient), pairs)
    except ValueError as e:
        raise InputError("order.pairs", str(e)) from None


def family_in(doc: Any) -> FamilyFile:
    if not isinstance(doc, dict):
        raise InputError("", "a family file is a JSON object")
    ambient = _generators_in(doc)
    ops = doc.get("operators")
    if not isinstance(ops, list):
        raise InputError("operators", "expected a list of operators")
    raw = [raw_operator_in(ambient, op, f"operators[{i}]") for i, op in enumerate(ops)]
    order = order_in(ambient, doc["order"]) if "order" in doc else None
    return FamilyFile(ambient, raw, order, doc)


def family_out(F, order: PartialOrder | None = None) -> dict:
    F = list(F)
    amb = F[0].ambient
    out: dict = {"generators": list(amb.names), "operators": [operator_out(T) for T in F]}
    if order is not None:
        out["order"] = {"pairs": [[amb.label(a), amb.label(b)] for a, b in order.covers()]}
    return out


# -- presentations ---------------------------------------------------------------

def presentation_in(doc: Any, degree: int | None = None) -> Presentation:
    if not isinstance(doc, dict):
        raise InputError("", "a presentation file is a JSON object")
    alphabet = doc.get("alphabet")
    if not isinstance(alphabet, list) or not all(isinstance(a, str) for a in alphabet):
        raise InputError("alphabet", "expected a list of single-character letters")
    if doc.get("order", "deglex") != "deglex":
        raise InputError("order", "only \"deglex\" is supported")
    N = degree if degree is not None else doc.get("degree")
    if N is None:
        raise InputError("degree", "no degree bound given (file field or --degree)")
    if not isinstance(N, int) or isinstance(N, bool) or N < 0:
        raise InputError("degree", f"expected a nonnegative integer, got {N!r}")
    rules = doc.get("rules", [])
    if not isinstance(rules, list):
        raise InputError("rules", "expected a list of rules")
    parsed = []
    for k, r in enumerate(rules):
        path = f"rules[{k}]"
        if not isinstance(r, dict) or not isinstance(r.get("lhs"), str):
            raise InputError(path, "expected {\"lhs\": word, \"rhs\": [[coefficient, word], ...]}")
        rhs = r.get("rhs", [])
        if isinstance(rhs, str):
            parsed.append((r["lhs"], rhs))
            continue
        if not isinstance(rhs, list):
            raise InputError(path + ".rhs", "expected a list of [coefficient, word] terms")
        terms = []
        for j, t in enumerate(rhs):
            if not isinstance(t, list) or len(t) != 2 or not isinstance(t[1], str):
                raise InputError(f"{path}.rhs[{j}]", "expected [coefficient, word]")
            terms.append((scalar_in(t[0], f"{path}.rhs[{j}][0]"), t[1]))
        parsed.append((r["lhs"], terms))
    size = sum(len(alphabet) ** k for k in range(N + 1))
    if size > max_generators():
        raise InputError("degree", f"{size} words up to degree {N} exceed the cap {max_generators()} "
                                   "(REDOP_MAX_GENERATORS)")
    try:
        return make_presentation(alphabet, parsed, N)
    except PresentationError as e:
        raise InputError("rules", str(e)) from None


def word_out(w: str) -> str:
    return w if w else EMPTY_LABEL


def rules_out(P: Presentation) -> list:
    out = []
    for lhs, rhs in P.rules():
        out.append({
            "lhs": word_out(lhs),
            "rhs": [[scalar_out(c), word_out(P.space.word(g))] for g, c in sorted(rhs.coeffs.items(), reverse=True)],
            "text": f"{word_out(lhs)} -> {format_polynomial(P.space, rhs)}",
        })
    return out


def presentation_out(P: Presentation) -> dict:
    return {
        "alphabet": list(P.space.alphabet),
        "order": "deglex",
        "degree": P.degree,
        "rules": [{"lhs": r["lhs"], "rhs": r["rhs"]} for r in rules_out(P)],
    }
