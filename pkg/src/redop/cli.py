"""Command-line interface: ``redop <command> FILE [options]``.

Every command prints one JSON report ``{command, inputs_digest, result,
warnings[, degree_bound]}``.  Exit codes: 0 success, 2 malformed input,
3 a boolean query answered false under ``--strict``.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .basis import ReductionOperator, apply, is_idempotent_matrix
from .completion import complete, f_complement
from .general import (
    GeneralReductionOperator,
    NotCompletable,
    general_confluence,
    general_family,
    is_completable,
    order_from_projectors,
)
from .io import (
    FamilyFile,
    InputError,
    digest,
    dumps,
    family_in,
    load_json,
    operator_out,
    parse_vector,
    presentation_in,
    rules_out,
    vector_out,
    word_out,
)
from .lattice import join_all, leq, meet, obstructions
from .pairs import braided, join_checked
from .presentation import (
    PresentationError,
    complete_presentation,
    family_shape,
    format_polynomial,
    parse_polynomial,
    presentation_obstructions,
    word_normal_form,
)
from .rewriting import all_normal_forms, parse_strategy, trace_normal_form

EXIT_OK, EXIT_INPUT, EXIT_FALSE = 0, 2, 3

IMAGE_NOTE = ("candidates are images spanned by generators; every reduction operator over a "
              "partial order has im T = K^(Red T), so the search is exhaustive")


class _Fail(Exception):
    def __init__(self, path: str, message: str):
        super().__init__(message)
        self.path = path


def _labels(amb, gs) -> list:
    return [amb.label(g) for g in sorted(gs)]


def _read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(path, e.strerror or str(e)) from None
    return load_json(text, path)


def _family(args) -> tuple[FamilyFile, object]:
    ff = family_in(_read(args.file))
    return ff, ff.family()


def _pair(F):
    if len(F) != 2:
        raise InputError("operators", f"this command needs exactly two operators, got {len(F)}")
    return F[0], F[1]


# -- commands ---------------------------------------------------------------------

def cmd_meet(args):
    _, F = _family(args)
    return {"meet": operator_out(meet(F))}, None


def cmd_join(args):
    _, F = _family(args)
    J = join_checked(*F) if len(F) == 2 else join_all(F)
    return {"join": operator_out(J)}, None


def cmd_leq(args):
    _, F = _family(args)
    T1, T2 = _pair(F)
    v = leq(T1, T2)
    return {"leq": v}, v


def cmd_obstructions(args):
    _, F = _family(args)
    return {"obstructions": _labels(F.ambient, obstructions(F))}, None


def cmd_confluent(args):
    _, F = _family(args)
    obs = obstructions(F)
    return {"confluent": not obs, "obstructions": _labels(F.ambient, obs)}, not obs


def cmd_normal_form(args):
    _, F = _family(args)
    v = parse_vector(F.ambient, args.vector)
    try:
        parse_strategy(args.strategy, len(F))
    except ValueError as e:
        raise InputError("--strategy", str(e)) from None
    tr = trace_normal_form(F, v, args.strategy)
    out = {
        "input": vector_out(v),
        "normal_form": vector_out(tr.result),
        "trace": [{"operator": i, "vector": vector_out(w)} for i, w in tr.steps],
        "class_minimum": vector_out(apply(meet(F), v)),
    }
    if args.all:
        nfs = sorted((vector_out(w) for w in all_normal_forms(F, v)), key=dumps)
        out["normal_forms"] = nfs
    return out, None


def cmd_braided(args):
    _, F = _family(args)
    T1, T2 = _pair(F)
    bp = braided(T1, T2)
    return {
        "forward": operator_out(bp.forward),
        "backward": operator_out(bp.backward),
        "counts": {F.ambient.label(g): n for g, n in sorted(bp.counts.items())},
        "confluent": bp.confluent,
    }, bp.confluent


def cmd_complement(args):
    _, F = _family(args)
    wedge = meet(F)
    obs = obstructions(F, wedge)
    return {
        "meet": operator_out(wedge),
        "obstructions": _labels(F.ambient, obs),
        "complement": operator_out(f_complement(F)),
    }, None


def cmd_complete(args):
    _, F = _family(args)
    rep = complete(F)
    return {
        "meet": operator_out(rep.meet),
        "obstructions": _labels(F.ambient, rep.obstructions),
        "complement": operator_out(rep.complement),
        "completed_family": [operator_out(T) for T in rep.completed_family],
        "confluent": rep.confluent,
    }, None


def _presentation(args):
    doc = _read(args.file)
    return presentation_in(doc, args.degree)


def cmd_pres_check(args):
    P = _presentation(args)
    obs = presentation_obstructions(P, args.family)
    return {
        "family": args.family,
        "extensions": [list(s) for s in family_shape(P, args.family)],
        "confluent": not obs,
        "obstructions": [word_out(w) for w in obs],
        "rules": rules_out(P),
    }, not obs


def cmd_pres_complete(args):
    P = _presentation(args)
    Q = complete_presentation(P)
    before = {lhs for lhs, _ in P.rules()}
    return {
        "rules": rules_out(Q),
        "added": [r for r in rules_out(Q) if r["lhs"] not in {word_out(w) for w in before}],
        "obstructions": [word_out(w) for w in presentation_obstructions(Q, "full")],
    }, None


def cmd_pres_nf(args):
    P = _presentation(args)
    try:
        f = parse_polynomial(P.space, args.polynomial)
    except PresentationError as e:
        raise InputError("polynomial", str(e)) from None
    nf = word_normal_form(P, f, args.family)
    return {
        "input": format_polynomial(P.space, f),
        "normal_form": format_polynomial(P.space, nf),
        "terms": [[str(c), word_out(P.space.word(g))] for g, c in sorted(nf.coeffs.items(), reverse=True)],
    }, None


def _general(args):
    ff = family_in(_read(args.file))
    if not ff.raw:
        raise InputError("operators", "the family is empty")
    order = ff.order
    warnings = []
    if order is None:
        order = order_from_projectors(ff.maps())
        if order is None:
            raise InputError("operators", "no \"order\" given and the relation <_F has a cycle")
        warnings.append("no order given; using the transitive closure of <_F")
    maps = ff.maps()
    try:
        F = general_family(maps, order)
    except ValueError as e:
        raise InputError("operators", str(e)) from None
    return ff, F, order, warnings


def _general_out(T: GeneralReductionOperator) -> dict:
    amb = T.ambient
    return {
        "nred": _labels(amb, T.nred),
        "images": {amb.label(g): vector_out(T.image(g)) for g in sorted(T.nred)},
    }


def cmd_general_completable(args):
    ff, F, order, warnings = _general(args)
    W = is_completable(F, order)
    res = {"completable": W is not None, "meet": None if W is None else _general_out(W), "search": IMAGE_NOTE}
    return res, W is not None, warnings


def cmd_general_confluent(args):
    ff, F, order, warnings = _general(args)
    try:
        rep = general_confluence(F, order)
    except NotCompletable as e:
        raise InputError("operators", str(e)) from None
    res = rep.as_dict()
    res["obstructions"] = _labels(ff.ambient, rep.obstructions)
    res["meet"] = _general_out(rep.meet)
    res["witness"] = None if rep.witness is None else vector_out(rep.witness)
    return res, rep.confluent, warnings


def audit(ff: FamilyFile) -> list[dict]:
    """Idempotency, order decrease and (over a total order) the three
    reduction-matrix conditions, for every operator of the file."""
    out = []
    amb = ff.ambient
    n = len(amb)
    for k, raw in enumerate(ff.raw):
        M = raw.dense()

        def add(kind, msg, where=None):
            out.append({"operator": k, "check": kind, "message": msg,
                        "position": raw.path + ("" if where is None else f".matrix[{where[0]}][{where[1]}]")})

        if not is_idempotent_matrix(M):
            add("idempotent", "T∘T differs from T")
        for j in range(n):
            col = [i for i in range(n) if M[i][j]]
            if col == [j] and M[j][j] == 1:
                continue
            for i in col:
                below = ff.order.lt(i, j) if ff.order is not None else i < j
                if not below:
                    add("order", f"image of {amb.label(j)} contains {amb.label(i)}, which is not below it", (i, j))
        if ff.order is not None:
            continue
        for i in range(n):
            d = M[i][i]
            if d not in (0, 1):
                add("condition 1", f"diagonal entry ({i + 1},{i + 1}) is {d}", (i, i))
            for j in range(i):
                if M[i][j]:
                    add("condition 1", f"entry ({i + 1},{j + 1}) below the diagonal is nonzero", (i, j))
            for j in range(n):
                if j == i or not M[i][j]:
                    continue
                if d == 0:
                    add("condition 2", f"row {i + 1} has diagonal 0 but entry ({i + 1},{j + 1}) is nonzero", (i, j))
            if d == 1:
                for r in range(n):
                    if r != i and M[r][i]:
                        add("condition 3", f"column {i + 1} has diagonal 1 but entry ({r + 1},{i + 1}) "
                                           "is nonzero", (r, i))
        if raw.matrix is not None and (raw.kernel is not None or raw.images is not None):
            try:
                from .io import operator_from_raw
                operator_from_raw(raw)
            except InputError as e:
                add("forms", str(e))
    return out


def cmd_check(args):
    ff = family_in(_read(args.file))
    violations = audit(ff)
    return {"ok": not violations, "violations": violations, "operators": len(ff.raw)}, not violations


COMMANDS = {
    "meet": cmd_meet,
    "join": cmd_join,
    "leq": cmd_leq,
    "obstructions": cmd_obstructions,
    "confluent": cmd_confluent,
    "normal-form": cmd_normal_form,
    "braided": cmd_braided,
    "complement": cmd_complement,
    "complete": cmd_complete,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="redop", description="Exact reduction-operator toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def family_cmd(name, helptext, strict=False):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file", help="family file (JSON)")
        if strict:
            sp.add_argument("--strict", action="store_true", help="exit 3 when the answer is false")
        return sp

    family_cmd("meet", "meet of the family")
    family_cmd("join", "join of the family")
    family_cmd("leq", "T1 ⪯ T2 for a two-operator file", strict=True)
    family_cmd("obstructions", "obstructions of the family")
    family_cmd("confluent", "confluence verdict", strict=True)
    nf = family_cmd("normal-form", "rewrite a vector to a normal form")
    nf.add_argument("--vector", required=True, help='e.g. "g4 - 2*g3" or a JSON term list')
    nf.add_argument("--strategy", default="first", help='"first" or "priority:i,j,..."')
    nf.add_argument("--all", action="store_true", help="also list every reachable normal form")
    family_cmd("braided", "braided products of a pair", strict=True)
    family_cmd("complement", "the F-complement")
    family_cmd("complete", "the completed family")
    family_cmd("check", "audit every operator of the file", strict=True)

    pres = sub.add_parser("pres", help="presentations over words")
    psub = pres.add_subparsers(dest="pres_command", required=True)
    for name, helptext in (("check", "obstructions up to the degree bound"),
                           ("complete", "complete up to the degree bound"),
                           ("nf", "normal form of a polynomial")):
        sp = psub.add_parser(name, help=helptext)
        sp.add_argument("file", help="presentation file (JSON)")
        sp.add_argument("--degree", type=int, default=None, help="degree bound N (defaults to the file)")
        if name != "complete":
            sp.add_argument("--family", choices=("full", "pair"), default="full")
        if name == "check":
            sp.add_argument("--strict", action="store_true")
        if name == "nf":
            sp.add_argument("polynomial", help='e.g. "yyz - 2*x"')

    gen = sub.add_parser("general", help="families over a partial order")
    gsub = gen.add_subparsers(dest="general_command", required=True)
    for name in ("completable", "confluent"):
        sp = gsub.add_parser(name)
        sp.add_argument("file", help="family file with an \"order\" field")
        sp.add_argument("--strict", action="store_true")
    return p


def _dispatch(args):
    if args.command == "pres":
        fn = {"check": cmd_pres_check, "complete": cmd_pres_complete, "nf": cmd_pres_nf}[args.pres_command]
        name = f"pres {args.pres_command}"
    elif args.command == "general":
        fn = {"completable": cmd_general_completable, "confluent": cmd_general_confluent}[args.general_command]
        name = f"general {args.general_command}"
    else:
        fn = COMMANDS[args.command]
        name = args.command
    out = fn(args)
    result, verdict = out[0], out[1]
    warnings = out[2] if len(out) > 2 else []
    return name, result, verdict, warnings


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        name, result, verdict, warnings = _dispatch(args)
        inputs = {"file": _read(args.file),
                  "args": {k: v for k, v in sorted(vars(args).items()) if k not in ("file", "command")}}
    except InputError as e:
        print(f"redop: error: {e}", file=stderr)
        return EXIT_INPUT
    except (PresentationError, ValueError) as e:
        print(f"redop: error: {e}", file=stderr)
        return EXIT_INPUT
    envelope = {"command": name, "inputs_digest": digest(inputs), "result": result, "warnings": warnings}
    if args.command == "pres":
        envelope["degree_bound"] = args.degree if args.degree is not None else inputs["file"].get("degree")
    print(dumps(envelope), file=stdout)
    if getattr(args, "strict", False) and verdict is False:
        return EXIT_FALSE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
