"""Command-line entry point.

Exit status: 0 when the input passes, 1 on a violated axiom (a JSON report
goes to stdout), 2 on unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence, TextIO

from . import io as docs
from .braided import BraidedGroupoid, is_symmetric
from .groupoid import Groupoid
from .linear import (
    check_two_cocycle,
    constant_cocycle,
    face_model_from_solution,
    qybe_matrix,
    rigidity_flat,
    sigma_q,
    star_triangular,
)
from .quiver import Quiver
from .rack import derived_solution
from .report import Report, set_assert_level
from .search import SearchSpec, classify, enumerate_braided_structures, enumerate_solutions
from .solution import Solution, check_nondegenerate
from .structure import reduced_structure_groupoid, solution_from_structural_pair

DEFAULT_SEED = 20240611


class InputError(Exception):
    pass


def _load(path: str) -> docs.Document:
    try:
        return docs.load(path)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    except docs.DocumentError as e:
        raise InputError(f"{path}: {e}") from None


def _build(doc: docs.Document, *kinds: str):
    if kinds and doc.kind not in kinds:
        raise InputError(f"expected a {' or '.join(kinds)} document, got {doc.kind!r}")
    try:
        return docs.build(doc)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"inconsistent {doc.kind} document: {e}") from None


def _emit_report(rep: Report, out: TextIO) -> int:
    out.write(json.dumps(rep.as_dict(), sort_keys=True, ensure_ascii=False) + "\n")
    return 0 if rep else 1


def _cocycle(path: str | None, q: Quiver):
    if path is None:
        return constant_cocycle(q)
    rep = _build(_load(path), "cocycle")
    if not rep:
        raise InputError(f"{path}: {rep.axiom} {rep.witness}")
    if rep.value.keys() != set(q.pairs):
        raise InputError(f"{path}: cocycle is not indexed by the composable pairs of the solution")
    return rep.value


def _solution(path: str) -> Solution:
    rep = _build(_load(path), "solution")
    if not rep:
        raise InputError(f"{path}: not a solution ({rep.axiom} at {rep.witness})")
    return rep.value


# --- commands -------------------------------------------------------------------------


def cmd_validate(args, out: TextIO) -> int:
    return _emit_report(_build(_load(args.path)), out)


def cmd_check(args, out: TextIO) -> int:
    doc = _load(args.path)
    rep = _build(doc)
    if not rep:
        return _emit_report(rep, out)
    obj = rep.value
    checks: list[Report] = []
    if isinstance(obj, Solution):
        if args.nondegenerate:
            checks.append(check_nondegenerate(obj))
        if args.qybe:
            checks.append(qybe_matrix(obj, _cocycle(args.cocycle, obj.quiver)))
        if args.cocycle:
            c = _cocycle(args.cocycle, obj.quiver)
            checks.append(check_two_cocycle(obj, c))
        if args.rigid:
            r = rigidity_flat(obj, _cocycle(args.cocycle, obj.quiver))
            checks.append(Report.passed() if r.invertible else Report.failed("rigid", (), "c♭ is singular"))
    elif isinstance(obj, BraidedGroupoid) and args.symmetric:
        cert = is_symmetric(obj)
        checks.append(Report.passed() if cert.symmetric else Report.failed("symmetric", cert.witness))
    elif args.star_triangular and doc.kind == "face-model":
        checks.append(star_triangular(obj))
    for c in checks:
        if not c:
            return _emit_report(c, out)
    return _emit_report(Report.passed(), out)


def cmd_structure_groupoid(args, out: TextIO) -> int:
    sp = reduced_structure_groupoid(_solution(args.path))
    out.write(docs.dumps(docs.to_document(sp)))
    return 0


def cmd_reconstruct(args, out: TextIO) -> int:
    rep = _build(_load(args.path), "braided-groupoid")
    if not rep:
        return _emit_report(rep, out)
    if not hasattr(rep.value, "taut"):
        raise InputError("document carries no grading and action")
    out.write(docs.dumps(docs.to_document(solution_from_structural_pair(rep.value).as_solution())))
    return 0


def cmd_derive_rack(args, out: TextIO) -> int:
    s = _solution(args.path)
    nd = check_nondegenerate(s)
    if not nd:
        return _emit_report(nd, out)
    out.write(docs.dumps(docs.to_document(derived_solution(nd.value).rack)))
    return 0


def cmd_linearize(args, out: TextIO) -> int:
    s = _solution(args.path)
    out.write(docs.dumps(docs.to_document(sigma_q(s, _cocycle(args.cocycle, s.quiver)))))
    return 0


def cmd_facemodel(args, out: TextIO) -> int:
    s = _solution(args.path)
    out.write(docs.dumps(docs.to_document(face_model_from_solution(s, _cocycle(args.cocycle, s.quiver)))))
    return 0


def cmd_enumerate(args, out: TextIO) -> int:
    """One solution (or braided structure) per line, then a summary on stderr."""
    doc = _load(args.path)
    rep = _build(doc, "quiver", "groupoid")
    if not rep:
        return _emit_report(rep, out)
    target = rep.value
    if isinstance(target, Groupoid) and not args.as_quiver:
        res = enumerate_braided_structures(target, symmetry=not args.no_symmetry)
    else:
        q = target.quiver if isinstance(target, Groupoid) else target
        spec = SearchSpec(
            q,
            symmetry=not args.no_symmetry,
            node_budget=args.budget,
            workers=args.workers,
            nondegenerate=not args.degenerate,
        )
        res = enumerate_solutions(spec)
    for item in res.items:
        out.write(docs.dumps(docs.to_document(item), compact=True) + "\n")
    sys.stderr.write(json.dumps(res.summary(), sort_keys=True) + "\n")
    return 0 if res.exhaustive else 1


def _read_stream(path: str) -> list[Solution]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    sols = []
    for i, ln in enumerate(lines, 1):
        try:
            doc = docs.loads(ln)
        except docs.DocumentError as e:
            raise InputError(f"{path}:{i}: {e}") from None
        rep = _build(doc, "solution")
        if not rep:
            raise InputError(f"{path}:{i}: not a solution ({rep.axiom})")
        sols.append(rep.value)
    return sols


def cmd_classify(args, out: TextIO) -> int:
    sols = _read_stream(args.path)
    classes = classify(sols, args.mode, args.nmax)
    payload = {
        "mode": args.mode,
        "classes": [
            {"size": len(c), "representative": docs.to_document(c[0]).as_dict()} for c in classes
        ],
    }
    out.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")
    return 0


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiverbraid", description="Solutions of the braid equation on quivers.")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--assert-level", choices=("debug", "release"), default="debug")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name: str, fn, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("path")
        sp.set_defaults(fn=fn)
        return sp

    cmd("validate", cmd_validate, "parse a document and check its axioms")
    c = cmd("check", cmd_check, "extra checks on a valid document")
    c.add_argument("--nondegenerate", action="store_true")
    c.add_argument("--qybe", action="store_true")
    c.add_argument("--rigid", action="store_true")
    c.add_argument("--symmetric", action="store_true")
    c.add_argument("--star-triangular", action="store_true")
    c.add_argument("--cocycle", metavar="FILE")
    cmd("structure-groupoid", cmd_structure_groupoid, "reduced structure groupoid of a solution")
    cmd("reconstruct", cmd_reconstruct, "solution from a structure-groupoid document")
    cmd("derive-rack", cmd_derive_rack, "derived rack of a non-degenerate solution")
    for name, fn in (("linearize", cmd_linearize), ("facemodel", cmd_facemodel)):
        sp = cmd(name, fn, f"{name} a solution, twisted by an optional cocycle")
        sp.add_argument("--cocycle", metavar="FILE")
    e = cmd("enumerate", cmd_enumerate, "solutions on a quiver or braided structures on a groupoid")
    e.add_argument("--budget", type=int, default=10_000_000)
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--no-symmetry", action="store_true")
    e.add_argument("--degenerate", action="store_true", help="keep degenerate solutions")
    e.add_argument("--as-quiver", action="store_true", help="treat a groupoid as its quiver")
    k = cmd("classify", cmd_classify, "partition a solution stream")
    k.add_argument("--mode", choices=("iso", "u-equivalence"), default="iso")
    k.add_argument("--nmax", type=int, default=3)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    random.seed(args.seed)
    set_assert_level(args.assert_level)
    try:
        return args.fn(args, out)
    except InputError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    finally:
        set_assert_level("debug")


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
