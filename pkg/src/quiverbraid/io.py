"""JSON documents for every structure, with a ``kind`` discriminator.

Parsing only checks the shape of a document. Whether the tables satisfy
their axioms is decided by :func:`build`, which returns a Report so the
command line can tell malformed input (exit 2) from a violated axiom
(exit 1). Rationals travel as ``"n/d"`` strings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping

from .braided import BraidedGroupoid, check_braided_groupoid
from .groupoid import Groupoid, validate_groupoid
from .linear import BimoduleMatrix, Face, FaceModel, Space, check_face_model
from .matched import MatchedPair, check_matched_pair
from .quiver import Quiver, QuiverError
from .rack import RackBundle, check_rack_bundle
from .report import Report
from .solution import Solution, SolutionTableError, check_solution

VERSION = 1
KINDS = (
    "quiver",
    "groupoid",
    "solution",
    "matched-pair",
    "rack-bundle",
    "face-model",
    "braided-groupoid",
    "matrix",
    "cocycle",
)


class DocumentError(ValueError):
    """Malformed input: bad JSON, unknown kind or version, or a field of the wrong shape."""


@dataclass(frozen=True)
class Document:
    kind: str
    body: Mapping[str, Any]

    def as_dict(self) -> dict:
        return {"version": VERSION, "kind": self.kind, **self.body}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Document):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash(dumps(self))


def dumps(doc: Document, compact: bool = False) -> str:
    """Canonical text: sorted keys, so equal documents give equal bytes."""
    if compact:
        return json.dumps(doc.as_dict(), sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return json.dumps(doc.as_dict(), sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def loads(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    return from_dict(raw)


def load(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def from_dict(raw: Any) -> Document:
    if not isinstance(raw, dict):
        raise DocumentError("a document must be a JSON object")
    version = raw.get("version", VERSION)
    if version != VERSION:
        raise DocumentError(f"unsupported version {version!r}")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}")
    body = {k: v for k, v in raw.items() if k not in ("version", "kind")}
    _SHAPES[kind](body, kind)
    return Document(kind, body)


# --- shape checks ---------------------------------------------------------------------


def _need(body: Mapping, key: str, where: str) -> Any:
    if key not in body:
        raise DocumentError(f"{where}: missing field {key!r}")
    return body[key]


def _rows(body: Mapping, key: str, width: int, where: str) -> list:
    rows = _need(body, key, where)
    if not isinstance(rows, list):
        raise DocumentError(f"{where}.{key}: expected a list")
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != width:
            raise DocumentError(f"{where}.{key}[{i}]: expected a list of {width}")
    return rows


def _strs(xs: Any, where: str) -> None:
    if not isinstance(xs, list) or not all(isinstance(x, str) for x in xs):
        raise DocumentError(f"{where}: expected a list of strings")


def _shape_quiver(body: Mapping, where: str) -> None:
    _strs(_need(body, "vertices", where), f"{where}.vertices")
    arrows = _need(body, "arrows", where)
    if not isinstance(arrows, list):
        raise DocumentError(f"{where}.arrows: expected a list")
    for i, a in enumerate(arrows):
        if not isinstance(a, dict) or not all(isinstance(a.get(k), str) for k in ("id", "src", "end")):
            raise DocumentError(f"{where}.arrows[{i}]: expected an object with string id, src, end")


def _shape_groupoid(body: Mapping, where: str) -> None:
    _shape_quiver(body, where)
    _rows(body, "identities", 2, where)
    _rows(body, "compose", 3, where)
    _rows(body, "inverse", 2, where)


def _shape_solution(body: Mapping, where: str) -> None:
    _shape_quiver(body, where)
    for i, r in enumerate(_rows(body, "sigma", 2, where)):
        if not all(isinstance(p, list) and len(p) == 2 for p in r):
            raise DocumentError(f"{where}.sigma[{i}]: expected [[x, y], [x', y']]")


def _shape_braided(body: Mapping, where: str) -> None:
    _shape_groupoid(body, where)
    _rows(body, "lact", 3, where)
    _rows(body, "ract", 3, where)
    if "grading" in body or "baction" in body:
        _shape_quiver(_need(body, "quiver", where), f"{where}.quiver")
        _rows(body, "grading", 2, where)
        _rows(body, "baction", 4, where)


def _shape_matched(body: Mapping, where: str) -> None:
    for side in ("V", "H"):
        blk = _need(body, side, where)
        if not isinstance(blk, dict):
            raise DocumentError(f"{where}.{side}: expected an object")
        _shape_groupoid(blk, f"{where}.{side}")
    _rows(body, "lact", 3, where)
    _rows(body, "ract", 3, where)


def _shape_rack(body: Mapping, where: str) -> None:
    _shape_quiver(body, where)
    _rows(body, "triangle", 3, where)


def _shape_face(body: Mapping, where: str) -> None:
    _shape_quiver(body, where)
    faces = _need(body, "faces", where)
    if not isinstance(faces, list):
        raise DocumentError(f"{where}.faces: expected a list")
    for i, f in enumerate(faces):
        if not isinstance(f, dict) or not all(isinstance(f.get(k), str) for k in ("id", "top", "left", "right", "bottom", "weight")):
            raise DocumentError(f"{where}.faces[{i}]: expected id, top, left, right, bottom, weight")
        _frac(f["weight"], f"{where}.faces[{i}].weight")


def _shape_matrix(body: Mapping, where: str) -> None:
    _shape_quiver(body, where)
    for key in ("rows", "cols"):
        labels = _need(body, key, where)
        if not isinstance(labels, list):
            raise DocumentError(f"{where}.{key}: expected a list")
        for lab in labels:
            _label(lab, f"{where}.{key}")
    for i, e in enumerate(_rows(body, "entries", 5, where)):
        _frac(e[4], f"{where}.entries[{i}]")


def _shape_cocycle(body: Mapping, where: str) -> None:
    _shape_quiver(body, where)
    for i, r in enumerate(_rows(body, "weights", 3, where)):
        _frac(r[2], f"{where}.weights[{i}]")


_SHAPES: dict[str, Callable[[Mapping, str], None]] = {
    "quiver": _shape_quiver,
    "groupoid": _shape_groupoid,
    "solution": _shape_solution,
    "matched-pair": _shape_matched,
    "rack-bundle": _shape_rack,
    "face-model": _shape_face,
    "braided-groupoid": _shape_braided,
    "matrix": _shape_matrix,
    "cocycle": _shape_cocycle,
}


def _frac(text: Any, where: str) -> Fraction:
    if not isinstance(text, str):
        raise DocumentError(f"{where}: rationals are written as \"n/d\" strings")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{where}: {text!r} is not a rational") from None


def frac_text(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _label(lab: Any, where: str) -> tuple:
    if not isinstance(lab, list) or not lab:
        raise DocumentError(f"{where}: a basis label is a non-empty list of [kind, name]")
    out = []
    for atom in lab:
        if not (isinstance(atom, list) and len(atom) == 2 and atom[0] in ("e", "d", "u") and isinstance(atom[1], str)):
            raise DocumentError(f"{where}: bad atom {atom!r}")
        out.append((atom[0], atom[1]))
    return tuple(out)


# --- documents from structures --------------------------------------------------------


def _quiver_body(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"id": a, "src": q.src[a], "end": q.end[a]} for a in q.arrows],
    }


def _groupoid_body(g: Groupoid) -> dict:
    return {
        **_quiver_body(g.quiver),
        "identities": [[v, g.identity[v]] for v in g.vertices],
        "compose": [[f, h, g.compose[(f, h)]] for f, h in g.pairs],
        "inverse": [[f, g.inverse[f]] for f in g.arrows],
    }


def _table_rows(g: Groupoid | Quiver, table: Mapping) -> list:
    return [[f, h, table[(f, h)]] for f, h in g.pairs]


def quiver_doc(q: Quiver) -> Document:
    return Document("quiver", _quiver_body(q))


def groupoid_doc(g: Groupoid) -> Document:
    return Document("groupoid", _groupoid_body(g))


def solution_doc(s: Solution) -> Document:
    return Document(
        "solution",
        {**_quiver_body(s.quiver), "sigma": [[[x, y], list(s.sigma(x, y))] for x, y in s.pairs]},
    )


def braided_doc(b: BraidedGroupoid) -> Document:
    g = b.groupoid
    return Document(
        "braided-groupoid",
        {**_groupoid_body(g), "lact": _table_rows(g, b.lact), "ract": _table_rows(g, b.ract)},
    )


def structural_pair_doc(sp) -> Document:
    """The braided groupoid plus the grading of A and the action of G⋈G on A."""
    d = braided_doc(sp.braided)
    body = dict(d.body)
    body["quiver"] = _quiver_body(sp.quiver)
    body["grading"] = [[x, sp.grading[x]] for x in sp.quiver.arrows]
    body["baction"] = [[g, h, x, v] for (g, h, x), v in sorted(sp.action.items())]
    return Document("braided-groupoid", body)


def matched_doc(mp: MatchedPair) -> Document:
    rows = lambda t: [[x, g, t[(x, g)]] for x, g in mp.domain()]  # noqa: E731
    return Document(
        "matched-pair",
        {"V": _groupoid_body(mp.V), "H": _groupoid_body(mp.H), "lact": rows(mp.lact), "ract": rows(mp.ract)},
    )


def rack_doc(rb: RackBundle) -> Document:
    return Document("rack-bundle", {**_quiver_body(rb.quiver), "triangle": _table_rows(rb.quiver, rb.tri)})


def face_model_doc(fm: FaceModel) -> Document:
    faces = [
        {"id": f.name, "top": f.top, "left": f.left, "right": f.right, "bottom": f.bottom, "weight": frac_text(fm.weight[f.name])}
        for f in fm.faces
    ]
    return Document("face-model", {**_quiver_body(fm.quiver), "faces": faces})


def matrix_doc(m: BimoduleMatrix) -> Document:
    """Sparse triples with their degree, in canonical (degree, row, col) order."""
    ro = {lab: i for i, lab in enumerate(m.cod.labels)}
    co = {lab: i for i, lab in enumerate(m.dom.labels)}
    deg = m.cod.degrees
    keys = sorted(m.entries, key=lambda rc: (deg[rc[0]], ro[rc[0]], co[rc[1]]))
    return Document(
        "matrix",
        {
            **_quiver_body(m.dom.quiver),
            "rows": [[list(a) for a in lab] for lab in m.cod.labels],
            "cols": [[list(a) for a in lab] for lab in m.dom.labels],
            "entries": [[deg[r][0], deg[r][1], ro[r], co[c], frac_text(m.entries[(r, c)])] for r, c in keys],
        },
    )


def cocycle_doc(q: Quiver, c: Mapping[tuple[str, str], Fraction]) -> Document:
    return Document("cocycle", {**_quiver_body(q), "weights": [[x, y, frac_text(c[(x, y)])] for x, y in q.pairs]})


# --- structures from documents --------------------------------------------------------


def _quiver(body: Mapping) -> Quiver:
    try:
        return Quiver.build(body["vertices"], ((a["id"], a["src"], a["end"]) for a in body["arrows"]))
    except QuiverError as e:
        raise DocumentError(str(e)) from None


def _groupoid(body: Mapping) -> Report:
    q = _quiver(body)
    ident = {v: i for v, i in body["identities"]}
    comp = {(f, h): fh for f, h, fh in body["compose"]}
    inv = {f: fi for f, fi in body["inverse"]}
    return validate_groupoid(q, ident, comp, inv)


def _pair_table(rows: list) -> dict:
    return {(a, b): c for a, b, c in rows}


def build(doc: Document) -> Report:
    """The validated structure a document describes, or the first violated axiom."""
    body, kind = doc.body, doc.kind
    if kind == "quiver":
        return Report.passed(_quiver(body))
    if kind == "groupoid":
        return _groupoid(body)
    if kind == "solution":
        q = _quiver(body)
        table = {tuple(xy): tuple(ab) for xy, ab in body["sigma"]}
        if len(table) != len(body["sigma"]):
            return Report.failed("function", (), "sigma lists a pair twice")
        try:
            return check_solution(q, table)
        except SolutionTableError as e:
            return Report.failed("table", (), str(e))
    if kind == "braided-groupoid":
        g = _groupoid(body)
        if not g:
            return g
        b = check_braided_groupoid(g.value, _pair_table(body["lact"]), _pair_table(body["ract"]))
        if not b or "grading" not in body:
            return b
        from .structure import check_structural_pair

        q = _quiver(body["quiver"])
        grading = {x: v for x, v in body["grading"]}
        action = {(g_, h, x): v for g_, h, x, v in body["baction"]}
        return check_structural_pair(b.value, q, grading, action)
    if kind == "matched-pair":
        parts = []
        for side in ("V", "H"):
            r = _groupoid(body[side])
            if not r:
                r.axiom = f"{side}:{r.axiom}"
                return r
            parts.append(r.value)
        V, H = parts
        lact, ract = _pair_table(body["lact"]), _pair_table(body["ract"])
        rep = check_matched_pair(V, H, lact, ract)
        if rep:
            rep.value = MatchedPair(V, H, lact, ract)
        return rep
    if kind == "rack-bundle":
        return check_rack_bundle(_quiver(body), _pair_table(body["triangle"]))
    if kind == "face-model":
        q = _quiver(body)
        faces = [Face(f["id"], f["top"], f["left"], f["right"], f["bottom"]) for f in body["faces"]]
        return check_face_model(q, faces, {f["id"]: Fraction(f["weight"]) for f in body["faces"]})
    if kind == "matrix":
        q = _quiver(body)
        rows = [_label(lab, "rows") for lab in body["rows"]]
        cols = [_label(lab, "cols") for lab in body["cols"]]
        try:
            cod, dom = Space(q, tuple(rows)), Space(q, tuple(cols))
            entries = {(rows[r], cols[c]): Fraction(v) for _, _, r, c, v in body["entries"]}
            return Report.passed(BimoduleMatrix(dom, cod, entries))
        except (ValueError, IndexError, KeyError, TypeError) as e:
            return Report.failed("grading", (), str(e))
    q = _quiver(body)
    c = {(x, y): Fraction(v) for x, y, v in body["weights"]}
    missing = [p for p in q.pairs if p not in c]
    if missing:
        return Report.failed("total", missing[0], "weight missing")
    zero = [p for p in q.pairs if c[p] == 0]
    if zero:
        return Report.failed("nonzero", zero[0], "weights must be nonzero")
    return Report.passed(c)


def to_document(obj: Any) -> Document:
    """Document for any structure this package builds."""
    from .structure import StructuralPair

    if isinstance(obj, StructuralPair):
        return structural_pair_doc(obj)
    for cls, fn in (
        (Quiver, quiver_doc),
        (Groupoid, groupoid_doc),
        (Solution, solution_doc),
        (BraidedGroupoid, braided_doc),
        (MatchedPair, matched_doc),
        (RackBundle, rack_doc),
        (FaceModel, face_model_doc),
        (BimoduleMatrix, matrix_doc),
    ):
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError(f"no document kind for {type(obj).__name__}")


def fixture(name: str) -> Document:
    """A bundled fixture by file stem, e.g. ``fixture("flip-l2")``."""
    from importlib.resources import files

    return loads((files(__package__) / "fixtures" / f"{name}.json").read_text(encoding="utf-8"))


def fixture_names() -> list[str]:
    from importlib.resources import files

    return sorted(p.name[:-5] for p in (files(__package__) / "fixtures").iterdir() if p.name.endswith(".json"))
