"""Linearization of braided quivers over the rationals.

Vectors live in graded bimodules over the vertex set P. A basis label is a
tuple of atoms: ``("e", x)`` for the basis vector of an arrow, ``("d", x)``
for its dual and ``("u", P)`` for the unit at a vertex. A label has degree
(source of its first atom, end of its last atom); tensoring concatenates
labels, so the associator is the identity. Unit atoms are dropped next to
anything else, which makes ``kP (x) M`` and ``M`` literally the same space.

Every matrix is degree 0: an entry joining labels of different degree is
rejected at construction.
"""
from __future__ import annotations

import operator
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Mapping

from .quiver import Quiver, fiber_product, fiber_product_pairs, pair_name
from .report import Report, hard_assert
from .solution import Solution, check_nondegenerate

Atom = tuple[str, str]
Label = tuple[Atom, ...]
Degree = tuple[str, str]
Pair = tuple[str, str]


class GradingError(ValueError):
    """An entry or a product does not respect the P-bimodule degrees."""


class NoInverseError(ValueError):
    """A matrix does not determine the braided quiver it came from."""


def _normalize(label: Iterable[Atom]) -> Label:
    atoms = tuple(label)
    rest = tuple(a for a in atoms if a[0] != "u")
    if rest:
        return rest
    return atoms[:1]


def _dual_atom(a: Atom) -> Atom:
    kind, x = a
    return ({"e": "d", "d": "e", "u": "u"}[kind], x)


def dual_label(label: Label) -> Label:
    return tuple(_dual_atom(a) for a in reversed(label))


def label_arrows(label: Label) -> tuple[str, ...]:
    return tuple(x for _, x in label)


def show_label(label: Label) -> str:
    pre = {"e": "e_", "d": "δ_", "u": "1_"}
    return "⊗".join(pre[k] + x for k, x in label)


@dataclass(frozen=True, eq=False)
class Space:
    """A graded basis over the vertices of ``quiver``."""

    quiver: Quiver
    labels: tuple[Label, ...]

    def __post_init__(self) -> None:
        for lab in self.labels:
            self.degree_of(lab)

    def _atom_degree(self, a: Atom) -> Degree:
        kind, x = a
        q = self.quiver
        if kind == "e":
            return q.src[x], q.end[x]
        if kind == "d":
            return q.end[x], q.src[x]
        return x, x

    def degree_of(self, label: Label) -> Degree:
        degs = [self._atom_degree(a) for a in label]
        for (_, e), (s, _) in zip(degs, degs[1:]):
            if e != s:
                raise GradingError(f"label {show_label(label)} is not composable")
        return degs[0][0], degs[-1][1]

    @cached_property
    def degrees(self) -> dict[Label, Degree]:
        return {lab: self.degree_of(lab) for lab in self.labels}

    @cached_property
    def label_set(self) -> frozenset[Label]:
        return frozenset(self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Space):
            return NotImplemented
        return self.quiver == other.quiver and self.label_set == other.label_set

    def __hash__(self) -> int:
        return hash(self.label_set)

    def __len__(self) -> int:
        return len(self.labels)

    def blocks(self) -> dict[Degree, list[Label]]:
        out: dict[Degree, list[Label]] = defaultdict(list)
        for lab in self.labels:
            out[self.degrees[lab]].append(lab)
        return dict(out)


def linearize(q: Quiver) -> Space:
    """Lin(A): one basis vector per arrow, graded by (source, end)."""
    return Space(q, tuple((("e", x),) for x in q.arrows))


def unit_space(q: Quiver) -> Space:
    return Space(q, tuple((("u", p),) for p in q.vertices))


def dual(m: Space) -> Space:
    return Space(m.quiver, tuple(dual_label(lab) for lab in m.labels))


def tensor(m: Space, n: Space) -> Space:
    """Tensor over kP: only pairs whose degrees meet in a vertex survive."""
    if m.quiver != n.quiver:
        raise GradingError("tensor of spaces over different quivers")
    by_src: dict[str, list[Label]] = defaultdict(list)
    for lab in n.labels:
        by_src[n.degrees[lab][0]].append(lab)
    out = []
    for a in m.labels:
        for b in by_src[m.degrees[a][1]]:
            out.append(_normalize(a + b))
    return Space(m.quiver, tuple(out))


def tensor_power(m: Space, k: int) -> Space:
    out = m
    for _ in range(k - 1):
        out = tensor(out, m)
    return out


@dataclass(frozen=True, eq=False)
class BimoduleMatrix:
    """A degree-0 map ``dom -> cod`` stored as sparse (row, col) entries."""

    dom: Space
    cod: Space
    entries: Mapping[tuple[Label, Label], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        dd, cd = self.dom.degrees, self.cod.degrees
        for (r, c), v in self.entries.items():
            if v == 0:
                continue
            if r not in cd or c not in dd:
                raise GradingError(f"entry ({show_label(r)}, {show_label(c)}) outside the spaces")
            if cd[r] != dd[c]:
                raise GradingError(f"entry ({show_label(r)}, {show_label(c)}) has nonzero degree")
            clean[(r, c)] = Fraction(v)
        object.__setattr__(self, "entries", clean)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BimoduleMatrix):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(frozenset(self.entries.items()))

    def __matmul__(self, other: "BimoduleMatrix") -> "BimoduleMatrix":
        """Composition: ``(self @ other)(v) = self(other(v))``."""
        if self.dom != other.cod:
            raise GradingError("composition of maps with mismatched spaces")
        by_col: dict[Label, list[tuple[Label, Fraction]]] = defaultdict(list)
        for (r, k), v in self.entries.items():
            by_col[k].append((r, v))
        out: dict[tuple[Label, Label], Fraction] = defaultdict(Fraction)
        for (k, c), w in other.entries.items():
            for r, v in by_col.get(k, ()):
                out[(r, c)] += v * w
        return BimoduleMatrix(other.dom, self.cod, out)

    def column(self, col: Label) -> dict[Label, Fraction]:
        return {r: v for (r, c), v in self.entries.items() if c == col}

    def columns(self) -> dict[Label, dict[Label, Fraction]]:
        out: dict[Label, dict[Label, Fraction]] = {c: {} for c in self.dom.labels}
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def scale(self, k: Fraction) -> "BimoduleMatrix":
        return BimoduleMatrix(self.dom, self.cod, {rc: k * v for rc, v in self.entries.items()})

    def block_ranks(self) -> dict[Degree, tuple[int, int, int]]:
        """Per degree: (rows, cols, rank)."""
        rows, cols = self.cod.blocks(), self.dom.blocks()
        out = {}
        for d in sorted(set(rows) | set(cols)):
            rs, cs = rows.get(d, []), cols.get(d, [])
            mat = [[self.entries.get((r, c), Fraction(0)) for c in cs] for r in rs]
            out[d] = (len(rs), len(cs), _rank(mat))
        return out

    def is_invertible(self) -> bool:
        return all(r == c == k for r, c, k in self.block_ranks().values())

    def export(self) -> list[tuple[str, str, str, str, str]]:
        """Sparse triples in canonical (degree, row, col) order, values as "n/d"."""
        cd, ro, co = self.cod.degrees, _order(self.cod), _order(self.dom)
        keys = sorted(self.entries, key=lambda rc: (cd[rc[0]], ro[rc[0]], co[rc[1]]))
        return [
            (cd[r][0], cd[r][1], show_label(r), show_label(c), _frac(self.entries[(r, c)]))
            for r, c in keys
        ]


def _order(s: Space) -> dict[Label, int]:
    return {lab: i for i, lab in enumerate(s.labels)}


def _frac(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _rank(mat: list[list[Fraction]]) -> int:
    m = [row[:] for row in mat]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def identity(s: Space) -> BimoduleMatrix:
    return BimoduleMatrix(s, s, {(lab, lab): Fraction(1) for lab in s.labels})


def tensor_maps(f: BimoduleMatrix, g: BimoduleMatrix) -> BimoduleMatrix:
    dom, cod = tensor(f.dom, g.dom), tensor(f.cod, g.cod)
    fd, gd = f.dom.degrees, g.dom.degrees
    out = {}
    for (r1, c1), v in f.entries.items():
        for (r2, c2), w in g.entries.items():
            if fd[c1][1] == gd[c2][0]:
                out[(_normalize(r1 + r2), _normalize(c1 + c2))] = v * w
    return BimoduleMatrix(dom, cod, out)


def ev(m: Space) -> BimoduleMatrix:
    """M* (x) M -> kP, pairing a dual vector with its own basis vector."""
    dom = tensor(dual(m), m)
    unit = unit_space(m.quiver)
    return BimoduleMatrix(
        dom, unit, {((("u", m.degrees[lab][1]),), _normalize(dual_label(lab) + lab)): Fraction(1) for lab in m.labels}
    )


def coev(m: Space) -> BimoduleMatrix:
    """kP -> M (x) M*, sending e_P to the sum of e_x (x) δ_x over x leaving P."""
    cod = tensor(m, dual(m))
    unit = unit_space(m.quiver)
    return BimoduleMatrix(
        unit, cod, {(_normalize(lab + dual_label(lab)), (("u", m.degrees[lab][0]),)): Fraction(1) for lab in m.labels}
    )


def zigzag(m: Space) -> Report:
    """Both snake identities for (ev, coev) as matrix equations."""
    dm = dual(m)
    left = tensor_maps(identity(m), ev(m)) @ tensor_maps(coev(m), identity(m))
    if left != identity(m):
        return Report.failed("zigzag-M", ())
    right = tensor_maps(ev(m), identity(dm)) @ tensor_maps(identity(dm), coev(m))
    if right != identity(dm):
        return Report.failed("zigzag-M*", ())
    return Report.passed()


# --- twisted solutions ----------------------------------------------------------------


def constant_cocycle(q: Quiver, value=1) -> dict[Pair, Fraction]:
    return {p: Fraction(value) for p in q.pairs}


def _require_cocycle_table(q: Quiver, c: Mapping[Pair, Fraction]) -> None:
    for p in q.pairs:
        if p not in c:
            raise ValueError(f"weight missing at {p}")
        if c[p] == 0:
            raise ValueError(f"zero weight at {p}")


def linearize_table(q: Quiver, table: Mapping[Pair, Pair], weights: Mapping[Pair, Fraction] | None = None) -> BimoduleMatrix:
    """The map e_x (x) e_y -> w(x,y) e_a (x) e_b for a table (x,y) -> (a,b)."""
    v2 = tensor(linearize(q), linearize(q))
    out = {}
    for (x, y), (a, b) in table.items():
        w = Fraction(1) if weights is None else Fraction(weights[(x, y)])
        out[((("e", a), ("e", b)), (("e", x), ("e", y)))] = w
    return BimoduleMatrix(v2, v2, out)


def sigma_q(s: Solution, c: Mapping[Pair, Fraction]) -> BimoduleMatrix:
    """σ^q(e_x ⊗ e_y) = q(x,y) e_{x⇀y} ⊗ e_{x↼y}."""
    _require_cocycle_table(s.quiver, c)
    return linearize_table(s.quiver, s.table, c)


def braid_equation(c: BimoduleMatrix, v: Space) -> Report:
    """(c⊗1)(1⊗c)(c⊗1) = (1⊗c)(c⊗1)(1⊗c); the witness is the first differing column."""
    one = identity(v)
    c1, c2 = tensor_maps(c, one), tensor_maps(one, c)
    lhs, rhs = c1 @ c2 @ c1, c2 @ c1 @ c2
    lc, rc = lhs.columns(), rhs.columns()
    for col in tensor_power(v, 3).labels:
        if lc.get(col, {}) != rc.get(col, {}):
            return Report.failed("braid", label_arrows(col))
    return Report.passed()


def check_two_cocycle(
    s: Solution,
    c: Mapping[Pair, object],
    mul: Callable[[object, object], object] = operator.mul,
) -> Report:
    """The multiplicative cocycle identity on every composable triple.

    ``mul`` is the group law of the value group; by default the rationals.
    """
    la, ra = s.lact, s.ract

    def m3(a, b, d):
        return mul(mul(a, b), d)

    for x, y, z in s.quiver.triples():
        xy_l, xy_r = la(x, y), ra(x, y)
        lhs = m3(c[(x, y)], c[(xy_r, z)], c[(xy_l, la(xy_r, z))])
        yz_l, yz_r = la(y, z), ra(y, z)
        rhs = m3(c[(y, z)], c[(x, yz_l)], c[(ra(x, yz_l), yz_r)])
        if lhs != rhs:
            return Report.failed("two-cocycle", (x, y, z))
    return Report.passed()


def apply_coboundary(
    s: Solution,
    c: Mapping[Pair, Fraction],
    u: Mapping[str, Fraction],
    literal: bool = False,
) -> dict[Pair, Fraction]:
    """q̃(x,y) = q(x,y) u(x⇀y) u(x↼y) / (u(x) u(y)).

    With ``literal`` the denominator is u(x) u(x) instead. That variant does
    not intertwine in general and is kept only for comparison.
    """
    for x in s.quiver.arrows:
        if Fraction(u[x]) == 0:
            raise ValueError(f"zero coboundary weight at {x}")
    out = {}
    for (x, y), (a, b) in s.table.items():
        den = u[x] * (u[x] if literal else u[y])
        out[(x, y)] = Fraction(c[(x, y)]) * u[a] * u[b] / den
    if not literal:
        hard_assert(intertwines(s, c, out, u), "coboundary does not intertwine the twisted solutions")
    return out


def intertwiner_phi(q: Quiver, u: Mapping[str, Fraction]) -> BimoduleMatrix:
    """φ_u(e_x) = u(x) e_x."""
    v = linearize(q)
    return BimoduleMatrix(v, v, {((("e", x),), (("e", x),)): Fraction(u[x]) for x in q.arrows})


def intertwines(s: Solution, c1: Mapping[Pair, Fraction], c2: Mapping[Pair, Fraction], u: Mapping[str, Fraction]) -> bool:
    """(φ_u ⊗ φ_u) σ^{c1} = σ^{c2} (φ_u ⊗ φ_u)."""
    phi = intertwiner_phi(s.quiver, u)
    pp = tensor_maps(phi, phi)
    return pp @ sigma_q(s, c1) == sigma_q(s, c2) @ pp


# --- cohomology over small cyclic groups ----------------------------------------------


@dataclass(frozen=True)
class CyclicCohomology:
    """Z² and B² with values in Z/n (written additively) and class representatives."""

    order: int
    cocycles: int
    coboundaries: int
    representatives: tuple[tuple[int, ...], ...]

    @property
    def classes(self) -> int:
        return len(self.representatives)


_BRUTE_FORCE_CAP = 1 << 20


def _cyclic_coboundaries(s: Solution, n: int) -> set[tuple[int, ...]]:
    q = s.quiver
    idx = q.index
    out = set()
    for u in product(range(n), repeat=len(q.arrows)):
        out.add(
            tuple((u[idx[a]] + u[idx[b]] - u[idx[x]] - u[idx[y]]) % n for (x, y), (a, b) in zip(q.pairs, (s.table[p] for p in q.pairs)))
        )
    return out


def _cyclic_cocycles(s: Solution, n: int) -> list[tuple[int, ...]]:
    q = s.quiver
    pid = q.pair_index
    la, ra = s.lact, s.ract
    ready: dict[int, list[tuple[tuple[int, ...], tuple[int, ...]]]] = defaultdict(list)
    for x, y, z in q.triples():
        xy_l, xy_r = la(x, y), ra(x, y)
        yz_l, yz_r = la(y, z), ra(y, z)
        lhs = (pid[(x, y)], pid[(xy_r, z)], pid[(xy_l, la(xy_r, z))])
        rhs = (pid[(y, z)], pid[(x, yz_l)], pid[(ra(x, yz_l), yz_r)])
        ready[max(lhs + rhs)].append((lhs, rhs))
    m = len(q.pairs)
    vals = [0] * m
    out: list[tuple[int, ...]] = []

    def go(k: int) -> None:
        if k == m:
            out.append(tuple(vals))
            return
        for v in range(n):
            vals[k] = v
            if all(sum(vals[i] for i in l) % n == sum(vals[i] for i in r) % n for l, r in ready[k]):
                go(k + 1)

    go(0)
    return out


def cyclic_cohomology(s: Solution, n: int) -> CyclicCohomology:
    """Brute-force H² of ``s`` with values in Z/n; small inputs only."""
    q = s.quiver
    if not 1 <= n <= 4 or len(q.arrows) > 4 or n ** len(q.pairs) > _BRUTE_FORCE_CAP:
        raise ValueError("cyclic cohomology is brute force: order at most 4, at most 4 arrows")
    z2 = _cyclic_cocycles(s, n)
    b2 = _cyclic_coboundaries(s, n)
    seen: set[tuple[int, ...]] = set()
    reps = []
    for c in z2:
        if c in seen:
            continue
        reps.append(c)
        for b in b2:
            seen.add(tuple((a + d) % n for a, d in zip(c, b)))
    return CyclicCohomology(n, len(z2), len(b2), tuple(reps))


def cyclic_cohomologous(s: Solution, n: int, c1: Mapping[Pair, int], c2: Mapping[Pair, int]) -> dict[str, int] | None:
    """A u: A -> Z/n carrying c1 to c2, if one exists."""
    q = s.quiver
    for u in product(range(n), repeat=len(q.arrows)):
        w = dict(zip(q.arrows, u))
        if all((c1[(x, y)] + w[a] + w[b] - w[x] - w[y] - c2[(x, y)]) % n == 0 for (x, y), (a, b) in s.table.items()):
            return w
    return None


# --- rigidity -------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Rigidity:
    flat: BimoduleMatrix
    invertible: bool
    ranks: dict[Degree, tuple[int, int, int]]


def rigidity_flat(s: Solution, c: Mapping[Pair, Fraction] | None = None) -> Rigidity:
    """c♭ = (ev ⊗ 1)(1 ⊗ c ⊗ 1)(1 ⊗ coev) on M* ⊗ M, with an exact-rank verdict.

    Invertibility of c♭ must agree with non-degeneracy of the solution.
    """
    c = constant_cocycle(s.quiver) if c is None else c
    v = linearize(s.quiver)
    dv = dual(v)
    sig = sigma_q(s, c)
    step1 = tensor_maps(identity(tensor(dv, v)), coev(v))
    step2 = tensor_maps(tensor_maps(identity(dv), sig), identity(dv))
    step3 = tensor_maps(ev(v), identity(tensor(v, dv)))
    flat = step3 @ step2 @ step1
    ranks = flat.block_ranks()
    ok = all(r == k == n for r, k, n in ranks.values())
    hard_assert(ok == bool(check_nondegenerate(s)), "rigidity of c♭ disagrees with non-degeneracy")
    return Rigidity(flat, ok, ranks)


def flat_formula(s: Solution, c: Mapping[Pair, Fraction] | None = None) -> BimoduleMatrix:
    """c♭(δ_x ⊗ e_y) = Σ q(y,z) e_{y↼z} ⊗ δ_z over z leaving e(y) with y⇀z = x."""
    q = s.quiver
    c = constant_cocycle(q) if c is None else c
    v = linearize(q)
    out: dict[tuple[Label, Label], Fraction] = defaultdict(Fraction)
    for (y, z), (a, b) in s.table.items():
        out[((("e", b), ("d", z)), (("d", a), ("e", y)))] += Fraction(c[(y, z)])
    return BimoduleMatrix(tensor(dual(v), v), tensor(v, dual(v)), out)


# --- face models ----------------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    """A box with sides in A: top and bottom horizontal, left and right vertical."""

    name: str
    top: str
    left: str
    right: str
    bottom: str


@dataclass(frozen=True, eq=False)
class FaceModel:
    quiver: Quiver
    faces: tuple[Face, ...]
    weight: Mapping[str, Fraction]

    def xi(self, f: Face) -> Pair:
        return (f.top, f.right)

    def is_vacant(self) -> bool:
        seen = [self.xi(f) for f in self.faces]
        return len(set(seen)) == len(seen) == len(self.quiver.pairs)

    def export(self) -> list[tuple[str, str, str, str, str, str]]:
        return [(f.name, f.top, f.left, f.right, f.bottom, _frac(self.weight[f.name])) for f in self.faces]


def check_face_model(q: Quiver, faces: Iterable[Face], weight: Mapping[str, Fraction]) -> Report:
    """Corners match, weights are nonzero, Θ is injective and Ξ surjective."""
    faces = tuple(faces)
    s, e = q.src, q.end
    for f in faces:
        sides = (f.top, f.left, f.right, f.bottom)
        if any(x not in s for x in sides):
            return Report.failed("sides", (f.name,), "a side is not an arrow")
        if not (s[f.top] == s[f.left] and e[f.top] == s[f.right] and s[f.bottom] == e[f.left] and e[f.bottom] == e[f.right]):
            return Report.failed("corners", (f.name,))
        if Fraction(weight.get(f.name, 0)) == 0:
            return Report.failed("weight", (f.name,), "weights must be nonzero")
    theta: dict[tuple, str] = {}
    for f in faces:
        key = (f.top, f.left, f.right, f.bottom)
        if key in theta:
            return Report.failed("theta-injective", (theta[key], f.name))
        theta[key] = f.name
    covered = {(f.top, f.right) for f in faces}
    for p in q.pairs:
        if p not in covered:
            return Report.failed("xi-surjective", p)
    return Report.passed(FaceModel(q, faces, {f.name: Fraction(weight[f.name]) for f in faces}))


def face_model_from_solution(s: Solution, c: Mapping[Pair, Fraction] | None = None) -> FaceModel:
    """One box per pair (x, g): top x, left x⇀g, right g, bottom x↼g, weight q(x, g)."""
    c = constant_cocycle(s.quiver) if c is None else c
    faces = [Face(f"[{x}|{g}]", x, a, g, b) for (x, g), (a, b) in s.table.items()]
    weight = {f.name: Fraction(c[(f.top, f.right)]) for f in faces}
    fm = check_face_model(s.quiver, faces, weight).unwrap()
    hard_assert(fm.is_vacant(), "face model of a solution must be vacant")
    return fm


def solution_matrix_from_face_model(fm: FaceModel) -> BimoduleMatrix:
    """c^w(e_x ⊗ e_g) = Σ w(box) e_f ⊗ e_y over boxes with top x and right g."""
    v2 = tensor(linearize(fm.quiver), linearize(fm.quiver))
    out: dict[tuple[Label, Label], Fraction] = defaultdict(Fraction)
    for f in fm.faces:
        out[((("e", f.left), ("e", f.bottom)), (("e", f.top), ("e", f.right)))] += fm.weight[f.name]
    return BimoduleMatrix(v2, v2, out)


def star_triangular(fm: FaceModel) -> Report:
    return braid_equation(solution_matrix_from_face_model(fm), linearize(fm.quiver))


# --- R-matrix form --------------------------------------------------------------------


def qybe_matrix(s: Solution, c: Mapping[Pair, Fraction] | None = None) -> Report:
    """R12 R13 R23 = R23 R13 R12 for R = τσ^q, column by column on composable triples.

    R(e_x ⊗ e_y) = q(x,y) e_{x↼y} ⊗ e_{x⇀y} is defined on composable pairs and
    zero elsewhere. A failure names the triple and its degree block.
    """
    q = s.quiver
    c = constant_cocycle(q) if c is None else c
    _require_cocycle_table(q, c)
    r = {(x, y): (b, a) for (x, y), (a, b) in s.table.items()}

    def act(i: int, j: int, vec: dict[tuple[str, ...], Fraction]) -> dict[tuple[str, ...], Fraction]:
        out: dict[tuple[str, ...], Fraction] = defaultdict(Fraction)
        for t, v in vec.items():
            key = (t[i], t[j])
            if key not in r:
                continue
            t2 = list(t)
            t2[i], t2[j] = r[key]
            out[tuple(t2)] += v * c[key]
        return {t: v for t, v in out.items() if v != 0}

    for t in q.triples():
        start = {t: Fraction(1)}
        lhs = act(0, 1, act(0, 2, act(1, 2, start)))
        rhs = act(1, 2, act(0, 2, act(0, 1, start)))
        if lhs != rhs or not lhs:
            rep = Report.failed("qybe", t, f"degree block ({q.src[t[0]]}, {q.end[t[2]]})")
            rep.extra["block"] = (q.src[t[0]], q.end[t[2]])
            return rep
    return Report.passed()


# --- comparisons ----------------------------------------------------------------------


def tensor_bijection(a: Quiver, b: Quiver) -> dict[Label, Label]:
    """Basis bijection Lin(A ⊗ B) -> Lin(A) ⊗ Lin(B), checked to preserve degrees."""
    fp = fiber_product(a, b)
    joint = Quiver.build(
        a.vertices,
        [(f"A:{x}", a.src[x], a.end[x]) for x in a.arrows] + [(f"B:{y}", b.src[y], b.end[y]) for y in b.arrows],
    )
    ta = Space(joint, tuple((("e", f"A:{x}"),) for x in a.arrows))
    tb = Space(joint, tuple((("e", f"B:{y}"),) for y in b.arrows))
    tab = tensor(ta, tb)
    lin = linearize(fp)
    out = {}
    for x, y in fiber_product_pairs(a, b):
        src = (("e", pair_name(x, y)),)
        dst = (("e", f"A:{x}"), ("e", f"B:{y}"))
        hard_assert(lin.degrees[src] == tab.degrees[dst], f"degree changes at {(x, y)}")
        out[src] = dst
    hard_assert(set(out.values()) == tab.label_set and len(out) == len(lin), "tensor bijection fails")
    return out


def lyz_bridge(s: Solution) -> Report:
    """The braiding read off the structural pair linearizes to σ^1."""
    from .structure import reduced_structure_groupoid, solution_from_structural_pair

    sp = reduced_structure_groupoid(s)
    t = solution_from_structural_pair(sp)
    m = linearize_table(s.quiver, t.table)
    if m != sigma_q(s, constant_cocycle(s.quiver)):
        return Report.failed("bridge", ())
    return Report.passed(m)


def solution_from_matrix(*_args, **_kwargs):
    """Refused: the same matrix arises from non-isomorphic braided quivers."""
    raise NoInverseError("a twisted linearization does not determine its braided quiver")


def dimension(m: Space) -> BimoduleMatrix:
    """ev_{M*} ∘ coev_M on kP: at e_P this is the number of basis vectors leaving P."""
    return ev(dual(m)) @ coev(m)
