"""Finite groupoids with explicit composition tables.

Composition is juxtaposition: ``mul(f, g)`` is defined when
``end(f) == src(g)`` and is written fg.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from .quiver import Quiver, connected_components
from .report import Report, hard_assert


class GroupoidError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Groupoid:
    quiver: Quiver
    identity: Mapping[str, str]
    compose: Mapping[tuple[str, str], str]
    inverse: Mapping[str, str]

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[str, ...]:
        return self.quiver.arrows

    def src(self, f: str) -> str:
        return self.quiver.src[f]

    def end(self, f: str) -> str:
        return self.quiver.end[f]

    def mul(self, f: str, g: str) -> str:
        try:
            return self.compose[(f, g)]
        except KeyError:
            raise GroupoidError(f"{f!r} and {g!r} are not composable") from None

    def mul_all(self, fs: Sequence[str], src: str | None = None) -> str:
        if not fs:
            if src is None:
                raise GroupoidError("empty product needs a vertex")
            return self.identity[src]
        acc = fs[0]
        for f in fs[1:]:
            acc = self.mul(acc, f)
        return acc

    def inv(self, f: str) -> str:
        return self.inverse[f]

    def is_identity(self, f: str) -> bool:
        return self.identity[self.src(f)] == f

    @cached_property
    def identities(self) -> frozenset[str]:
        return frozenset(self.identity.values())

    @property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        return self.quiver.pairs

    def hom(self, p: str, q: str) -> tuple[str, ...]:
        return self.quiver.hom(p, q)

    def loops(self, p: str) -> tuple[str, ...]:
        return self.quiver.hom(p, p)

    def is_group_bundle(self) -> bool:
        return self.quiver.is_loop_bundle()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Groupoid):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and dict(self.identity) == dict(other.identity)
            and dict(self.compose) == dict(other.compose)
            and dict(self.inverse) == dict(other.inverse)
        )

    def __hash__(self) -> int:
        return hash(self.quiver)

    def __repr__(self) -> str:
        return f"Groupoid({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


def validate_groupoid(
    quiver: Quiver,
    identity: Mapping[str, str],
    compose: Mapping[tuple[str, str], str],
    inverse: Mapping[str, str],
) -> Report:
    """Check every groupoid axiom; report the first failure with witnesses."""
    q = quiver
    for v in q.vertices:
        i = identity.get(v)
        if i is None or i not in q.src:
            return Report.failed("identity", (v,), "missing identity arrow")
        if q.src[i] != v or q.end[i] != v:
            return Report.failed("identity", (v, i), "identity is not a loop at its vertex")
    for f, g in q.pairs:
        h = compose.get((f, g))
        if h is None or h not in q.src:
            return Report.failed("compose-total", (f, g), "composite missing")
        if q.src[h] != q.src[f] or q.end[h] != q.end[g]:
            return Report.failed("compose-ends", (f, g, h), "composite has wrong endpoints")
    extra = set(compose) - set(q.pairs)
    if extra:
        return Report.failed("compose-domain", min(extra), "non-composable pair in table")
    for f in q.arrows:
        if compose[(identity[q.src[f]], f)] != f or compose[(f, identity[q.end[f]])] != f:
            return Report.failed("unit", (f,), "identity law fails")
    for f, g, h in q.triples():
        if compose[(compose[(f, g)], h)] != compose[(f, compose[(g, h)])]:
            return Report.failed("associativity", (f, g, h), "(fg)h != f(gh)")
    for f in q.arrows:
        fi = inverse.get(f)
        if fi is None or fi not in q.src or q.src[fi] != q.end[f] or q.end[fi] != q.src[f]:
            return Report.failed("inverse", (f,), "inverse missing or misplaced")
        if compose[(f, fi)] != identity[q.src[f]]:
            return Report.failed("inverse", (f, fi), "g·g⁻¹ ≠ id")
        if compose[(fi, f)] != identity[q.end[f]]:
            return Report.failed("inverse", (f, fi), "g⁻¹·g ≠ id")
    return Report.passed(Groupoid(quiver, dict(identity), dict(compose), dict(inverse)))


def make_groupoid(
    quiver: Quiver,
    identity: Mapping[str, str],
    compose: Mapping[tuple[str, str], str],
    inverse: Mapping[str, str] | None = None,
) -> Groupoid:
    """Build and validate; inverses are solved from the table when omitted."""
    if inverse is None:
        inverse = {}
        for f in quiver.arrows:
            for g in quiver.hom(quiver.end[f], quiver.src[f]):
                if compose.get((f, g)) == identity[quiver.src[f]]:
                    inverse[f] = g
                    break
    return validate_groupoid(quiver, identity, compose, inverse).unwrap()


def group_groupoid(
    elements: Sequence[str], mul: Callable[[str, str], str], vertex: str = "p"
) -> Groupoid:
    """A finite group as a one-vertex groupoid; the first element must be the unit."""
    q = Quiver.build((vertex,), ((x, vertex, vertex) for x in elements))
    comp = {(x, y): mul(x, y) for x in elements for y in elements}
    return make_groupoid(q, {vertex: elements[0]}, comp)


def cyclic_group(n: int, vertex: str = "p", name: str = "g") -> Groupoid:
    """Z_n with elements 1, g, g2, ..., g{n-1}."""
    names = ["1"] + [name if k == 1 else f"{name}{k}" for k in range(1, n)]
    return group_groupoid(names, lambda x, y: names[(names.index(x) + names.index(y)) % n], vertex)


def symmetric_group_3(vertex: str = "p") -> Groupoid:
    """S3 as permutations of (0,1,2); names are one-line notation, composition f then g."""
    from itertools import permutations

    perms = sorted(permutations(range(3)))
    names = ["".join(map(str, p)) for p in perms]
    lookup = {p: n for p, n in zip(perms, names)}

    def mul(a: str, b: str) -> str:
        pa, pb = tuple(map(int, a)), tuple(map(int, b))
        return lookup[tuple(pb[pa[i]] for i in range(3))]

    return group_groupoid(names, mul, vertex)


def coarse_groupoid(vertices: Iterable[str]) -> Groupoid:
    """Pairs (x, y) composing as (x, y)(y, v) = (x, v)."""
    vs = tuple(vertices)
    name = {(x, y): f"({x},{y})" for x in vs for y in vs}
    q = Quiver.build(vs, ((name[(x, y)], x, y) for x in vs for y in vs))
    comp = {(name[(x, y)], name[(y, v)]): name[(x, v)] for x in vs for y in vs for v in vs}
    return validate_groupoid(
        q,
        {x: name[(x, x)] for x in vs},
        comp,
        {name[(x, y)]: name[(y, x)] for x in vs for y in vs},
    ).unwrap()


def product_groupoid(g: Groupoid, h: Groupoid) -> Groupoid:
    """Cartesian product over the vertex set V(g) x V(h)."""
    vname = {(p, q): f"{p}.{q}" for p in g.vertices for q in h.vertices}
    aname = {(f, k): f"{f}.{k}" for f in g.arrows for k in h.arrows}
    arrows = [
        (aname[(f, k)], vname[(g.src(f), h.src(k))], vname[(g.end(f), h.end(k))])
        for f in g.arrows
        for k in h.arrows
    ]
    q = Quiver.build(vname.values(), arrows)
    comp = {}
    for f1, f2 in g.pairs:
        for k1, k2 in h.pairs:
            comp[(aname[(f1, k1)], aname[(f2, k2)])] = aname[(g.mul(f1, f2), h.mul(k1, k2))]
    ident = {vname[(p, r)]: aname[(g.identity[p], h.identity[r])] for p in g.vertices for r in h.vertices}
    inv = {aname[(f, k)]: aname[(g.inv(f), h.inv(k))] for f in g.arrows for k in h.arrows}
    return validate_groupoid(q, ident, comp, inv).unwrap()


def disjoint_union_groupoid(g: Groupoid, h: Groupoid) -> Groupoid:
    if set(g.vertices) & set(h.vertices) or set(g.arrows) & set(h.arrows):
        raise GroupoidError("groupoids are not disjoint")
    q = Quiver.build(
        g.vertices + h.vertices,
        [(f, g.src(f), g.end(f)) for f in g.arrows] + [(f, h.src(f), h.end(f)) for f in h.arrows],
    )
    return validate_groupoid(
        q,
        {**g.identity, **h.identity},
        {**g.compose, **h.compose},
        {**g.inverse, **h.inverse},
    ).unwrap()


def subgroupoid(g: Groupoid, arrows: Iterable[str]) -> Groupoid:
    """Restriction to a set of arrows closed under composition and inverses (wide)."""
    keep = set(arrows) | set(g.identity.values())
    q = g.quiver.restrict(keep)
    comp = {}
    for f, h in q.pairs:
        fh = g.mul(f, h)
        if fh not in keep:
            raise GroupoidError(f"arrow set not closed: {f}·{h}")
        comp[(f, h)] = fh
    inv = {}
    for f in q.arrows:
        if g.inv(f) not in keep:
            raise GroupoidError(f"arrow set not closed under inverse: {f}")
        inv[f] = g.inv(f)
    return validate_groupoid(q, dict(g.identity), comp, inv).unwrap()


# --- morphisms, normal bundles, quotients -------------------------------------


@dataclass(frozen=True)
class GroupoidMorphism:
    domain: Groupoid
    codomain: Groupoid
    amap: Mapping[str, str]

    def __call__(self, f: str) -> str:
        return self.amap[f]


def check_morphism(t: GroupoidMorphism) -> Report:
    g, h = t.domain, t.codomain
    if g.vertices != h.vertices:
        return Report.failed("base", (), "morphism must be over a common vertex set")
    for f in g.arrows:
        x = t.amap.get(f)
        if x is None or h.src(x) != g.src(f) or h.end(x) != g.end(f):
            return Report.failed("over-base", (f,), "arrow map does not fix endpoints")
    for f, k in g.pairs:
        if t.amap[g.mul(f, k)] != h.mul(t.amap[f], t.amap[k]):
            return Report.failed("multiplicative", (f, k))
    return Report.passed(t)


def image(t: GroupoidMorphism) -> frozenset[str]:
    return frozenset(t.amap.values())


def kernel(t: GroupoidMorphism) -> Groupoid:
    """Ker T: arrows sent to identities; a wide normal subgroup bundle."""
    h = t.codomain
    arrows = [f for f in t.domain.arrows if h.is_identity(t.amap[f])]
    return subgroupoid(t.domain, arrows)


def is_subgroup_bundle(g: Groupoid, n: Iterable[str]) -> bool:
    ns = set(n)
    if not ns <= set(g.arrows):
        return False
    if not set(g.identity.values()) <= ns:
        return False
    for f in ns:
        if g.src(f) != g.end(f) or g.inv(f) not in ns:
            return False
    return all(g.mul(f, k) in ns for f in ns for k in ns if g.src(k) == g.end(f))


def is_normal_bundle(g: Groupoid, n: Iterable[str]) -> bool:
    """Wide subgroup bundle with x n x^-1 in N for every x ending where n lives."""
    ns = set(n)
    if not is_subgroup_bundle(g, ns):
        return False
    for x in g.arrows:
        for m in g.loops(g.end(x)):
            if m in ns and g.mul(g.mul(x, m), g.inv(x)) not in ns:
                return False
    return True


@dataclass(frozen=True)
class Quotient:
    groupoid: Groupoid
    projection: GroupoidMorphism
    cosets: Mapping[str, tuple[str, ...]]


def quotient_by_bundle(g: Groupoid, n: Iterable[str]) -> Quotient:
    """G/N with hom-sets G(P,Q)/N(Q); each coset is named by its least arrow."""
    ns = set(n)
    if not is_normal_bundle(g, ns):
        raise GroupoidError("bundle is not a normal wide subgroup bundle")
    order = g.quiver.index
    rep: dict[str, str] = {}
    cosets: dict[str, tuple[str, ...]] = {}
    for f in g.arrows:
        if f in rep:
            continue
        coset = sorted({g.mul(f, m) for m in g.loops(g.end(f)) if m in ns}, key=order.__getitem__)
        for c in coset:
            rep[c] = coset[0]
        cosets[coset[0]] = tuple(coset)
    reps = [f for f in g.arrows if rep[f] == f]
    q = g.quiver.restrict(reps)
    comp = {(f, k): rep[g.mul(f, k)] for f, k in q.pairs}
    inv = {f: rep[g.inv(f)] for f in reps}
    ident = {v: rep[i] for v, i in g.identity.items()}
    quot = validate_groupoid(q, ident, comp, inv).unwrap()
    proj = GroupoidMorphism(g, quot, rep)
    hard_assert(bool(check_morphism(proj)), "projection to a quotient is not a morphism")
    return Quotient(quot, proj, cosets)


@dataclass(frozen=True)
class ComponentDecomposition:
    base: str
    vertices: tuple[str, ...]
    group: tuple[str, ...]
    transversal: Mapping[str, str]
    forward: Mapping[str, tuple[str, tuple[str, str]]]
    backward: Mapping[tuple[str, tuple[str, str]], str]


def structure_decomposition(g: Groupoid) -> list[ComponentDecomposition]:
    """G_X = G(x) x X^2 per component, via least arrows x -> y as transversal."""
    out = []
    for comp in connected_components(g.quiver):
        x = comp[0]
        t = {y: g.hom(x, y)[0] for y in comp}
        t[x] = g.identity[x]
        fwd, bwd = {}, {}
        for y in comp:
            for z in comp:
                for f in g.hom(y, z):
                    h = g.mul_all([t[y], f, g.inv(t[z])])
                    fwd[f] = (h, (y, z))
                    bwd[(h, (y, z))] = f
        for h in g.loops(x):
            for y in comp:
                for z in comp:
                    f = g.mul_all([g.inv(t[y]), h, t[z]])
                    hard_assert(fwd[f] == (h, (y, z)), "structure isomorphism is not invertible")
        out.append(ComponentDecomposition(x, comp, g.loops(x), t, fwd, bwd))
    return out


# --- actions and aut p ----------------------------------------------------------


@dataclass(frozen=True)
class AutElement:
    """(P, bijection fiber(Q) -> fiber(P), Q), table stored as sorted pairs."""

    src: str
    table: tuple[tuple[str, str], ...]
    end: str

    @classmethod
    def of(cls, src: str, mapping: Mapping[str, str], end: str) -> "AutElement":
        return cls(src, tuple(sorted(mapping.items())), end)

    @property
    def map(self) -> dict[str, str]:
        return dict(self.table)

    def __call__(self, e: str) -> str:
        return self.map[e]

    def then(self, other: "AutElement") -> "AutElement":
        """Composite (P,x,Q)(Q,y,R) = (P, x∘y, R)."""
        if self.end != other.src:
            raise GroupoidError("aut elements are not composable")
        mx = self.map
        return AutElement.of(self.src, {e: mx[v] for e, v in other.table}, other.end)

    def inverse(self) -> "AutElement":
        return AutElement.of(self.end, {v: e for e, v in self.table}, self.src)

    def is_bijective(self) -> bool:
        vals = [v for _, v in self.table]
        return len(set(vals)) == len(vals)


@dataclass(frozen=True)
class LeftAction:
    """g ⇀ e for end(g) == p(e); lands over src(g)."""

    groupoid: Groupoid
    fiber: Mapping[str, str]
    table: Mapping[tuple[str, str], str]

    def act(self, g: str, e: str) -> str:
        return self.table[(g, e)]

    def elements_over(self, p: str) -> list[str]:
        return [e for e, v in self.fiber.items() if v == p]


def check_left_action(a: LeftAction) -> Report:
    g, p = a.groupoid, a.fiber
    by_vertex: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e, v in p.items():
        by_vertex[v].append(e)
    for f in g.arrows:
        for e in by_vertex[g.end(f)]:
            r = a.table.get((f, e))
            if r is None:
                return Report.failed("total", (f, e), "action undefined")
            if p.get(r) != g.src(f):
                return Report.failed("fiber", (f, e, r), "p(g⇀e) ≠ s(g)")
    for v in g.vertices:
        i = g.identity[v]
        for e in by_vertex[v]:
            if a.table[(i, e)] != e:
                return Report.failed("unit", (i, e))
    for f, h in g.pairs:
        fh = g.mul(f, h)
        for e in by_vertex[g.end(h)]:
            if a.table[(f, a.table[(h, e)])] != a.table[(fh, e)]:
                return Report.failed("associativity", (f, h, e), "g⇀(h⇀e) ≠ gh⇀e")
    return Report.passed(a)


def action_as_morphism(a: LeftAction) -> dict[str, AutElement]:
    """ρ(g) = (s(g), g⇀·, e(g))."""
    g = a.groupoid
    out = {}
    for f in g.arrows:
        out[f] = AutElement.of(
            g.src(f), {e: a.table[(f, e)] for e in a.elements_over(g.end(f))}, g.end(f)
        )
    return out


def morphism_as_action(g: Groupoid, fiber: Mapping[str, str], rho: Mapping[str, AutElement]) -> LeftAction:
    table = {}
    for f in g.arrows:
        r = rho[f]
        if r.src != g.src(f) or r.end != g.end(f):
            raise GroupoidError(f"ρ({f}) has wrong endpoints")
        for e, v in r.table:
            table[(f, e)] = v
    return LeftAction(g, dict(fiber), table)


def trivial_action(g: Groupoid, xs: Sequence[str]) -> LeftAction:
    """Trivial action on P x X; elements are named 'P:x'."""
    fiber = {f"{v}:{x}": v for v in g.vertices for x in xs}
    table = {(f, f"{g.end(f)}:{x}"): f"{g.src(f)}:{x}" for f in g.arrows for x in xs}
    return LeftAction(g, fiber, table)


def left_regular_action(g: Groupoid) -> LeftAction:
    """G acting on t = src: G -> P by left multiplication."""
    fiber = {f: g.src(f) for f in g.arrows}
    table = {(f, h): g.mul(f, h) for f, h in g.pairs}
    return LeftAction(g, fiber, table)


def adjoint_action(g: Groupoid, n: Iterable[str]) -> dict[tuple[str, str], str]:
    """n ↼ g = g⁻¹ n g on a normal bundle."""
    ns = set(n)
    return {
        (m, f): g.mul_all([g.inv(f), m, f])
        for f in g.arrows
        for m in g.loops(g.src(f))
        if m in ns
    }


# --- semidirect products --------------------------------------------------------


@dataclass(frozen=True)
class SemidirectProduct:
    groupoid: Groupoid
    pair_of: Mapping[str, tuple[str, str]]
    projection: GroupoidMorphism
    section: Mapping[str, str]


def check_bundle_automorphism_action(
    v: Groupoid, n: Groupoid, act: Mapping[tuple[str, str], str]
) -> Report:
    """Right action of V on the bundle N by group-bundle automorphisms."""
    for f in v.arrows:
        for m in n.loops(v.src(f)):
            r = act.get((m, f))
            if r is None or n.src(r) != v.end(f):
                return Report.failed("right-action", (m, f), "n↼g undefined or misplaced")
    for p in v.vertices:
        for m in n.loops(p):
            if act[(m, v.identity[p])] != m:
                return Report.failed("unit", (m, p))
    for f, h in v.pairs:
        for m in n.loops(v.src(f)):
            if act[(act[(m, f)], h)] != act[(m, v.mul(f, h))]:
                return Report.failed("right-action", (m, f, h), "(n↼f)↼h ≠ n↼fh")
    for f in v.arrows:
        ls = n.loops(v.src(f))
        for m1, m2 in product(ls, ls):
            if act[(n.mul(m1, m2), f)] != n.mul(act[(m1, f)], act[(m2, f)]):
                return Report.failed("automorphism", (m1, m2, f), "xy↼g ≠ (x↼g)(y↼g)")
    return Report.passed()


def semidirect_product(
    v: Groupoid, n: Groupoid, act: Mapping[tuple[str, str], str]
) -> SemidirectProduct:
    """V ⋉ N: pairs (f, m) with m over end(f); (f,m)(h,k) = (fh, (m↼h)k)."""
    if v.vertices != n.vertices or not n.is_group_bundle():
        raise GroupoidError("need a groupoid and a group bundle over the same base")
    rep = check_bundle_automorphism_action(v, n, act)
    if not rep:
        raise GroupoidError(f"action not by bundle automorphisms: {rep.axiom} {rep.witness}")
    name: dict[tuple[str, str], str] = {}
    arrows = []
    for f in v.arrows:
        for m in n.loops(v.end(f)):
            name[(f, m)] = f"({f},{m})"
            arrows.append((name[(f, m)], v.src(f), v.end(f)))
    q = Quiver.build(v.vertices, arrows)
    pair_of = {nm: fm for fm, nm in name.items()}
    comp = {}
    for a, b in q.pairs:
        f, m = pair_of[a]
        h, k = pair_of[b]
        comp[(a, b)] = name[(v.mul(f, h), n.mul(act[(m, h)], k))]
    inv = {}
    for a in q.arrows:
        f, m = pair_of[a]
        fi = v.inv(f)
        inv[a] = name[(fi, act[(n.inv(m), fi)])]
    ident = {p: name[(v.identity[p], n.identity[p])] for p in v.vertices}
    gg = validate_groupoid(q, ident, comp, inv).unwrap()
    proj = GroupoidMorphism(gg, v, {a: pair_of[a][0] for a in gg.arrows})
    section = {f: name[(f, n.identity[v.end(f)])] for f in v.arrows}
    return SemidirectProduct(gg, pair_of, proj, section)


def is_abelian_bundle(n: Groupoid, arrows: Iterable[str] | None = None) -> tuple[bool, tuple]:
    ns = set(n.arrows if arrows is None else arrows)
    for p in n.vertices:
        ls = [m for m in n.loops(p) if m in ns]
        for a, b in product(ls, ls):
            if n.mul(a, b) != n.mul(b, a):
                return False, (a, b)
    return True, ()


def groupoid_automorphisms(g: Groupoid) -> list[dict[str, str]]:
    """Automorphisms over the base (fixing vertices), by extending generator images."""
    from .words import generating_set

    gens = generating_set(g)
    out: list[dict[str, str]] = []

    def extend(images: dict[str, str]) -> dict[str, str] | None:
        m = {g.identity[v]: g.identity[v] for v in g.vertices}
        frontier = list(m)
        while frontier:
            nxt = []
            for f in frontier:
                for s in gens:
                    if g.end(f) != g.src(s):
                        continue
                    fs = g.mul(f, s)
                    val = g.mul(m[f], images[s]) if g.end(m[f]) == g.src(images[s]) else None
                    if val is None:
                        return None
                    if fs in m:
                        if m[fs] != val:
                            return None
                    else:
                        m[fs] = val
                        nxt.append(fs)
            frontier = nxt
        if len(m) != len(g.arrows) or len(set(m.values())) != len(m):
            return None
        return m

    cands = [[h for h in g.hom(g.src(s), g.end(s))] for s in gens]
    for combo in product(*cands):
        m = extend(dict(zip(gens, combo)))
        if m is not None:
            out.append(m)
    return out
