"""Matched pairs of groupoids and their representations.

V is written vertically (t = src, b = end), H horizontally (l = src,
r = end). H acts on V from the left and V acts on H from the right,
both defined on pairs (x, g) with r(x) = t(g).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping

from .groupoid import Groupoid, LeftAction, check_left_action, make_groupoid, validate_groupoid
from .quiver import Quiver, disjoint_union, fiber_product, inv_name, opposite, pair_name
from .report import Report, hard_assert

if TYPE_CHECKING:
    from .braided import BraidedGroupoid


class MatchedPairError(ValueError):
    pass


def _names(pairs, name=pair_name) -> dict[tuple[str, str], str]:
    out = {p: name(*p) for p in pairs}
    if len(set(out.values())) != len(out):
        raise MatchedPairError("pair names collide; rename arrows")
    return out


@dataclass(frozen=True, eq=False)
class MatchedPair:
    V: Groupoid
    H: Groupoid
    lact: Mapping[tuple[str, str], str]
    ract: Mapping[tuple[str, str], str]

    def domain(self) -> list[tuple[str, str]]:
        return matched_domain(self.V, self.H)

    def act(self, x: str, g: str) -> str:
        return self.lact[(x, g)]

    def ract_of(self, x: str, g: str) -> str:
        return self.ract[(x, g)]


def matched_domain(V: Groupoid, H: Groupoid) -> list[tuple[str, str]]:
    return [(x, g) for x in H.arrows for g in V.quiver.out_arrows[H.end(x)]]


def check_matched_pair(
    V: Groupoid,
    H: Groupoid,
    lact: Mapping[tuple[str, str], str],
    ract: Mapping[tuple[str, str], str],
) -> Report:
    """Both actions, the side condition b(x⇀g) = l(x↼g), and the two compatibilities."""
    if V.vertices != H.vertices:
        return Report.failed("base", (), "V and H live over different vertex sets")
    dom = matched_domain(V, H)
    for x, g in dom:
        a, b = lact.get((x, g)), ract.get((x, g))
        if a is None or b is None or a not in V.quiver.src or b not in H.quiver.src:
            return Report.failed("total", (x, g), "action undefined")
        if V.src(a) != H.src(x):
            return Report.failed("left-action", (x, g), "t(x⇀g) ≠ l(x)")
        if H.end(b) != V.end(g):
            return Report.failed("right-action", (x, g), "r(x↼g) ≠ b(g)")
        if V.end(a) != H.src(b):
            return Report.failed("mp-0.7", (x, g), "b(x⇀g) ≠ l(x↼g)")
    for g in V.arrows:
        i = H.identity[V.src(g)]
        if lact[(i, g)] != g:
            return Report.failed("left-unit", (i, g))
    for x in H.arrows:
        i = V.identity[H.end(x)]
        if ract[(x, i)] != x:
            return Report.failed("right-unit", (x, i))
    for x, y in H.pairs:
        xy = H.mul(x, y)
        for g in V.quiver.out_arrows[H.end(y)]:
            if lact[(xy, g)] != lact[(x, lact[(y, g)])]:
                return Report.failed("left-action", (x, y, g), "xy⇀g ≠ x⇀(y⇀g)")
            lhs = ract[(xy, g)]
            rhs = H.mul(ract[(x, lact[(y, g)])], ract[(y, g)])
            if lhs != rhs:
                return Report.failed("mp-4", (x, y, g), "xy↼g ≠ (x↼(y⇀g))(y↼g)")
    for x in H.arrows:
        for f in V.quiver.out_arrows[H.end(x)]:
            xf = ract[(x, f)]
            for g in V.quiver.out_arrows[V.end(f)]:
                fg = V.mul(f, g)
                if ract[(x, fg)] != ract[(xf, g)]:
                    return Report.failed("right-action", (x, f, g), "x↼fg ≠ (x↼f)↼g")
                if lact[(x, fg)] != V.mul(lact[(x, f)], lact[(xf, g)]):
                    return Report.failed("mp-3", (x, f, g), "x⇀fg ≠ (x⇀f)((x↼f)⇀g)")
    return Report.passed(MatchedPair(V, H, dict(lact), dict(ract)))


def trivial_matched_pair(V: Groupoid, H: Groupoid) -> MatchedPair:
    """x⇀g = g, x↼g = x; only valid when it passes the axioms (e.g. group bundles)."""
    lact = {(x, g): g for x, g in matched_domain(V, H)}
    ract = {(x, g): x for x, g in matched_domain(V, H)}
    return check_matched_pair(V, H, lact, ract).unwrap()


# --- diagonal groupoid and exact factorizations ----------------------------------


@dataclass(frozen=True)
class Diagonal:
    groupoid: Groupoid
    pair_of: Mapping[str, tuple[str, str]]
    name_of: Mapping[tuple[str, str], str]

    def embed_v(self, f: str, V: Groupoid) -> str:
        return self.name_of[(f, self.pair_of[self.groupoid.identity[V.end(f)]][1])]

    def embed_h(self, y: str, H: Groupoid) -> str:
        return self.name_of[(self.pair_of[self.groupoid.identity[H.src(y)]][0], y)]


def diagonal_groupoid(mp: MatchedPair) -> Diagonal:
    """V ⋈ H on pairs (f, y) with b(f) = l(y); (f,y)(h,z) = (f(y⇀h), (y↼h)z)."""
    V, H = mp.V, mp.H
    pairs = [(f, y) for f in V.arrows for y in H.quiver.out_arrows[V.end(f)]]
    name = _names(pairs)
    q = Quiver.build(V.vertices, ((name[(f, y)], V.src(f), H.end(y)) for f, y in pairs))
    pair_of = {n: p for p, n in name.items()}
    comp = {}
    for a, b in q.pairs:
        f, y = pair_of[a]
        h, z = pair_of[b]
        comp[(a, b)] = name[(V.mul(f, mp.lact[(y, h)]), H.mul(mp.ract[(y, h)], z))]
    ident = {p: name[(V.identity[p], H.identity[p])] for p in V.vertices}
    g = make_groupoid(q, ident, comp)
    for f, y in pairs:
        prod = g.mul(name[(f, H.identity[V.end(f)])], name[(V.identity[V.end(f)], y)])
        hard_assert(prod == name[(f, y)], "multiplication V x H -> V⋈H is not the identity on pairs")
    return Diagonal(g, pair_of, name)


def from_exact_factorization(D: Groupoid, v_arrows, h_arrows) -> MatchedPair:
    """Actions solving xg = (x⇀g)(x↼g) inside D, when V ×_(b,l) H → D is bijective."""
    from .groupoid import subgroupoid

    V = subgroupoid(D, v_arrows)
    H = subgroupoid(D, h_arrows)
    fact: dict[str, tuple[str, str]] = {}
    for f in V.arrows:
        for y in H.quiver.out_arrows[V.end(f)]:
            a = D.mul(f, y)
            if a in fact:
                raise MatchedPairError(f"not an exact factorization: {a} = {fact[a]} = {(f, y)}")
            fact[a] = (f, y)
    missing = [a for a in D.arrows if a not in fact]
    if missing:
        raise MatchedPairError(f"not an exact factorization: {missing[0]} has no factorization")
    lact, ract = {}, {}
    for x, g in matched_domain(V, H):
        f, y = fact[D.mul(x, g)]
        lact[(x, g)] = f
        ract[(x, g)] = y
    return check_matched_pair(V, H, lact, ract).unwrap()


# --- vacant double groupoid ------------------------------------------------------


@dataclass(frozen=True)
class Box:
    top: str
    right: str

    def name(self) -> str:
        return f"[{self.top}|{self.right}]"


@dataclass(frozen=True)
class BoxSides:
    top: str
    left: str
    right: str
    bottom: str


@dataclass(frozen=True)
class VacantBoxes:
    mp: MatchedPair
    boxes: tuple[Box, ...]
    horizontal: Groupoid
    vertical: Groupoid

    def sides(self, b: Box) -> BoxSides:
        x, g = b.top, b.right
        return BoxSides(x, self.mp.lact[(x, g)], g, self.mp.ract[(x, g)])

    def box(self, name: str) -> Box:
        top, right = name[1:-1].split("|")
        return Box(top, right)

    def idd(self, g: str) -> Box:
        return Box(self.mp.H.identity[self.mp.V.src(g)], g)

    def vertical_identity(self, x: str) -> Box:
        return Box(x, self.mp.V.identity[self.mp.H.end(x)])

    def inverse(self, b: Box) -> Box:
        """X^-1: the horizontal inverse followed by the vertical inverse."""
        h = self.box(self.horizontal.inv(b.name()))
        return self.box(self.vertical.inv(h.name()))


def vacant_boxes(mp: MatchedPair) -> VacantBoxes:
    """Boxes (x, g): top x, left x⇀g, right g, bottom x↼g; both compositions validated."""
    V, H = mp.V, mp.H
    boxes = tuple(Box(x, g) for x, g in mp.domain())
    names = [b.name() for b in boxes]
    if len(set(names)) != len(names):
        raise MatchedPairError("box names collide; rename arrows")
    # horizontal: over V, from left side to right side
    qh = Quiver.build(V.arrows, ((b.name(), mp.lact[(b.top, b.right)], b.right) for b in boxes))
    comp_h = {}
    for a, c in qh.pairs:
        ba, bc = Box(*a[1:-1].split("|")), Box(*c[1:-1].split("|"))
        comp_h[(a, c)] = Box(H.mul(ba.top, bc.top), bc.right).name()
    ident_h = {g: Box(H.identity[V.src(g)], g).name() for g in V.arrows}
    hz = validate_groupoid(
        qh, ident_h, comp_h, {b.name(): Box(H.inv(b.top), mp.lact[(b.top, b.right)]).name() for b in boxes}
    ).unwrap()
    # vertical: over H, from top side to bottom side
    qv = Quiver.build(H.arrows, ((b.name(), b.top, mp.ract[(b.top, b.right)]) for b in boxes))
    comp_v = {}
    for a, c in qv.pairs:
        ba, bc = Box(*a[1:-1].split("|")), Box(*c[1:-1].split("|"))
        comp_v[(a, c)] = Box(ba.top, V.mul(ba.right, bc.right)).name()
    ident_v = {x: Box(x, V.identity[H.end(x)]).name() for x in H.arrows}
    inv_v = {b.name(): Box(mp.ract[(b.top, b.right)], V.inv(b.right)).name() for b in boxes}
    vt = validate_groupoid(qv, ident_v, comp_v, inv_v).unwrap()
    return VacantBoxes(mp, boxes, hz, vt)


def matched_pair_from_boxes(vb: VacantBoxes) -> MatchedPair:
    """Read the actions back off the box sides."""
    lact, ract = {}, {}
    for b in vb.boxes:
        s = vb.sides(b)
        lact[(b.top, b.right)] = s.left
        ract[(b.top, b.right)] = s.bottom
    return check_matched_pair(vb.mp.V, vb.mp.H, lact, ract).unwrap()


# --- representations -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Representation:
    mp: MatchedPair
    quiver: Quiver
    action: Mapping[tuple[str, str], str]
    grading: Mapping[str, str]

    def act(self, x: str, a: str) -> str:
        return self.action[(x, a)]

    def same_tables(self, other: "Representation") -> bool:
        return (
            self.quiver == other.quiver
            and dict(self.action) == dict(other.action)
            and dict(self.grading) == dict(other.grading)
        )


def check_representation(
    mp: MatchedPair, q: Quiver, action: Mapping[tuple[str, str], str], grading: Mapping[str, str]
) -> Report:
    V, H = mp.V, mp.H
    if q.vertices != V.vertices:
        return Report.failed("base", (), "quiver and matched pair over different bases")
    for a in q.arrows:
        g = grading.get(a)
        if g is None or V.src(g) != q.src[a] or V.end(g) != q.end[a]:
            return Report.failed("grading", (a,), "grading is not a quiver morphism over the base")
    for x in H.arrows:
        for a in q.out_arrows[H.end(x)]:
            b = action.get((x, a))
            if b is None or b not in q.src:
                return Report.failed("total", (x, a), "action undefined")
            if q.src[b] != H.src(x):
                return Report.failed("left-action", (x, a), "s(x⇀a) ≠ l(x)")
            if grading[b] != mp.lact[(x, grading[a])]:
                return Report.failed("compcond", (x, a), "|x⇀a| ≠ x⇀|a|")
    for a in q.arrows:
        if action[(H.identity[q.src[a]], a)] != a:
            return Report.failed("unit", (a,))
    for x, y in H.pairs:
        xy = H.mul(x, y)
        for a in q.out_arrows[H.end(y)]:
            if action[(xy, a)] != action[(x, action[(y, a)])]:
                return Report.failed("left-action", (x, y, a), "xy⇀a ≠ x⇀(y⇀a)")
    return Report.passed(Representation(mp, q, dict(action), dict(grading)))


def tensor_representation(r1: Representation, r2: Representation) -> Representation:
    """x⇀(a,b) = (x⇀a, (x↼|a|)⇀b), |(a,b)| = |a||b|."""
    mp = r1.mp
    q = fiber_product(r1.quiver, r2.quiver)
    name = _names((a, b) for a in r1.quiver.arrows for b in r2.quiver.out_arrows[r1.quiver.end[a]])
    pair_of = {n: p for p, n in name.items()}
    action, grading = {}, {}
    for n, (a, b) in pair_of.items():
        grading[n] = mp.V.mul(r1.grading[a], r2.grading[b])
        for x in mp.H.quiver.in_arrows[q.src[n]]:
            a2 = r1.action[(x, a)]
            b2 = r2.action[(mp.ract[(x, r1.grading[a])], b)]
            action[(x, n)] = name[(a2, b2)]
    rep = check_representation(mp, q, action, grading)
    hard_assert(bool(rep), f"tensor of representations fails: {rep.axiom} {rep.witness}")
    return rep.unwrap()


def dual_representation(r: Representation) -> Representation:
    """On A^op: x⇀a^-1 = ((x↼|a|^-1)⇀a)^-1, |a^-1| = |a|^-1."""
    mp = r.mp
    q = opposite(r.quiver)
    action, grading = {}, {}
    for ai in q.arrows:
        a = inv_name(ai)
        ga = r.grading[a]
        grading[ai] = mp.V.inv(ga)
        for x in mp.H.quiver.in_arrows[q.src[ai]]:
            y = mp.ract[(x, mp.V.inv(ga))]
            action[(x, ai)] = inv_name(r.action[(y, a)])
    rep = check_representation(mp, q, action, grading)
    hard_assert(bool(rep), f"dual representation fails: {rep.axiom} {rep.witness}")
    return rep.unwrap()


def double_representation(r: Representation) -> Representation:
    """DA = A ⊔ A^op as a representation."""
    d = dual_representation(r)
    q = disjoint_union(r.quiver, d.quiver)
    rep = check_representation(r.mp, q, {**r.action, **d.action}, {**r.grading, **d.grading})
    hard_assert(bool(rep), "double of a representation fails")
    return rep.unwrap()


def unit_representation(mp: MatchedPair) -> Representation:
    vs = mp.V.vertices
    q = Quiver.build(vs, ((f"id({v})", v, v) for v in vs))
    action = {(x, f"id({mp.H.end(x)})"): f"id({mp.H.src(x)})" for x in mp.H.arrows}
    grading = {f"id({v})": mp.V.identity[v] for v in vs}
    return check_representation(mp, q, action, grading).unwrap()


def trivial_representation(mp: MatchedPair, q: Quiver) -> Representation:
    """Identity-graded quiver with H acting trivially; valid when V acts trivially on identities."""
    action = {(x, a): a for x in mp.H.arrows for a in q.out_arrows[mp.H.end(x)]}
    return check_representation(mp, q, action, {a: mp.V.identity[q.src[a]] for a in q.arrows}).unwrap()


def representation_as_B_action(r: Representation) -> LeftAction:
    """(x, g)⇀a = x⇀a when g = |a|, an action of the horizontal box groupoid."""
    vb = vacant_boxes(r.mp)
    table = {}
    for b in vb.boxes:
        for a in r.quiver.arrows:
            if r.grading[a] == b.right and r.quiver.src[a] == r.mp.H.end(b.top):
                table[(b.name(), a)] = r.action[(b.top, a)]
    act = LeftAction(vb.horizontal, dict(r.grading), table)
    rep = check_left_action(act)
    hard_assert(bool(rep), f"box action fails: {rep.axiom} {rep.witness}")
    return act


def representation_from_B_action(mp: MatchedPair, q: Quiver, act: LeftAction) -> Representation:
    action = {}
    for (bname, a), v in act.table.items():
        top = bname[1:-1].split("|")[0]
        action[(top, a)] = v
    return check_representation(mp, q, action, dict(act.fiber)).unwrap()


# --- LYZ pairs ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LYZPair:
    mp: MatchedPair
    xi: Mapping[str, str]
    eta: Mapping[str, str]


def check_rotation(mp: MatchedPair, kappa: Mapping[str, str]) -> Report:
    """kappa: V -> H a morphism over the base with y kappa(g) = kappa(y⇀g)(y↼g)."""
    V, H = mp.V, mp.H
    for g in V.arrows:
        k = kappa.get(g)
        if k is None or H.src(k) != V.src(g) or H.end(k) != V.end(g):
            return Report.failed("over-base", (g,), "kappa does not fix endpoints")
    for f, g in V.pairs:
        if kappa[V.mul(f, g)] != H.mul(kappa[f], kappa[g]):
            return Report.failed("multiplicative", (f, g))
    for y, g in mp.domain():
        lhs = H.mul(y, kappa[g])
        rhs = H.mul(kappa[mp.lact[(y, g)]], mp.ract[(y, g)])
        if lhs != rhs:
            return Report.failed("lyz0", (y, g), "y kappa(g) ≠ kappa(y⇀g)(y↼g)")
    return Report.passed()


def lambda_is_morphism(mp: MatchedPair, kappa: Mapping[str, str]) -> bool:
    """lambda(g, x) = kappa(g) x is multiplicative on V⋈H."""
    d = diagonal_groupoid(mp)
    lam = {n: mp.H.mul(kappa[f], y) for n, (f, y) in d.pair_of.items()}
    return all(lam[d.groupoid.mul(a, b)] == mp.H.mul(lam[a], lam[b]) for a, b in d.groupoid.pairs)


def check_lyz_pair(mp: MatchedPair, xi: Mapping[str, str], eta: Mapping[str, str]) -> Report:
    for nm, k in (("xi", xi), ("eta", eta)):
        rep = check_rotation(mp, k)
        if not rep:
            rep.axiom = f"{nm}:{rep.axiom}"
            return rep
    V = mp.V
    for g, f in V.pairs:
        lhs = mp.lact[(eta[g], f)]
        rhs = V.mul_all([g, f, mp.lact[(mp.H.inv(xi[f]), V.inv(g))]])
        if lhs != rhs:
            return Report.failed("lyz1", (g, f), "eta(g)⇀f ≠ gf(xi(f)^-1⇀g^-1)")
    return Report.passed(LYZPair(mp, dict(xi), dict(eta)))


def braiding_from_lyz(
    lyz: LYZPair, r1: Representation, r2: Representation
) -> dict[tuple[str, str], tuple[str, str]]:
    """sigma_{A,B}(a, b) = (eta(|a|)⇀b, (xi(|b|)^-1↼|a|^-1)⇀a), checked against its inverse."""
    mp = lyz.mp
    V, H = mp.V, mp.H

    def sigma(ra, rb, a, b):
        ga, gb = ra.grading[a], rb.grading[b]
        b2 = rb.action[(lyz.eta[ga], b)]
        y = mp.ract[(H.inv(lyz.xi[gb]), V.inv(ga))]
        return b2, ra.action[(y, a)]

    def sigma_inv(ra, rb, a, b):
        # inverse of sigma_{B,A}, defined on A (x) B
        ga, gb = ra.grading[a], rb.grading[b]
        b2 = rb.action[(lyz.xi[ga], b)]
        y = mp.ract[(H.inv(lyz.eta[gb]), V.inv(ga))]
        return b2, ra.action[(y, a)]

    out = {}
    q1, q2 = r1.quiver, r2.quiver
    for a in q1.arrows:
        for b in q2.out_arrows[q1.end[a]]:
            out[(a, b)] = sigma(r1, r2, a, b)
    for a in q1.arrows:
        for b in q2.out_arrows[q1.end[a]]:
            b2, a2 = sigma_inv(r1, r2, a, b)
            hard_assert(sigma(r2, r1, b2, a2) == (a, b), f"LYZ braiding is not invertible at {(a, b)}")
    return out


# --- tautological pair (G, G⋈G) ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TautologicalPair:
    braided: "BraidedGroupoid"
    diagonal: Diagonal
    mp: MatchedPair
    lyz: LYZPair


def _self_matched(b: "BraidedGroupoid") -> MatchedPair:
    g = b.groupoid
    return MatchedPair(g, g, dict(b.lact), dict(b.ract))


def tautological_pair(b: "BraidedGroupoid", alternative: bool = False) -> TautologicalPair:
    """(G, G⋈G) with (g,h)↪f = g⇁(h⇀f), (g,h)↩f = (g↽(h⇀f), h↼f), and (in1, in2).

    ``alternative`` switches to (g,h)↪f = gh⇀f, (g,h)↩f = (g↼(h⇀f), h↼f).
    """
    from .braided import antipode_solution

    G = b.groupoid
    d = diagonal_groupoid(_self_matched(b))
    D = d.groupoid
    anti = antipode_solution(b)
    lact, ract = {}, {}
    for n in D.arrows:
        gg, hh = d.pair_of[n]
        for f in G.quiver.out_arrows[G.end(hh)]:
            hf = b.lact[(hh, f)]
            if alternative:
                lact[(n, f)] = b.lact[(G.mul(gg, hh), f)]
                ract[(n, f)] = d.name_of[(b.ract[(gg, hf)], b.ract[(hh, f)])]
            else:
                lact[(n, f)] = anti.lact[(gg, hf)]
                ract[(n, f)] = d.name_of[(anti.ract[(gg, hf)], b.ract[(hh, f)])]
    rep = check_matched_pair(G, D, lact, ract)
    if not rep:
        raise MatchedPairError(f"tautological pair fails: {rep.axiom} {rep.witness}")
    mp = rep.value
    in1 = {f: d.name_of[(f, G.identity[G.end(f)])] for f in G.arrows}
    in2 = {f: d.name_of[(G.identity[G.src(f)], f)] for f in G.arrows}
    lyz = LYZPair(mp, in1, in2)
    if not alternative:
        lrep = check_lyz_pair(mp, in1, in2)
        if not lrep:
            raise MatchedPairError(f"(in1, in2) is not a LYZ pair: {lrep.axiom} {lrep.witness}")
    return TautologicalPair(b, d, mp, lyz)
