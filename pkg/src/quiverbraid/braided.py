"""Braided groupoids, 1-cocycle groupoid data and the bundle of central loops.

A braided groupoid is a groupoid G with a left action ⇀ of G on s and a
right action ↼ of G on e such that fg = (f⇀g)(f↼g) for composable f, g.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .groupoid import (
    Groupoid,
    GroupoidError,
    check_bundle_automorphism_action,
    is_abelian_bundle,
    is_normal_bundle,
    quotient_by_bundle,
    subgroupoid,
)
from .matched import MatchedPair, check_matched_pair, diagonal_groupoid, matched_domain
from .quiver import Quiver, pair_name
from .report import Report, debug_checks, hard_assert
from .solution import NonDegenerateSolution, check_nondegenerate, check_solution

Table = Mapping[tuple[str, str], str]


class BraidedGroupoidError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BraidedGroupoid:
    groupoid: Groupoid
    lact: Table
    ract: Table

    def sigma(self, f: str, g: str) -> tuple[str, str]:
        return self.lact[(f, g)], self.ract[(f, g)]

    @cached_property
    def matched_pair(self) -> MatchedPair:
        return MatchedPair(self.groupoid, self.groupoid, dict(self.lact), dict(self.ract))

    def same_tables(self, other: "BraidedGroupoid") -> bool:
        return (
            self.groupoid == other.groupoid
            and dict(self.lact) == dict(other.lact)
            and dict(self.ract) == dict(other.ract)
        )

    def iota1(self, g: str) -> tuple[str, str]:
        """(g, id) in G⋈G."""
        return g, self.groupoid.identity[self.groupoid.end(g)]

    def iota2(self, g: str) -> tuple[str, str]:
        return self.groupoid.identity[self.groupoid.src(g)], g


def _check_left_action(g: Groupoid, lact: Table) -> Report:
    for f, h in g.pairs:
        r = lact.get((f, h))
        if r is None or r not in g.quiver.src:
            return Report.failed("total", (f, h), "f⇀g undefined")
        if g.src(r) != g.src(f):
            return Report.failed("left-action", (f, h), "s(f⇀g) ≠ s(f)")
    for h in g.arrows:
        i = g.identity[g.src(h)]
        if lact[(i, h)] != h:
            return Report.failed("left-action", (i, h), "id⇀g ≠ g")
    for f, k in g.pairs:
        fk = g.mul(f, k)
        for h in g.quiver.out_arrows[g.end(k)]:
            if lact[(fk, h)] != lact[(f, lact[(k, h)])]:
                return Report.failed("left-action", (f, k, h), "fk⇀g ≠ f⇀(k⇀g)")
    return Report.passed()


def _check_right_action(g: Groupoid, ract: Table) -> Report:
    for f, h in g.pairs:
        r = ract.get((f, h))
        if r is None or r not in g.quiver.src:
            return Report.failed("total", (f, h), "f↼g undefined")
        if g.end(r) != g.end(h):
            return Report.failed("right-action", (f, h), "e(f↼g) ≠ e(g)")
    for f in g.arrows:
        i = g.identity[g.end(f)]
        if ract[(f, i)] != f:
            return Report.failed("right-action", (f, i), "f↼id ≠ f")
    for f, k in g.pairs:
        for h in g.quiver.out_arrows[g.end(k)]:
            if ract[(f, g.mul(k, h))] != ract[(ract[(f, k)], h)]:
                return Report.failed("right-action", (f, k, h), "f↼kg ≠ (f↼k)↼g")
    return Report.passed()


def check_braided_groupoid(g: Groupoid, lact: Table, ract: Table) -> Report:
    """Both actions and fg = (f⇀g)(f↼g); the matched-pair axioms are then re-checked."""
    for rep in (_check_left_action(g, lact), _check_right_action(g, ract)):
        if not rep:
            return rep
    for f, h in g.pairs:
        a, b = lact[(f, h)], ract[(f, h)]
        if g.end(a) != g.src(b) or g.mul(a, b) != g.mul(f, h):
            return Report.failed("compatibility", (f, h), "fg ≠ (f⇀g)(f↼g)")
    mp = check_matched_pair(g, g, lact, ract)
    hard_assert(bool(mp), f"braided groupoid is not a matched pair: {mp.axiom} {mp.witness}")
    b = BraidedGroupoid(g, dict(lact), dict(ract))
    if debug_checks():
        hard_assert(bool(check_nondegenerate(induced_solution_raw(b))), "induced braiding is degenerate")
    return Report.passed(b)


def _mp3_witness(g: Groupoid, lact: Table, ract: Table) -> tuple | None:
    for x in g.arrows:
        for f in g.quiver.out_arrows[g.end(x)]:
            for h in g.quiver.out_arrows[g.end(f)]:
                lhs = lact[(x, g.mul(f, h))]
                if lhs != g.mul(lact[(x, f)], lact[(ract[(x, f)], h)]):
                    return (x, f, h)
    return None


def braided_from_left_action(g: Groupoid, lact: Table) -> Report:
    """x↼y = (x⇀y)^-1 xy; accepted exactly when mp-3 holds."""
    rep = _check_left_action(g, lact)
    if not rep:
        return rep
    ract = {(x, y): g.mul_all([g.inv(lact[(x, y)]), x, y]) for x, y in g.pairs}
    w = _mp3_witness(g, lact, ract)
    if w is not None:
        return Report.failed("mp-3", w, "x⇀fg ≠ (x⇀f)((x↼f)⇀g)")
    return check_braided_groupoid(g, lact, ract)


def braided_from_right_action(g: Groupoid, ract: Table) -> Report:
    """x⇀y = xy(x↼y)^-1; accepted exactly when it is a left action."""
    rep = _check_right_action(g, ract)
    if not rep:
        return rep
    lact = {(x, y): g.mul_all([x, y, g.inv(ract[(x, y)])]) for x, y in g.pairs}
    return check_braided_groupoid(g, lact, ract)


def flip_braided(g: Groupoid) -> Report:
    """f⇀g = g, f↼g = f; a report, since this needs commuting composable pairs."""
    return check_braided_groupoid(g, {(f, h): h for f, h in g.pairs}, {(f, h): f for f, h in g.pairs})


def induced_solution_raw(b: BraidedGroupoid):
    table = {(f, h): b.sigma(f, h) for f, h in b.groupoid.pairs}
    return check_solution(b.groupoid.quiver, table).unwrap()


def induced_solution(b: BraidedGroupoid) -> NonDegenerateSolution:
    """σ(f, g) = (f⇀g, f↼g) on G as a quiver."""
    return check_nondegenerate(induced_solution_raw(b)).unwrap()


def antipode_solution(b: BraidedGroupoid) -> BraidedGroupoid:
    """(G, ⇁, ↽) with g⇁x = (x^-1↼g^-1)^-1 and g↽h = (h^-1⇀g^-1)^-1; its σ is σ^-1."""
    g = b.groupoid
    lact, ract = {}, {}
    for x, y in g.pairs:
        lact[(x, y)] = g.inv(b.ract[(g.inv(y), g.inv(x))])
        ract[(x, y)] = g.inv(b.lact[(g.inv(y), g.inv(x))])
    out = BraidedGroupoid(g, lact, ract)
    for x, y in g.pairs:
        hard_assert(b.sigma(*out.sigma(x, y)) == (x, y), f"antipode braiding is not σ^-1 at {(x, y)}")
    return out


def check_antipode_identities(b: BraidedGroupoid) -> Report:
    """The identities relating ⇀, ↼ with ⇁, ↽ and inverses in G."""
    g = b.groupoid
    a = antipode_solution(b)
    i = g.inv
    for x, y in g.pairs:
        u, v = b.sigma(x, y)
        if a.lact[(u, v)] != x or a.ract[(u, v)] != y:
            return Report.failed("recover", (x, y), "x ≠ (x⇀g)⇁(x↼g)")
        # (y, x) composable makes (x^-1, y^-1) composable
        if b.lact[(i(y), i(x))] != i(a.ract[(x, y)]):
            return Report.failed("dual", (x, y), "y^-1⇀x^-1 ≠ (x↽y)^-1")
        if b.ract[(i(y), i(x))] != i(a.lact[(x, y)]):
            return Report.failed("dual", (x, y), "y^-1↼x^-1 ≠ (x⇁y)^-1")
    for x, h in g.pairs:
        # x⇀g^-1 = ((x↼g^-1)⇀g)^-1 with h = g^-1
        if b.lact[(x, h)] != i(b.lact[(b.ract[(x, h)], i(h))]):
            return Report.failed("mixed", (x, h), "x⇀g^-1 ≠ ((x↼g^-1)⇀g)^-1")
    return Report.passed()


# --- 1-cocycle groupoid data -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class CocycleGroupoidDatum:
    """pi: G -> N bijective with pi(g) a loop at e(g) and pi(fg) = (pi(f)↼g)pi(g)."""

    groupoid: Groupoid
    bundle: Groupoid
    ract: Table
    pi: Mapping[str, str]

    @cached_property
    def pi_inv(self) -> dict[str, str]:
        return {n: f for f, n in self.pi.items()}


def check_cocycle_datum(g: Groupoid, n: Groupoid, ract: Table, pi: Mapping[str, str]) -> Report:
    if g.vertices != n.vertices:
        return Report.failed("base", (), "G and N over different vertex sets")
    loops = [a for a in n.arrows if n.src(a) == n.end(a)]
    rep = check_bundle_automorphism_action(g, subgroupoid(n, loops), ract)
    if not rep:
        return rep
    if sorted(pi.get(f, "") for f in g.arrows) != sorted(loops) or len(set(pi.values())) != len(g.arrows):
        return Report.failed("bijective", (), "pi is not a bijection G -> N")
    for f in g.arrows:
        if n.src(pi[f]) != g.end(f):
            return Report.failed("fiber", (f,), "pi(g) is not a loop at e(g)")
    for f, h in g.pairs:
        if pi[g.mul(f, h)] != n.mul(ract[(pi[f], h)], pi[h]):
            return Report.failed("cocycle", (f, h), "pi(fg) ≠ (pi(f)↼g)pi(g)")
    return Report.passed(CocycleGroupoidDatum(g, n, dict(ract), dict(pi)))


def to_cocycle_datum(b: BraidedGroupoid) -> CocycleGroupoidDatum:
    """N = kernel of G⋈G -> G, (f, y) -> fy; pi(g) = (g^-1, g); n↼g = iota1(g)^-1 n iota1(g)."""
    g = b.groupoid
    d = diagonal_groupoid(b.matched_pair)
    D = d.groupoid
    kern = [d.name_of[(f, g.inv(f))] for f in g.arrows]
    n = subgroupoid(D, kern)
    hard_assert(n.is_group_bundle() and is_normal_bundle(D, kern), "kernel is not a normal bundle")
    ract = {}
    for h in g.arrows:
        i1 = d.name_of[b.iota1(h)]
        for m in n.loops(g.src(h)):
            ract[(m, h)] = D.mul_all([D.inv(i1), m, i1])
    pi = {f: d.name_of[(g.inv(f), f)] for f in g.arrows}
    rep = check_cocycle_datum(g, n, ract, pi)
    hard_assert(bool(rep), f"cocycle datum of a braided groupoid fails: {rep.axiom} {rep.witness}")
    return rep.value


def from_cocycle_datum(c: CocycleGroupoidDatum) -> BraidedGroupoid:
    """f↼g = pi^-1(pi(f)↼g), f⇀g = fg(f↼g)^-1."""
    rep = check_cocycle_datum(c.groupoid, c.bundle, c.ract, c.pi)
    if not rep:
        raise BraidedGroupoidError(f"not a 1-cocycle datum: {rep.axiom} {rep.witness}")
    g = c.groupoid
    ract = {(f, h): c.pi_inv[c.ract[(c.pi[f], h)]] for f, h in g.pairs}
    lact = {(f, h): g.mul_all([f, h, g.inv(ract[(f, h)])]) for f, h in g.pairs}
    for f, h in g.pairs:
        hard_assert(c.pi[ract[(f, h)]] == c.ract[(c.pi[f], h)], "pi(f↼g) ≠ pi(f)↼g")
    out = check_braided_groupoid(g, lact, ract)
    if not out:
        raise BraidedGroupoidError(f"datum does not give a braided groupoid: {out.axiom} {out.witness}")
    return out.value


def datum_isomorphic(c1: CocycleGroupoidDatum, c2: CocycleGroupoidDatum) -> bool:
    """phi = pi2 pi1^-1 is a bundle isomorphism intertwining the actions."""
    if c1.groupoid != c2.groupoid:
        return False
    phi = {c1.pi[f]: c2.pi[f] for f in c1.groupoid.arrows}
    n1, n2 = c1.bundle, c2.bundle
    for p in n1.vertices:
        for a in n1.loops(p):
            for b in n1.loops(p):
                if phi[n1.mul(a, b)] != n2.mul(phi[a], phi[b]):
                    return False
    return all(phi[v] == c2.ract[(phi[m], h)] for (m, h), v in c1.ract.items())


@dataclass(frozen=True)
class SymmetryCertificate:
    symmetric: bool
    abelian_bundle: bool
    witness: tuple

    def __bool__(self) -> bool:
        return self.symmetric


def is_symmetric(b: BraidedGroupoid) -> SymmetryCertificate:
    """σ^2 = id, compared against abelianness of N."""
    witness: tuple = ()
    for f, h in b.groupoid.pairs:
        if b.sigma(*b.sigma(f, h)) != (f, h):
            witness = (f, h)
            break
    sym = not witness
    c = to_cocycle_datum(b)
    ab, w2 = is_abelian_bundle(c.bundle)
    hard_assert(sym == ab, "σ^2 = id disagrees with N abelian", force=True)
    return SymmetryCertificate(sym, ab, witness or w2)


# --- central loops and quotients ---------------------------------------------------


@dataclass(frozen=True)
class GammaBundles:
    left: frozenset[str]
    right: frozenset[str]
    both: frozenset[str]


def gamma_bundles(b: BraidedGroupoid) -> GammaBundles:
    """Loops v with v⇀w = w (left), z↼v = z (right), and both."""
    g = b.groupoid
    left, right = set(), set()
    for p in g.vertices:
        for v in g.loops(p):
            if all(b.lact[(v, w)] == w for w in g.quiver.out_arrows[p]):
                left.add(v)
            if all(b.ract[(z, v)] == z for z in g.quiver.in_arrows[p]):
                right.add(v)
    both = left & right
    hard_assert(is_normal_bundle(g, both), "Γ is not a normal bundle")
    hard_assert(is_abelian_bundle(g, both)[0], "Γ is not abelian")
    return GammaBundles(frozenset(left), frozenset(right), frozenset(both))


def quotient_braided(b: BraidedGroupoid, lam) -> BraidedGroupoid:
    """G/Λ with the induced actions, for a normal bundle Λ ⊆ Γ."""
    g = b.groupoid
    lam = set(lam) | set(g.identity.values())
    if not lam <= gamma_bundles(b).both:
        raise BraidedGroupoidError("Λ is not contained in Γ")
    try:
        q = quotient_by_bundle(g, lam)
    except GroupoidError as e:
        raise BraidedGroupoidError(str(e)) from None
    proj = q.projection.amap
    lact: dict[tuple[str, str], str] = {}
    ract: dict[tuple[str, str], str] = {}
    for f, h in g.pairs:
        key = (proj[f], proj[h])
        for tab, val in ((lact, proj[b.lact[(f, h)]]), (ract, proj[b.ract[(f, h)]])):
            if tab.setdefault(key, val) != val:
                raise BraidedGroupoidError(f"actions do not descend at {(f, h)}")
    rep = check_braided_groupoid(q.groupoid, lact, ract)
    hard_assert(bool(rep), f"quotient is not braided: {rep.axiom} {rep.witness}")
    return rep.value


# --- restricted product ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RestrictedProduct:
    braided: BraidedGroupoid
    pair_of: Mapping[str, tuple[str, str]]
    name_of: Mapping[tuple[str, str], str]


def restricted_product_groupoid(mp: MatchedPair) -> tuple[Groupoid, dict, dict]:
    """V⊠H: pairs (g, x) with equal source and equal end, multiplied componentwise."""
    V, H = mp.V, mp.H
    pairs = [(g, x) for g in V.arrows for x in H.hom(V.src(g), V.end(g))]
    name = {p: pair_name(*p) for p in pairs}
    if len(set(name.values())) != len(name):
        raise BraidedGroupoidError("pair names collide")
    pair_of = {n: p for p, n in name.items()}
    q = Quiver.build(V.vertices, ((name[(g, x)], V.src(g), V.end(g)) for g, x in pairs))
    comp = {}
    for a, c in q.pairs:
        (g, x), (h, y) = pair_of[a], pair_of[c]
        comp[(a, c)] = name[(V.mul(g, h), H.mul(x, y))]
    ident = {p: name[(V.identity[p], H.identity[p])] for p in V.vertices}
    inv = {n: name[(V.inv(g), H.inv(x))] for n, (g, x) in pair_of.items()}
    from .groupoid import validate_groupoid

    return validate_groupoid(q, ident, comp, inv).unwrap(), pair_of, name


def restricted_product_braided(mp: MatchedPair) -> RestrictedProduct:
    """Braiding on V⊠H from the datum pi(g, x) = (g^-1, x) in the loops of V⋈H."""
    V, H = mp.V, mp.H
    W, pair_of, name = restricted_product_groupoid(mp)
    d = diagonal_groupoid(mp)
    D = d.groupoid
    loops = [a for a in D.arrows if D.src(a) == D.end(a)]
    n = subgroupoid(D, loops)
    pi = {w: d.name_of[(V.inv(g), x)] for w, (g, x) in pair_of.items()}
    ract = {}
    for w, (g, x) in pair_of.items():
        iv = d.name_of[(g, H.identity[V.end(g)])]
        for m in n.loops(W.src(w)):
            ract[(m, w)] = D.mul_all([D.inv(iv), m, iv])
    rep = check_cocycle_datum(W, n, ract, pi)
    hard_assert(bool(rep), f"restricted product datum fails: {rep.axiom} {rep.witness}")
    b = from_cocycle_datum(rep.value)
    for a, c in W.pairs:
        (g, x), (h, y) = pair_of[a], pair_of[c]
        xh, xrh = mp.lact[(x, h)], mp.ract[(x, h)]
        left = name[(xh, H.mul_all([x, y, H.inv(xrh)]))]
        right = name[(V.mul_all([V.inv(xh), g, h]), xrh)]
        hard_assert(b.sigma(a, c) == (left, right), f"restricted product braiding differs at {(a, c)}", force=True)
    return RestrictedProduct(b, pair_of, name)


def in_restricted_product(mp: MatchedPair, g: str, x: str) -> bool:
    return mp.V.src(g) == mp.H.src(x) and mp.V.end(g) == mp.H.end(x)


__all__ = [
    "BraidedGroupoid",
    "BraidedGroupoidError",
    "CocycleGroupoidDatum",
    "GammaBundles",
    "RestrictedProduct",
    "SymmetryCertificate",
    "antipode_solution",
    "braided_from_left_action",
    "braided_from_right_action",
    "check_antipode_identities",
    "check_braided_groupoid",
    "check_cocycle_datum",
    "datum_isomorphic",
    "flip_braided",
    "from_cocycle_datum",
    "gamma_bundles",
    "in_restricted_product",
    "induced_solution",
    "is_symmetric",
    "matched_domain",
    "quotient_braided",
    "restricted_product_braided",
    "restricted_product_groupoid",
    "to_cocycle_datum",
]
