"""Rack bundles, derived solutions and 1-cocycle quiver data."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .groupoid import AutElement, Groupoid
from .quiver import Quiver, end_bundle, paths_of_length
from .report import Report, hard_assert
from .solution import (
    NonDegenerateSolution,
    Solution,
    check_nondegenerate,
    check_solution,
    require_nondegenerate,
)

Triangle = Mapping[tuple[str, str], str]


def bar(x: str) -> str:
    return f"bar({x})"


def unbar(l: str) -> str:
    if not (l.startswith("bar(") and l.endswith(")")):
        raise ValueError(f"{l!r} is not an element of the end bundle")
    return l[4:-1]


@dataclass(frozen=True, eq=False)
class RackBundle:
    quiver: Quiver
    tri: Triangle

    def act(self, x: str, y: str) -> str:
        return self.tri[(x, y)]

    def fiber(self, p: str) -> tuple[str, ...]:
        return self.quiver.out_arrows[p]

    def same_tables(self, other: "RackBundle") -> bool:
        return self.quiver == other.quiver and dict(self.tri) == dict(other.tri)


def check_rack_bundle(q: Quiver, tri: Triangle) -> Report:
    """Each x▷. is a bijection of its fiber and x▷(y▷z) = (x▷y)▷(x▷z)."""
    if not q.is_loop_bundle():
        return Report.failed("loop-bundle", (), "a rack bundle lives on a loop bundle")
    for p in q.vertices:
        fib = q.out_arrows[p]
        for x in fib:
            img = []
            for y in fib:
                z = tri.get((x, y))
                if z is None or q.src.get(z) != p:
                    return Report.failed("total", (x, y), "x▷y undefined or off the fiber")
                img.append(z)
            if len(set(img)) != len(fib):
                return Report.failed("bijective", (x,), "x▷. is not a bijection")
        for x in fib:
            for y in fib:
                for z in fib:
                    if tri[(x, tri[(y, z)])] != tri[(tri[(x, y)], tri[(x, z)])]:
                        return Report.failed("self-distributive", (x, y, z))
    return Report.passed(RackBundle(q, dict(tri)))


def trivial_rack(q: Quiver) -> RackBundle:
    return check_rack_bundle(q, {(x, y): y for x, y in q.pairs}).unwrap()


def conjugation_rack(n: Groupoid) -> RackBundle:
    """x▷y = xyx^-1 on a group bundle."""
    if not n.is_group_bundle():
        raise ValueError("conjugation rack needs a group bundle")
    tri = {(x, y): n.mul_all([x, y, n.inv(x)]) for x, y in n.pairs}
    return check_rack_bundle(n.quiver, tri).unwrap()


def rack_solution(rb: RackBundle) -> NonDegenerateSolution:
    """c(x, y) = (x▷y, x)."""
    rep = rack_shape_solution(rb.quiver, rb.tri)
    hard_assert(bool(rep), f"rack solution fails: {rep.axiom} {rep.witness}", force=True)
    return rep.value


def rack_shape_solution(q: Quiver, tri: Triangle) -> Report:
    """c(x, y) = (x▷y, x) for any table, checked as a non-degenerate solution."""
    try:
        rep = check_solution(q, {(x, y): (tri[(x, y)], x) for x, y in q.pairs})
    except (KeyError, ValueError) as e:
        return Report.failed("shape", (), str(e))
    if not rep:
        return rep
    return check_nondegenerate(rep.value)


# --- derived solution -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DerivedSolution:
    rack: RackBundle
    phi: Mapping[str, AutElement]

    def phi_map(self, y: str) -> dict[str, str]:
        return self.phi[y].map


def _right_inverse(s: NonDegenerateSolution, x: str, y: str) -> str:
    """x↼y^-1: the w with w↼y = x."""
    return s.right_solve(x, y)


def derived_solution(s: Solution) -> DerivedSolution:
    """x̄▷ȳ = bar(((x↼y^-1)⇀y)↼x) and phi_y(x̄) = bar(x↼y^-1), for e(x) = e(y)."""
    s = require_nondegenerate(s)
    q = s.quiver
    le = end_bundle(q)
    tri = {}
    for p in q.vertices:
        for x in q.in_arrows[p]:
            for y in q.in_arrows[p]:
                w = _right_inverse(s, x, y)
                tri[(bar(x), bar(y))] = bar(s.ract(s.lact(w, y), x))
    rep = check_rack_bundle(le, tri)
    hard_assert(bool(rep), f"derived operation is not a rack: {rep.axiom} {rep.witness}", force=True)
    rb: RackBundle = rep.value
    phi = {}
    for y in q.arrows:
        m = {bar(x): bar(_right_inverse(s, x, y)) for x in q.in_arrows[q.end[y]]}
        phi[y] = AutElement.of(q.src[y], m, q.end[y])
        hard_assert(phi[y].is_bijective(), f"phi_{y} is not a bijection")
        hard_assert(is_rack_morphism(rb, phi[y]), f"phi_{y} is not a rack morphism", force=True)
    return DerivedSolution(rb, phi)


def is_rack_morphism(rb: RackBundle, a: AutElement) -> bool:
    """a: fiber(end) -> fiber(src) preserves ▷."""
    m = a.map
    fib = rb.fiber(a.end)
    return all(m[rb.tri[(x, z)]] == rb.tri[(m[x], m[z])] for x in fib for z in fib)


# --- the U family ------------------------------------------------------------------


@dataclass(frozen=True)
class UFamily:
    maps: Mapping[int, Mapping[tuple[str, ...], tuple[str, ...]]]
    bijective: Mapping[int, bool]
    intertwines: Mapping[int, bool]
    witness: tuple

    def __bool__(self) -> bool:
        return all(self.bijective.values()) and all(self.intertwines.values())


def _sigma_at(s: Solution, t: tuple[str, ...], i: int) -> tuple[str, ...]:
    a, b = s.sigma(t[i], t[i + 1])
    return t[:i] + (a, b) + t[i + 2 :]


def u_map(s: NonDegenerateSolution, t: tuple[str, ...]) -> tuple[str, ...]:
    """U^n by the recursion U^{n+1} = Q_n(U^n x id), starting from U^1(x) = x̄."""
    cur = [t[0]]
    for x in t[1:]:
        cur = [s.ract(w, x) for w in cur] + [x]
    return tuple(bar(w) for w in cur)


def u_family(s: Solution, n_max: int = 3) -> UFamily:
    """U^n for 2 <= n <= n_max; bijectivity onto fiber tuples and c_{i,i+1}U^n = U^n σ_{i,i+1}."""
    s = require_nondegenerate(s)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    d = derived_solution(s)
    c = rack_solution(d.rack)
    q = s.quiver
    maps, bij, inter = {}, {}, {}
    witness: tuple = ()
    for n in range(2, n_max + 1):
        paths = paths_of_length(q, n)
        um = {p.arrows: u_map(s, p.arrows) for p in paths}
        maps[n] = um
        target = sum(len(d.rack.fiber(v)) ** n for v in q.vertices)
        images = set(um.values())
        bij[n] = len(images) == len(um) == target
        ok = True
        for t, ut in um.items():
            for i in range(n - 1):
                if _sigma_at(c, ut, i) != um[_sigma_at(s, t, i)]:
                    ok = False
                    witness = witness or (n, i, t)
                    break
            if not ok:
                break
        inter[n] = ok
    return UFamily(maps, bij, inter, witness)


# --- 1-cocycle quiver data ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CocycleQuiverDatum:
    """phi: A -> aut L as (s(x), L_e(x) -> L_s(x), e(x)); mu: L -> A^e as element -> arrow of A."""

    quiver: Quiver
    rack: RackBundle
    phi: Mapping[str, AutElement]
    mu: Mapping[str, str]

    @property
    def mu_inv(self) -> dict[str, str]:
        return {x: l for l, x in self.mu.items()}

    @property
    def phi_injective(self) -> bool:
        return len(set(self.phi.values())) == len(self.phi)


def _datum_actions(d: CocycleQuiverDatum) -> tuple[dict, dict]:
    q, rb = d.quiver, d.rack
    xbar = d.mu_inv
    inv = {y: a.inverse().map for y, a in d.phi.items()}
    ract = {(x, y): d.mu[inv[y][xbar[x]]] for x, y in q.pairs}
    lact = {}
    for x, y in q.pairs:
        r = ract[(x, y)]
        z = rb.tri[(xbar[r], xbar[y])]
        lact[(x, y)] = d.mu[d.phi[r].map[z]]
    return lact, ract


def check_quiver_datum(q: Quiver, rb: RackBundle, phi: Mapping[str, AutElement], mu: Mapping[str, str]) -> Report:
    """Bundle isomorphism mu, phi over the base into rack automorphisms, and x⇀y = xy(x↼y)^-1."""
    if rb.quiver.vertices != q.vertices:
        return Report.failed("base", (), "rack and quiver over different bases")
    if sorted(mu) != sorted(rb.quiver.arrows) or sorted(mu.values()) != sorted(q.arrows):
        return Report.failed("mu", (), "mu is not a bijection L -> A^e")
    for l, x in mu.items():
        if rb.quiver.src[l] != q.end[x]:
            return Report.failed("mu", (l,), "mu does not preserve fibers")
    for x in q.arrows:
        a = phi.get(x)
        if a is None or a.src != q.src[x] or a.end != q.end[x]:
            return Report.failed("phi", (x,), "phi(x) not over the endpoints of x")
        if sorted(a.map) != sorted(rb.fiber(q.end[x])) or not a.is_bijective():
            return Report.failed("phi", (x,), "phi(x) is not a bijection of fibers")
        if not is_rack_morphism(rb, a):
            return Report.failed("phi", (x,), "phi(x) is not a rack morphism")
    d = CocycleQuiverDatum(q, rb, dict(phi), dict(mu))
    lact, ract = _datum_actions(d)
    for x, y in q.pairs:
        u, r = lact[(x, y)], ract[(x, y)]
        if q.src[u] != q.src[x]:
            return Report.failed("cocycle", (x, y), "s(x⇀y) ≠ s(x)")
        rhs = phi[x].then(phi[y]).then(phi[r].inverse())
        if phi[u] != rhs:
            return Report.failed("cocycle", (x, y), "x⇀y ≠ xy(x↼y)^-1")
    return Report.passed(d)


def solution_from_quiver_datum(d: CocycleQuiverDatum) -> NonDegenerateSolution:
    rep = check_quiver_datum(d.quiver, d.rack, d.phi, d.mu)
    if not rep:
        raise ValueError(f"not a 1-cocycle quiver datum: {rep.axiom} at {rep.witness}")
    lact, ract = _datum_actions(d)
    sol = check_solution(d.quiver, {p: (lact[p], ract[p]) for p in d.quiver.pairs})
    if not sol:
        raise ValueError(f"datum gives no solution: {sol.axiom} at {sol.witness}")
    nd = check_nondegenerate(sol.value)
    hard_assert(bool(nd), "datum gives a degenerate solution", force=True)
    return nd.value


def datum_from_solution(s: Solution) -> CocycleQuiverDatum:
    """L = A^e with the derived rack, phi_y(x̄) = bar(x↼y^-1), mu canonical."""
    s = require_nondegenerate(s)
    der = derived_solution(s)
    mu = {bar(x): x for x in s.quiver.arrows}
    return CocycleQuiverDatum(s.quiver, der.rack, dict(der.phi), mu)


def data_equivalent(d1: CocycleQuiverDatum, d2: CocycleQuiverDatum) -> bool:
    """psi = mu2^-1 mu1 is a rack isomorphism carrying phi1 to phi2."""
    if d1.quiver != d2.quiver:
        return False
    psi = {l: d2.mu_inv[x] for l, x in d1.mu.items()}
    r1, r2 = d1.rack, d2.rack
    for (a, b), c in r1.tri.items():
        if r2.tri[(psi[a], psi[b])] != psi[c]:
            return False
    for x in d1.quiver.arrows:
        m1, m2 = d1.phi[x].map, d2.phi[x].map
        if any(m2[psi[l]] != psi[v] for l, v in m1.items()):
            return False
    return True


# --- morphisms -----------------------------------------------------------------------


def check_braided_morphism(t: Mapping[str, str], s: Solution, u: Solution) -> bool:
    """T(x⇀y) = T(x)⇀T(y) and T(x↼y) = T(x)↼T(y), compared with the rack criterion."""
    q, qt = s.quiver, u.quiver
    for x in q.arrows:
        if qt.src[t[x]] != q.src[x] or qt.end[t[x]] != q.end[x]:
            return False
    cs1 = all(t[s.lact(x, y)] == u.lact(t[x], t[y]) for x, y in q.pairs)
    cs2 = all(t[s.ract(x, y)] == u.ract(t[x], t[y]) for x, y in q.pairs)
    direct = cs1 and cs2
    s_nd = check_nondegenerate(s)
    u_nd = check_nondegenerate(u)
    if s_nd and u_nd:
        rs = derived_solution(s_nd.value).rack
        ru = derived_solution(u_nd.value).rack
        tbar = all(
            bar(t[unbar(c)]) == ru.tri[(bar(t[unbar(a)]), bar(t[unbar(b)]))] for (a, b), c in rs.tri.items()
        )
        hard_assert(direct == (tbar and cs2), "rack criterion for braided morphisms disagrees", force=True)
    return direct


__all__ = [
    "CocycleQuiverDatum",
    "DerivedSolution",
    "RackBundle",
    "UFamily",
    "bar",
    "check_braided_morphism",
    "check_quiver_datum",
    "check_rack_bundle",
    "conjugation_rack",
    "data_equivalent",
    "datum_from_solution",
    "derived_solution",
    "is_rack_morphism",
    "rack_shape_solution",
    "rack_solution",
    "solution_from_quiver_datum",
    "trivial_rack",
    "u_family",
    "u_map",
    "unbar",
]
