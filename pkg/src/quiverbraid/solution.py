"""Braided quivers: a bijection sigma of composable pairs.

sigma(x, y) = (x ⇀ y, x ↼ y) and sigma^-1(x, y) = (x ⇁ y, x ↽ y).
The table is stored once, as a permutation of ``quiver.pairs``; every
other view (actions, inverse actions, kernel arrays) is derived.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping

from . import kernels
from .quiver import (
    Path,
    Quiver,
    double,
    inv_name,
    is_inverse_name,
    opposite,
    paths_of_length,
)
from .report import Report, hard_assert

Pair = tuple[str, str]


class SolutionTableError(ValueError):
    """The sigma table is not a map of composable pairs to composable pairs."""


@dataclass(frozen=True, eq=False)
class Solution:
    quiver: Quiver
    perm: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Solution):
            return NotImplemented
        return self.quiver == other.quiver and self.perm == other.perm

    def __hash__(self) -> int:
        return hash((self.quiver, self.perm))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.quiver!r}, {len(self.perm)} pairs)"

    @property
    def pairs(self) -> tuple[Pair, ...]:
        return self.quiver.pairs

    def sigma(self, x: str, y: str) -> Pair:
        return self.pairs[self.perm[self.quiver.pair_index[(x, y)]]]

    def lact(self, x: str, y: str) -> str:
        return self.sigma(x, y)[0]

    def ract(self, x: str, y: str) -> str:
        return self.sigma(x, y)[1]

    @cached_property
    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return tuple(inv)

    def sigma_inv(self, x: str, y: str) -> Pair:
        return self.pairs[self.inverse_perm[self.quiver.pair_index[(x, y)]]]

    @cached_property
    def table(self) -> dict[Pair, Pair]:
        return {p: self.pairs[j] for p, j in zip(self.pairs, self.perm)}

    @cached_property
    def arrays(self):
        """(n, pid, left, right) for the kernels."""
        q = self.quiver
        n = len(q.arrows)
        idx = q.index
        pid = [-1] * (n * n)
        for k, (x, y) in enumerate(q.pairs):
            pid[idx[x] * n + idx[y]] = k
        left = [idx[self.pairs[j][0]] for j in self.perm]
        right = [idx[self.pairs[j][1]] for j in self.perm]
        return n, kernels.int_array(pid), kernels.int_array(left), kernels.int_array(right)

    def is_involutive(self) -> bool:
        return all(self.perm[j] == i for i, j in enumerate(self.perm))

    def relabel(self, mapping: Mapping[str, str]) -> "Solution":
        """Transport along an arrow renaming that keeps the arrow order."""
        q2 = self.quiver.relabel(mapping)
        table = {(mapping[x], mapping[y]): (mapping[a], mapping[b]) for (x, y), (a, b) in self.table.items()}
        return check_solution(q2, table).unwrap()


@dataclass(frozen=True, eq=False)
class NonDegenerateSolution(Solution):
    """A solution certified non-degenerate; carries the inverse translations."""

    left_inverse: Mapping[Pair, str] = field(default_factory=dict)
    right_inverse: Mapping[Pair, str] = field(default_factory=dict)

    def left_solve(self, x: str, w: str) -> str:
        """The y with x ⇀ y = w."""
        return self.left_inverse[(x, w)]

    def right_solve(self, w: str, y: str) -> str:
        """The x with x ↼ y = w."""
        return self.right_inverse[(w, y)]

    def as_solution(self) -> Solution:
        return Solution(self.quiver, self.perm)


def _decode(q: Quiver, code: int) -> tuple[str, str, str]:
    n = len(q.arrows)
    return q.arrows[code // (n * n)], q.arrows[(code // n) % n], q.arrows[code % n]


def _perm_from_table(q: Quiver, table: Mapping[Pair, Pair]) -> list[int]:
    pidx = q.pair_index
    keys = set(table)
    missing = [p for p in q.pairs if p not in keys]
    if missing:
        raise SolutionTableError(f"sigma undefined on composable pair {missing[0]}")
    extra = keys - set(pidx)
    if extra:
        raise SolutionTableError(f"sigma defined on non-composable pair {min(extra)}")
    perm = []
    for p in q.pairs:
        img = tuple(table[p])
        if img not in pidx:
            raise SolutionTableError(f"sigma{p} = {img} is not a composable pair")
        perm.append(pidx[img])
    return perm


def check_solution(q: Quiver, table: Mapping[Pair, Pair]) -> Report:
    """Bijectivity, corner conditions and the braid equation on every triple."""
    perm = _perm_from_table(q, table)
    seen: dict[int, Pair] = {}
    for p, j in zip(q.pairs, perm):
        if j in seen:
            return Report.failed("bijective", (seen[j], p), "two pairs share an image")
        seen[j] = p
    for (x, y), j in zip(q.pairs, perm):
        a, b = q.pairs[j]
        if q.src[a] != q.src[x] or q.end[b] != q.end[y]:
            return Report.failed("corner", ((x, y),), f"sigma{(x, y)} = {(a, b)} changes the degree")
    s = Solution(q, tuple(perm))
    code = kernels.braid_violation(*s.arrays)
    if code >= 0:
        return Report.failed("braid", _decode(q, code), "braid equation fails on triple")
    return Report.passed(s)


def braid_triple(s: Solution, x: str, y: str, z: str) -> tuple[tuple[str, str, str], tuple[str, str, str]]:
    """Both sides of the braid equation on (x, y, z)."""
    a, b = s.sigma(x, y)
    c, d = s.sigma(b, z)
    e, f = s.sigma(a, c)
    g, h = s.sigma(y, z)
    i, j = s.sigma(x, g)
    k, l = s.sigma(j, h)
    return (e, f, d), (i, k, l)


def solution_from_maps(q: Quiver, lact: Callable[[str, str], str], ract: Callable[[str, str], str]) -> Report:
    return check_solution(q, {(x, y): (lact(x, y), ract(x, y)) for x, y in q.pairs})


def flip_solution(q: Quiver) -> Solution:
    """sigma(x, y) = (y, x); a solution on loop bundles."""
    return check_solution(q, {(x, y): (y, x) for x, y in q.pairs}).unwrap()


def identity_solution(q: Quiver) -> Solution:
    return check_solution(q, {p: p for p in q.pairs}).unwrap()


# --- non-degeneracy -----------------------------------------------------------------


def check_nondegenerate(s: Solution) -> Report:
    """Every x ⇀ . and . ↼ y must be a bijection between the relevant fibers."""
    q = s.quiver
    left_inv: dict[Pair, str] = {}
    right_inv: dict[Pair, str] = {}
    for x in q.arrows:
        dom = q.out_arrows[q.end[x]]
        cod = q.out_arrows[q.src[x]]
        img = {}
        for y in dom:
            w = s.lact(x, y)
            if w in img:
                return Report.failed("left-degenerate", (x, img[w], y), f"{x} ⇀ . is not injective")
            img[w] = y
        if len(img) != len(cod):
            return Report.failed("left-degenerate", (x,), f"{x} ⇀ . is not surjective")
        for w, y in img.items():
            left_inv[(x, w)] = y
    for y in q.arrows:
        dom = q.in_arrows[q.src[y]]
        cod = q.in_arrows[q.end[y]]
        img = {}
        for x in dom:
            w = s.ract(x, y)
            if w in img:
                return Report.failed("right-degenerate", (y, img[w], x), f". ↼ {y} is not injective")
            img[w] = x
        if len(img) != len(cod):
            return Report.failed("right-degenerate", (y,), f". ↼ {y} is not surjective")
        for w, x in img.items():
            right_inv[(w, y)] = x
    for x, y, z in q.triples():
        lhs = s.ract(s.lact(x, y), s.lact(s.ract(x, y), z))
        rhs = s.lact(s.ract(x, s.lact(y, z)), s.ract(y, z))
        if lhs != rhs:
            return Report.failed("middle-compatibility", (x, y, z))
    return Report.passed(NonDegenerateSolution(q, s.perm, left_inv, right_inv))


def require_nondegenerate(s: Solution) -> NonDegenerateSolution:
    if isinstance(s, NonDegenerateSolution):
        return s
    rep = check_nondegenerate(s)
    if not rep:
        raise ValueError(f"solution is degenerate: {rep.axiom} at {rep.witness}")
    return rep.value


# --- dual and double ----------------------------------------------------------------


def dual_solution(s: Solution) -> NonDegenerateSolution:
    """sigma* on A^op: sigma*(x^-1, y^-1) = ((y ↽ x)^-1, (y ⇁ x)^-1)."""
    s = require_nondegenerate(s)
    qo = opposite(s.quiver)
    table = {}
    for xi, yi in qo.pairs:
        a, b = s.sigma_inv(inv_name(yi), inv_name(xi))
        table[(xi, yi)] = (inv_name(b), inv_name(a))
    sol = check_solution(qo, table)
    hard_assert(bool(sol), f"dual is not a solution: {sol.axiom} {sol.witness}")
    nd = check_nondegenerate(sol.unwrap())
    hard_assert(bool(nd), "dual of a non-degenerate solution is degenerate")
    return nd.unwrap()


def _base(x: str) -> str:
    return inv_name(x) if is_inverse_name(x) else x


def double_table(s: NonDegenerateSolution) -> dict[Pair, Pair]:
    """sigma-bar on DA, assembled sector by sector."""
    q = s.quiver
    dq = double(q)
    table: dict[Pair, Pair] = {}
    for u, v in dq.pairs:
        nu, nv = is_inverse_name(u), is_inverse_name(v)
        if not nu and not nv:
            table[(u, v)] = s.sigma(u, v)
        elif nu and nv:
            a, b = s.sigma_inv(inv_name(v), inv_name(u))
            table[(u, v)] = (inv_name(b), inv_name(a))
        elif not nu:
            # u = x, v = g^-1 with end(x) = end(g)
            g = inv_name(v)
            z = s.right_solve(u, g)
            table[(u, v)] = (inv_name(s.lact(z, g)), z)
        else:
            # u = h^-1, v = y with src(h) = src(y)
            h = inv_name(u)
            w = s.left_solve(h, v)
            table[(u, v)] = (w, inv_name(s.ract(h, w)))
    return table


def double_solution(s: Solution) -> NonDegenerateSolution:
    """sigma-bar on DA; re-verified as a non-degenerate solution."""
    s = require_nondegenerate(s)
    dq = double(s.quiver)
    rep = check_solution(dq, double_table(s))
    hard_assert(bool(rep), f"double is not a solution: {rep.axiom} {rep.witness}", force=True)
    nd = check_nondegenerate(rep.unwrap())
    hard_assert(bool(nd), "double is degenerate", force=True)
    return nd.unwrap()


SECTORS = {"I": (False, True, True), "II": (True, False, True), "III": (True, True, False)}


def mixed_sector_report(sbar: Solution) -> dict[str, dict]:
    """Braid equation per sign pattern of (x, y, z) on DA; True marks an inverse letter."""
    out: dict[str, dict] = {}
    signs: dict[tuple[bool, ...], str] = {v: k for k, v in SECTORS.items()}
    for name in SECTORS:
        out[name] = {"triples": 0, "failures": 0, "witness": None}
    for x, y, z in sbar.quiver.triples():
        key = signs.get((is_inverse_name(x), is_inverse_name(y), is_inverse_name(z)))
        if key is None:
            continue
        rec = out[key]
        rec["triples"] += 1
        lhs, rhs = braid_triple(sbar, x, y, z)
        if lhs != rhs:
            rec["failures"] += 1
            if rec["witness"] is None:
                rec["witness"] = (x, y, z)
    return out


def check_double_inverse_identity(s: NonDegenerateSolution, sbar: Solution) -> Report:
    """sigma-bar^-1(x, y) = ((y^-1 ↼ x^-1)^-1, (y^-1 ⇀ x^-1)^-1) on pairs of A."""
    for x, y in s.pairs:
        yi, xi = inv_name(y), inv_name(x)
        expect = (inv_name(sbar.ract(yi, xi)), inv_name(sbar.lact(yi, xi)))
        if s.sigma_inv(x, y) != expect:
            return Report.failed("double-inverse", (x, y))
    return Report.passed()


# --- paths --------------------------------------------------------------------------


def path_braid(s: Solution, u: Path, v: Path) -> tuple[Path, Path]:
    """sigma^{m,n}(u, v) as a product of sigma_{i,i+1}."""
    q = s.quiver
    if u.end(q) != v.src:
        raise ValueError("paths are not composable")
    m, n = len(u.arrows), len(v.arrows)
    t = list(u.arrows + v.arrows)
    for j in range(n):
        for i in range(m - 1 + j, j - 1, -1):
            t[i], t[i + 1] = s.sigma(t[i], t[i + 1])
    left = Path(u.src, tuple(t[:n]))
    mid = left.end(q)
    return left, Path(mid, tuple(t[n:]))


def path_solution(s: Solution, m: int, n: int) -> dict[tuple[Path, Path], tuple[Path, Path]]:
    """The bijection sigma^{m,n} on Path_m (x) Path_n."""
    if m < 0 or n < 0:
        raise ValueError("path lengths must be non-negative")
    q = s.quiver
    out = {}
    for u in paths_of_length(q, m):
        for v in paths_of_length(q, n):
            if u.end(q) == v.src:
                out[(u, v)] = path_braid(s, u, v)
    hard_assert(len(set(out.values())) == len(out), "path braiding is not injective")
    return out


# --- quantum Yang-Baxter form -------------------------------------------------------


def qybe_form(s: Solution) -> Report:
    """R = tau sigma, R(x, y) = (x ↼ y, x ⇀ y); both triple composites compared."""
    r = {(x, y): (b, a) for (x, y), (a, b) in s.table.items()}
    rep = check_qybe(s.quiver, r)
    if rep:
        rep.value = r
    return rep


def check_qybe(q: Quiver, r: Mapping[Pair, Pair]) -> Report:
    """R12 R13 R23 = R23 R13 R12 on every composable triple (a, b, c) of A."""

    def r12(t):
        a, b, c = t
        if (a, b) not in r:
            return None
        a2, b2 = r[(a, b)]
        return (a2, b2, c)

    def r23(t):
        a, b, c = t
        if (b, c) not in r:
            return None
        b2, c2 = r[(b, c)]
        return (a, b2, c2)

    def r13(t):
        a, b, c = t
        if (a, c) not in r:
            return None
        a2, c2 = r[(a, c)]
        return (a2, b, c2)

    def chain(t, *fs):
        for f in fs:
            if t is None:
                return None
            t = f(t)
        return t

    for t in q.triples():
        lhs = chain(t, r23, r13, r12)
        rhs = chain(t, r12, r13, r23)
        if lhs is None or rhs is None or lhs != rhs:
            return Report.failed("qybe", t)
    return Report.passed()


# --- braid group action and equivalence ---------------------------------------------


@dataclass
class Level:
    """Paths of length n encoded base |A|, with the generator permutations."""

    n: int
    tuples: list[tuple[str, ...]]
    gens: list[list[int]]


def level_action(s: Solution, n: int) -> Level:
    q = s.quiver
    na, pid, left, right = s.arrays
    idx = q.index
    paths = paths_of_length(q, n)
    tuples = [p.arrows for p in paths]
    codes = []
    for t in tuples:
        c = 0
        for x in t:
            c = c * na + idx[x]
        codes.append(c)
    pos = {c: k for k, c in enumerate(codes)}
    gens = []
    for i in range(n - 1):
        img = kernels.apply_generator(na, pid, left, right, codes, n, i)
        gens.append([pos[c] for c in img])
    return Level(n, tuples, gens)


def check_braid_relations(lv: Level) -> Report:
    """sigma_i sigma_{i+1} sigma_i = sigma_{i+1} sigma_i sigma_{i+1}; far generators commute."""
    g = lv.gens
    for i in range(len(g)):
        for j in range(len(g)):
            for k in range(len(lv.tuples)):
                if j == i + 1 and g[i][g[j][g[i][k]]] != g[j][g[i][g[j][k]]]:
                    return Report.failed("braid-relation", (i, lv.tuples[k]))
                if abs(i - j) >= 2 and g[i][g[j][k]] != g[j][g[i][k]]:
                    return Report.failed("far-commute", (i, j, lv.tuples[k]))
    return Report.passed()


def _orbits(lv: Level) -> list[list[int]]:
    seen = [False] * len(lv.tuples)
    out = []
    for k in range(len(lv.tuples)):
        if seen[k]:
            continue
        orb = [k]
        seen[k] = True
        i = 0
        while i < len(orb):
            for g in lv.gens:
                m = g[orb[i]]
                if not seen[m]:
                    seen[m] = True
                    orb.append(m)
            i += 1
        out.append(orb)
    return out


def _match_orbit(a: Level, b: Level, x: int, y: int) -> dict[int, int] | None:
    phi = {x: y}
    used = {y}
    todo = deque([x])
    while todo:
        u = todo.popleft()
        for ga, gb in zip(a.gens, b.gens):
            u2, v2 = ga[u], gb[phi[u]]
            if u2 in phi:
                if phi[u2] != v2:
                    return None
            else:
                if v2 in used:
                    return None
                phi[u2] = v2
                used.add(v2)
                todo.append(u2)
    return phi


def level_isomorphism(a: Level, b: Level) -> dict[tuple, tuple] | None:
    """An equivariant bijection of the two levels, or None."""
    if len(a.tuples) != len(b.tuples) or len(a.gens) != len(b.gens):
        return None
    ob = _orbits(b)
    free = list(range(len(ob)))
    total: dict[int, int] = {}
    for orb in _orbits(a):
        found = None
        for slot in free:
            cand = ob[slot]
            if len(cand) != len(orb):
                continue
            for y in cand:
                phi = _match_orbit(a, b, orb[0], y)
                if phi is not None:
                    found = (slot, phi)
                    break
            if found:
                break
        if found is None:
            return None
        free.remove(found[0])
        total.update(found[1])
    return {a.tuples[i]: b.tuples[j] for i, j in total.items()}


@dataclass
class EquivalenceResult:
    found: bool
    n_max: int
    maps: dict[int, dict[tuple, tuple]]
    failed_level: int | None = None

    def __bool__(self) -> bool:
        return self.found


def solutions_equivalent(s: Solution, t: Solution, n_max: int = 3) -> EquivalenceResult:
    """Search for intertwiners U^n with U^n sigma_i = sigma~_i U^n for 2 <= n <= n_max.

    Each level is decided exactly (orbit matching of the braid group
    actions); a positive answer is only a certificate up to n_max.
    """
    maps = {}
    for n in range(2, n_max + 1):
        iso = level_isomorphism(level_action(s, n), level_action(t, n))
        if iso is None:
            return EquivalenceResult(False, n_max, maps, n)
        maps[n] = iso
    return EquivalenceResult(True, n_max, maps)


def verify_intertwiner(s: Solution, t: Solution, n: int, u: Mapping[tuple, tuple]) -> Report:
    """Check U sigma_i = sigma~_i U on every tuple of level n, and bijectivity."""
    a, b = level_action(s, n), level_action(t, n)
    bpos = {tp: k for k, tp in enumerate(b.tuples)}
    if set(u) != set(a.tuples) or len(set(u.values())) != len(u):
        return Report.failed("bijective", (n,))
    for k, tp in enumerate(a.tuples):
        if u[tp] not in bpos:
            return Report.failed("codomain", (tp,))
        for i, (ga, gb) in enumerate(zip(a.gens, b.gens)):
            if u[a.tuples[ga[k]]] != b.tuples[gb[bpos[u[tp]]]]:
                return Report.failed("intertwine", (n, i, tp))
    return Report.passed()


def all_composable_tables(q: Quiver) -> Iterable[dict[Pair, Pair]]:
    """Every bijection of composable pairs preserving degree. Exponential; tests only."""
    from itertools import permutations

    blocks: dict[tuple[str, str], list[Pair]] = {}
    for x, y in q.pairs:
        blocks.setdefault((q.src[x], q.end[y]), []).append((x, y))
    keys = list(blocks)

    def rec(k: int, acc: dict[Pair, Pair]):
        if k == len(keys):
            yield dict(acc)
            return
        blk = blocks[keys[k]]
        for img in permutations(blk):
            acc.update(zip(blk, img))
            yield from rec(k + 1, acc)

    yield from rec(0, {})
