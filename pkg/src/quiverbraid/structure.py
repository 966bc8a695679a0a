"""Reduced structure groupoid of a non-degenerate solution, and structural pairs.

An element of the reduced structure groupoid is identified by what it
does on DA: its source and end, its left translations w -> g⇀w and its
right translations w -> w↼g. Two words are equal in the quotient exactly
when these agree, so closure never needs to solve a word problem.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .braided import BraidedGroupoid, antipode_solution, check_braided_groupoid
from .groupoid import Groupoid, GroupoidMorphism, check_morphism, validate_groupoid
from .matched import (
    Representation,
    TautologicalPair,
    braiding_from_lyz,
    check_representation,
    double_representation,
    tautological_pair,
)
from .quiver import Path, Quiver, inv_name
from .report import Report, debug_checks, hard_assert
from .solution import (
    NonDegenerateSolution,
    Solution,
    check_nondegenerate,
    check_solution,
    double_solution,
    path_braid,
    require_nondegenerate,
)
from .words import Word, make_word, subgroupoid_generated

Fingerprint = tuple[str, str, tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True, eq=False)
class StructuralPair:
    braided: BraidedGroupoid
    quiver: Quiver
    grading: Mapping[str, str]
    action: Mapping[tuple[str, str], str]
    taut: TautologicalPair
    representation: Representation
    faithful: bool
    words: Mapping[str, Word]
    fingerprints: Mapping[str, Fingerprint]
    double_quiver: Quiver | None = None

    @property
    def groupoid(self) -> Groupoid:
        return self.braided.groupoid

    def element_of(self, w: Word) -> str:
        """The element of the reduced groupoid represented by a word over DA."""
        return word_element(self, w.letters, w.src)

    def equal(self, u: Word, v: Word) -> bool:
        """Equality of two words in the reduced structure groupoid."""
        return self.element_of(u) == self.element_of(v)


# --- translations ---------------------------------------------------------------------


@dataclass
class _Translations:
    dq: Quiver
    sbar: NonDegenerateSolution

    def __post_init__(self) -> None:
        self.idx = self.dq.index
        self.n = len(self.dq.arrows)
        self.src = [self.dq.src[a] for a in self.dq.arrows]
        self.end = [self.dq.end[a] for a in self.dq.arrows]

    def identity(self, p: str) -> Fingerprint:
        left = tuple(i if self.src[i] == p else -1 for i in range(self.n))
        right = tuple(i if self.end[i] == p else -1 for i in range(self.n))
        return (p, p, left, right)

    def generator(self, x: str) -> Fingerprint:
        dq, s = self.dq, self.sbar
        left = [-1] * self.n
        right = [-1] * self.n
        for w in dq.out_arrows[dq.end[x]]:
            left[self.idx[w]] = self.idx[s.lact(x, w)]
        for w in dq.in_arrows[dq.src[x]]:
            right[self.idx[w]] = self.idx[s.ract(w, x)]
        return (dq.src[x], dq.end[x], tuple(left), tuple(right))

    @staticmethod
    def compose(f: Fingerprint, g: Fingerprint) -> Fingerprint:
        # (fg)⇀w = f⇀(g⇀w), w↼(fg) = (w↼f)↼g
        lf, rf = f[2], f[3]
        lg, rg = g[2], g[3]
        left = tuple(-1 if j < 0 else lf[j] for j in lg)
        right = tuple(-1 if j < 0 else rg[j] for j in rf)
        return (f[0], g[1], left, right)


def _letter_element(sp: StructuralPair, x: str) -> str:
    if x in sp.grading:
        return sp.grading[x]
    return sp.groupoid.inv(sp.grading[inv_name(x)])


# --- closure ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Closure:
    elements: tuple[str, ...]
    fingerprint: Mapping[str, Fingerprint]
    word: Mapping[str, Word]
    parent: Mapping[str, tuple[str, str] | None]
    of_fingerprint: Mapping[Fingerprint, str]
    generator: Mapping[str, str]


def _name(w: Word) -> str:
    return f"[{w}]"


def saturate(s: NonDegenerateSolution) -> tuple[Closure, _Translations]:
    """Breadth-first closure from the identities under right multiplication by DA letters.

    Letters are tried in DA order (A, then A^op), so each element keeps its
    shortlex-least word.
    """
    sbar = double_solution(s)
    dq = sbar.quiver
    tr = _Translations(dq, sbar)
    gens = {x: tr.generator(x) for x in dq.arrows}
    for x in s.quiver.arrows:
        both = tr.compose(gens[x], gens[inv_name(x)])
        hard_assert(both == tr.identity(dq.src[x]), f"letters {x} and its inverse do not cancel on DA")
    of_fp: dict[Fingerprint, str] = {}
    fp: dict[str, Fingerprint] = {}
    word: dict[str, Word] = {}
    parent: dict[str, tuple[str, str] | None] = {}
    order: list[str] = []
    queue: deque[str] = deque()
    for p in dq.vertices:
        f = tr.identity(p)
        w = Word(p, ())
        nm = _name(w)
        of_fp[f], fp[nm], word[nm], parent[nm] = nm, f, w, None
        order.append(nm)
        queue.append(nm)
    while queue:
        cur = queue.popleft()
        cf, cw = fp[cur], word[cur]
        for x in dq.out_arrows[cf[1]]:
            h = tr.compose(cf, gens[x])
            if h in of_fp:
                continue
            w = Word(cw.src, cw.letters + (x,))
            nm = _name(w)
            of_fp[h], fp[nm], word[nm], parent[nm] = nm, h, w, (cur, x)
            order.append(nm)
            queue.append(nm)
    generator = {x: of_fp[gens[x]] for x in dq.arrows}
    return Closure(tuple(order), fp, word, parent, of_fp, generator), tr


def _closure_groupoid(c: Closure, tr: _Translations) -> Groupoid:
    fp = c.fingerprint
    q = Quiver.build(tr.dq.vertices, ((e, fp[e][0], fp[e][1]) for e in c.elements))
    comp = {(f, g): c.of_fingerprint[tr.compose(fp[f], fp[g])] for f, g in q.pairs}
    ident = {p: _name(Word(p, ())) for p in q.vertices}
    inv = {}
    for f in q.arrows:
        for g in q.hom(q.end[f], q.src[f]):
            if comp[(f, g)] == ident[q.src[f]]:
                inv[f] = g
                break
    return validate_groupoid(q, ident, comp, inv).unwrap()


def _braiding(c: Closure, tr: _Translations, g: Groupoid) -> tuple[dict, dict]:
    """Actions on the closure from representative words.

    x⇀(h'y) = (x⇀h')((x↼h')⇀y) for a letter x, then g'x⇀h = g'⇀(x⇀h);
    finally f↼h = (f⇀h)^-1 fh.
    """
    dq, sbar = tr.dq, tr.sbar
    fp = c.fingerprint
    letters = dq.arrows
    # letter x acting on element h
    gen_lact: dict[tuple[str, str], str] = {}
    for h in c.elements:
        par = c.parent[h]
        for x in dq.in_arrows[fp[h][0]]:
            if par is None:
                gen_lact[(x, h)] = g.identity[dq.src[x]]
                continue
            hp, y = par
            xr = letters[fp[hp][3][tr.idx[x]]]
            z = sbar.lact(xr, y)
            gen_lact[(x, h)] = g.mul(gen_lact[(x, hp)], c.generator[z])
    lact: dict[tuple[str, str], str] = {}
    for f in c.elements:
        par = c.parent[f]
        for h in g.quiver.out_arrows[g.end(f)]:
            if par is None:
                lact[(f, h)] = h
            else:
                fp_, x = par
                lact[(f, h)] = lact[(fp_, gen_lact[(x, h)])]
    ract = {(f, h): g.mul_all([g.inv(lact[(f, h)]), f, h]) for f, h in g.pairs}
    return lact, ract


def reduced_structure_groupoid(s: Solution) -> StructuralPair:
    """G_A with its braiding, grading ‖x‖, and the action of G_A⋈G_A on A."""
    s = require_nondegenerate(s)
    c, tr = saturate(s)
    g = _closure_groupoid(c, tr)
    lact, ract = _braiding(c, tr, g)
    rep = check_braided_groupoid(g, lact, ract)
    hard_assert(bool(rep), f"closure is not braided: {rep.axiom} {rep.witness}", force=True)
    b: BraidedGroupoid = rep.value
    q = s.quiver
    grading = {x: c.generator[x] for x in q.arrows}
    _assert_grading_preserves_actions(s, b, grading)
    action = _canonical_action(b, c, tr, q)
    sp = check_structural_pair(b, q, grading, action)
    hard_assert(bool(sp), f"closure is not a structural pair: {sp.axiom} {sp.witness}", force=True)
    out: StructuralPair = sp.value
    faithful = len(set(grading.values())) == len(grading)
    out = StructuralPair(
        out.braided, q, out.grading, out.action, out.taut, out.representation,
        faithful, dict(c.word), dict(c.fingerprint), tr.dq,
    )
    if debug_checks():
        r = check_path_compatibility(out, s, 2)
        hard_assert(bool(r), f"braiding on the closure differs from the path braiding: {r.witness}")
    return out


def _assert_grading_preserves_actions(s: NonDegenerateSolution, b: BraidedGroupoid, grading) -> None:
    anti = antipode_solution(b)
    for x, y in s.pairs:
        u, v = s.sigma(x, y)
        hard_assert(b.sigma(grading[x], grading[y]) == (grading[u], grading[v]), "‖ ‖ does not preserve ⇀, ↼")
        u, v = s.sigma_inv(x, y)
        hard_assert(anti.sigma(grading[x], grading[y]) == (grading[u], grading[v]), "‖ ‖ does not preserve ⇁, ↽")


def _canonical_action(b: BraidedGroupoid, c: Closure, tr: _Translations, q: Quiver) -> dict:
    """(g, h)↪x = g⇁(h⇀x), with g⇁y = (y^-1↼g^-1)^-1 read off the translations."""
    g = b.groupoid
    fp = c.fingerprint
    letters = tr.dq.arrows
    idx = tr.idx
    action = {}
    for gg in g.arrows:
        for hh in g.quiver.out_arrows[g.end(gg)]:
            for x in q.out_arrows[g.end(hh)]:
                hx = letters[fp[hh][2][idx[x]]]
                gi = g.inv(gg)
                y = letters[fp[gi][3][idx[inv_name(hx)]]]
                action[(gg, hh, x)] = inv_name(y)
    return action


# --- structural pairs --------------------------------------------------------------------


def check_structural_pair(
    b: BraidedGroupoid, q: Quiver, grading: Mapping[str, str], action: Mapping[tuple, str]
) -> Report:
    """Representation axioms for (G, G⋈G), generation by |A|, and injectivity of ∇.

    ``action`` is keyed by (g, h, x) for (g, h) in G⋈G and x in A.
    """
    taut = tautological_pair(b)
    d = taut.diagonal
    act = {(d.name_of[(gg, hh)], x): v for (gg, hh, x), v in action.items()}
    rep = check_representation(taut.mp, q, act, grading)
    if not rep:
        return rep
    r: Representation = rep.value
    g = b.groupoid
    gen = subgroupoid_generated(g, set(grading.values()))
    if len(gen.arrows) != len(g.arrows):
        missing = next(f for f in g.arrows if f not in set(gen.arrows))
        return Report.failed("generation", (missing,), "|A| does not generate G")
    dr = double_representation(r)
    dq = dr.quiver
    in1 = taut.lyz.xi
    in2 = taut.lyz.eta
    seen: dict[tuple, str] = {}
    for f in g.arrows:
        images = []
        for x in dq.out_arrows[g.end(f)]:
            fx = dr.action[(in2[f], x)]
            fr = b.ract[(f, dr.grading[x])]
            for y in dq.out_arrows[dq.end[x]]:
                images.append(((x, y), (fx, dr.action[(in1[fr], y)])))
        key = (g.src(f), g.end(f), tuple(images))
        if key in seen:
            return Report.failed("nabla-injective", (seen[key], f), "∇g = ∇g' for g ≠ g'")
        seen[key] = f
    return Report.passed(
        StructuralPair(b, q, dict(grading), dict(action), taut, r, len(set(grading.values())) == len(grading), {}, {})
    )


def solution_from_structural_pair(sp: StructuralPair) -> NonDegenerateSolution:
    """σ(a, b) = (in2(‖a‖)↪b, (in1(‖b‖)^-1↩‖a‖^-1)↪a)."""
    r = sp.representation
    table = braiding_from_lyz(sp.taut.lyz, r, r)
    sol = check_solution(sp.quiver, table)
    hard_assert(bool(sol), f"structural pair gives no solution: {sol.axiom} {sol.witness}", force=True)
    nd = check_nondegenerate(sol.value)
    hard_assert(bool(nd), "structural pair gives a degenerate solution", force=True)
    return nd.value


def structural_pair_key(sp: StructuralPair) -> tuple:
    """Canonical encoding, for comparing structural pairs of the same quiver."""
    b = sp.braided
    return (
        tuple(sorted(b.groupoid.compose.items())),
        tuple(sorted(b.lact.items())),
        tuple(sorted(b.ract.items())),
        tuple(sorted(sp.grading.items())),
        tuple(sorted(sp.action.items())),
    )


# --- diagnostics -------------------------------------------------------------------------


def check_path_compatibility(sp: StructuralPair, s: NonDegenerateSolution, max_len: int) -> Report:
    """For DA paths u, v of length <= max_len, the path braiding maps to ‖u‖⇀‖v‖, ‖u‖↼‖v‖.

    This exercises descent: every representative of an element must act the same way.
    """
    sbar = double_solution(s)
    dq = sbar.quiver
    g, b = sp.groupoid, sp.braided
    letter = {x: _letter_element(sp, x) for x in dq.arrows}

    def elem(p: Path) -> str:
        return g.mul_all([letter[x] for x in p.arrows], p.src)

    paths = _paths(dq, max_len)
    for u in paths:
        for v in paths:
            if u.end(dq) != v.src or not u.arrows or not v.arrows:
                continue
            pu, pv = path_braid(sbar, u, v)
            eu, ev = elem(u), elem(v)
            if (elem(pu), elem(pv)) != b.sigma(eu, ev):
                return Report.failed("path-braiding", (u.arrows, v.arrows))
    return Report.passed()


def _paths(q: Quiver, n: int) -> list[Path]:
    out, level = [], [Path(v, ()) for v in q.vertices]
    for k in range(n + 1):
        out.extend(level)
        if k < n:
            level = [Path(p.src, p.arrows + (x,)) for p in level for x in q.out_arrows[p.end(q)]]
    return out


def induced_morphism(sp: StructuralPair, target: BraidedGroupoid, phi: Mapping[str, str]) -> Report:
    """Extend a braided-quiver morphism A -> G to the reduced groupoid through representative words.

    Fails with a witness when phi does not factor through the quotient by Λ.
    """
    g, h = sp.groupoid, target.groupoid
    q = sp.quiver
    sol = solution_from_structural_pair(sp)
    for x, y in q.pairs:
        u, v = target.sigma(phi[x], phi[y])
        a, c = sol.sigma(x, y)
        if (u, v) != (phi[a], phi[c]):
            return Report.failed("braided-morphism", (x, y), "phi does not intertwine the braidings")

    def ev(letter: str) -> str:
        return phi[letter] if letter in phi else h.inv(phi[inv_name(letter)])

    amap = {}
    for e in g.arrows:
        w = sp.words[e]
        amap[e] = h.mul_all([ev(x) for x in w.letters], w.src)
    m = GroupoidMorphism(g, h, amap)
    rep = check_morphism(m)
    if not rep:
        return rep
    for x in q.arrows:
        if amap[sp.grading[x]] != phi[x]:
            return Report.failed("factor", (x,), "phi ≠ phi-hat ∘ ι")
    return Report.passed(m)


def word_element(sp: StructuralPair, letters: Sequence[str], src: str | None = None) -> str:
    w = make_word(sp.quiver, letters, src)
    g = sp.groupoid
    return g.mul_all([_letter_element(sp, x) for x in w.letters], w.src)


__all__ = [
    "Closure",
    "StructuralPair",
    "check_path_compatibility",
    "check_structural_pair",
    "induced_morphism",
    "reduced_structure_groupoid",
    "saturate",
    "solution_from_structural_pair",
    "structural_pair_key",
    "word_element",
]
