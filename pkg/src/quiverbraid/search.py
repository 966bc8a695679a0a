"""Exhaustive enumeration of solutions and braided structures on small inputs.

The solution search assigns images to composable pairs in order, keeping
corner conditions, injectivity of σ and of each x⇀. and .↼y, and the braid
equation on fully assigned triples. The tree splits at the first pair into
independent subtrees; results are merged and sorted by their encoding, so
the output never depends on how the subtrees were scheduled.

``naive_is_solution`` is a deliberately plain second checker: it composes
the three-fold maps on triples directly and shares no code with
:mod:`quiverbraid.solution`.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from . import kernels
from .braided import BraidedGroupoid, braided_from_left_action
from .groupoid import Groupoid, groupoid_automorphisms
from .matched import LYZPair, MatchedPair, check_lyz_pair, check_rotation
from .quiver import Quiver, automorphisms_over_base
from .solution import (
    Solution,
    check_nondegenerate,
    check_solution,
    solutions_equivalent,
)

Pair = tuple[str, str]

KINDS = ("solution", "braided-groupoid", "lyz-pair", "two-cocycle")


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchSpec:
    target: object
    kind: str = "solution"
    symmetry: bool = True
    node_budget: int = 10_000_000
    time_budget: float = 600.0
    max_pairs: int = 64
    workers: int = 1
    nondegenerate: bool = True
    order: int = 2

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown structure kind {self.kind!r}")
        if self.node_budget <= 0 or self.time_budget <= 0 or self.workers <= 0:
            raise ValueError("caps must be positive")
        q = self.target.quiver if hasattr(self.target, "quiver") else self.target
        if isinstance(q, Quiver) and len(q.pairs) > self.max_pairs:
            raise ValueError(f"{len(q.pairs)} composable pairs exceed the limit {self.max_pairs}")


@dataclass
class SearchResult:
    items: list
    exhaustive: bool
    nodes: int
    note: str = ""
    classes: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "count": len(self.items),
            "exhaustive": self.exhaustive,
            "nodes": self.nodes,
            "note": self.note,
        }


# --- naive oracle ---------------------------------------------------------------------


def naive_is_solution(q: Quiver, table: Mapping[Pair, Pair]) -> bool:
    """Bijection of composable pairs keeping corners, with s12 s23 s12 = s23 s12 s23."""
    arrows = list(q.arrows)
    src, end = dict(q.src), dict(q.end)
    comp = [(x, y) for x in arrows for y in arrows if end[x] == src[y]]
    if sorted(table) != sorted(comp):
        return False
    images = []
    for x, y in comp:
        img = table[(x, y)]
        if len(img) != 2:
            return False
        a, b = img
        if a not in src or b not in src or end[a] != src[b]:
            return False
        if src[a] != src[x] or end[b] != end[y]:
            return False
        images.append((a, b))
    if len(set(images)) != len(images):
        return False

    def s12(t):
        a, b = table[(t[0], t[1])]
        return (a, b, t[2])

    def s23(t):
        b, c = table[(t[1], t[2])]
        return (t[0], b, c)

    for x, y in comp:
        for z in arrows:
            if end[y] != src[z]:
                continue
            t = (x, y, z)
            if s12(s23(s12(t))) != s23(s12(s23(t))):
                return False
    return True


# --- solution search ------------------------------------------------------------------


def _quiver_payload(q: Quiver) -> tuple:
    return (q.vertices, tuple((a, q.src[a], q.end[a]) for a in q.arrows))


def _candidates(q: Quiver) -> list[list[int]]:
    """Per pair, the indices of pairs with the same corners."""
    pairs = q.pairs
    out = []
    for x, y in pairs:
        out.append([j for j, (a, b) in enumerate(pairs) if q.src[a] == q.src[x] and q.end[b] == q.end[y]])
    return out


def _subtree(payload: tuple, first: int | None, budget: int, nondegenerate: bool, deadline: float) -> tuple[list[tuple[int, ...]], int, bool]:
    """All valid perms with pair 0 mapped to ``first`` (or the empty table)."""
    q = Quiver.build(*payload)
    pairs = q.pairs
    m = len(pairs)
    if m == 0:
        return [()], 1, True
    n = len(q.arrows)
    idx = q.index
    pid = [-1] * (n * n)
    for k, (x, y) in enumerate(pairs):
        pid[idx[x] * n + idx[y]] = k
    pid_arr = kernels.int_array(pid)
    left = kernels.int_array([-1] * m)
    right = kernels.int_array([-1] * m)
    cands = _candidates(q)
    pi = [(idx[x], idx[y]) for x, y in pairs]
    pj = [(idx[a], idx[b]) for a, b in pairs]
    used = [False] * m
    perm = [-1] * m
    lseen: dict[tuple[int, int], int] = {}
    rseen: dict[tuple[int, int], int] = {}
    out: list[tuple[int, ...]] = []
    nodes = 0
    complete = True

    def place(k: int, j: int) -> bool:
        x, y = pi[k]
        a, b = pj[j]
        if nondegenerate:
            if (x, a) in lseen or (y, b) in rseen:
                return False
            lseen[(x, a)] = k
            rseen[(y, b)] = k
        used[j] = True
        perm[k] = j
        left[k], right[k] = a, b
        return True

    def unplace(k: int, j: int) -> None:
        x, y = pi[k]
        a, b = pj[j]
        if nondegenerate:
            del lseen[(x, a)]
            del rseen[(y, b)]
        used[j] = False
        perm[k] = -1
        left[k] = right[k] = -1

    def go(k: int) -> None:
        nonlocal nodes, complete
        if k == m:
            out.append(tuple(perm))
            return
        for j in cands[k]:
            if used[j]:
                continue
            nodes += 1
            if nodes > budget or (nodes & 1023 == 0 and time.monotonic() > deadline):
                complete = False
                raise BudgetExceeded
            if not place(k, j):
                continue
            if kernels.braid_violation(n, pid_arr, left, right) < 0:
                go(k + 1)
            unplace(k, j)

    try:
        if first is None:
            go(0)
        else:
            nodes += 1
            if place(0, first) and kernels.braid_violation(n, pid_arr, left, right) < 0:
                go(1)
    except BudgetExceeded:
        pass
    return out, nodes, complete


def _transport(q: Quiver, perm: Sequence[int], phi: Mapping[str, str]) -> tuple[int, ...]:
    pairs, pidx = q.pairs, q.pair_index
    out = [0] * len(pairs)
    for k, (x, y) in enumerate(pairs):
        a, b = pairs[perm[k]]
        out[pidx[(phi[x], phi[y])]] = pidx[(phi[a], phi[b])]
    return tuple(out)


def canonical_perm(q: Quiver, perm: Sequence[int], autos: Iterable[Mapping[str, str]] | None = None) -> tuple[int, ...]:
    autos = automorphisms_over_base(q) if autos is None else autos
    return min(_transport(q, perm, phi) for phi in autos)


def enumerate_solutions(spec: SearchSpec | Quiver) -> SearchResult:
    """Solutions on a quiver, one per automorphism orbit when ``symmetry`` is set."""
    if isinstance(spec, Quiver):
        spec = SearchSpec(spec)
    q: Quiver = spec.target
    payload = _quiver_payload(q)
    deadline = time.monotonic() + spec.time_budget
    if not q.pairs:
        items, nodes, complete = [()], 1, True
    else:
        firsts = _candidates(q)[0]
        share = max(1, spec.node_budget // len(firsts))
        jobs = [(payload, j, share, spec.nondegenerate, deadline) for j in firsts]
        if spec.workers > 1:
            with ProcessPoolExecutor(max_workers=spec.workers) as ex:
                parts = list(ex.map(_run_job, jobs))
        else:
            parts = [_run_job(j) for j in jobs]
        items = [p for part in parts for p in part[0]]
        nodes = sum(part[1] for part in parts)
        complete = all(part[2] for part in parts)
    if spec.symmetry:
        autos = automorphisms_over_base(q)
        items = sorted({canonical_perm(q, p, autos) for p in items})
    else:
        items = sorted(set(items))
    sols = []
    for perm in items:
        s = check_solution(q, {pr: q.pairs[j] for pr, j in zip(q.pairs, perm)}).unwrap()
        if spec.nondegenerate:
            nd = check_nondegenerate(s)
            if not nd:
                continue
            s = nd.value
        sols.append(s)
    note = "" if complete else "budget exceeded; results are not exhaustive"
    return SearchResult(sols, complete, nodes, note)


def _run_job(job: tuple) -> tuple:
    return _subtree(*job)


# --- braided structures ---------------------------------------------------------------


def _left_actions(g: Groupoid) -> list[dict[Pair, str]]:
    """Left actions of G on its own arrows anchored at the source, by closure."""
    arrows = g.arrows
    out_ = g.quiver.out_arrows
    found: list[dict[Pair, str]] = []
    ident = {g.identity[v]: {h: h for h in out_[v]} for v in g.vertices}

    def close(act: dict[str, dict[str, str]]) -> dict[str, dict[str, str]] | None:
        act = dict(act)
        changed = True
        while changed:
            changed = False
            for f, k in g.pairs:
                if f in act and k in act:
                    fk = g.mul(f, k)
                    comp = {h: act[f][act[k][h]] for h in act[k]}
                    if fk in act:
                        if act[fk] != comp:
                            return None
                    else:
                        act[fk] = comp
                        changed = True
        return act

    def go(act: dict[str, dict[str, str]]) -> None:
        free = [f for f in arrows if f not in act]
        if not free:
            found.append({(f, h): act[f][h] for f, h in g.pairs})
            return
        f = free[0]
        dom, cod = out_[g.end(f)], out_[g.src(f)]
        for img in permutations(cod, len(dom)):
            act2 = close({**act, f: dict(zip(dom, img))})
            if act2 is not None:
                go(act2)

    start = close(ident)
    if start is not None:
        go(start)
    return found


def braided_key(b: BraidedGroupoid) -> tuple:
    g = b.groupoid
    idx = g.quiver.index
    return tuple(idx[b.lact[p]] for p in g.pairs)


def _transport_braided(b: BraidedGroupoid, phi: Mapping[str, str]) -> tuple:
    g = b.groupoid
    idx = g.quiver.index
    lact = {(phi[f], phi[h]): phi[v] for (f, h), v in b.lact.items()}
    return tuple(idx[lact[p]] for p in g.pairs)


def enumerate_braided_structures(g: Groupoid | SearchSpec, symmetry: bool = True) -> SearchResult:
    """All braided structures on ``g``, one per automorphism orbit when asked."""
    if isinstance(g, SearchSpec):
        symmetry = g.symmetry
        g = g.target
    out: dict[tuple, BraidedGroupoid] = {}
    autos = groupoid_automorphisms(g) if symmetry else [{a: a for a in g.arrows}]
    nodes = 0
    for lact in _left_actions(g):
        nodes += 1
        rep = braided_from_left_action(g, lact)
        if not rep:
            continue
        b: BraidedGroupoid = rep.value
        key = min(_transport_braided(b, phi) for phi in autos)
        if key == braided_key(b):
            out[key] = b
    return SearchResult([out[k] for k in sorted(out)], True, nodes)


# --- LYZ pairs ------------------------------------------------------------------------


def _rotations(mp: MatchedPair) -> list[dict[str, str]]:
    from itertools import product

    V, H = mp.V, mp.H
    choices = [H.hom(V.src(g), V.end(g)) for g in V.arrows]
    out = []
    for combo in product(*choices):
        k = dict(zip(V.arrows, combo))
        if check_rotation(mp, k):
            out.append(k)
    return out


def enumerate_lyz_pairs(mp: MatchedPair) -> SearchResult:
    rots = _rotations(mp)
    items = []
    for xi in rots:
        for eta in rots:
            if check_lyz_pair(mp, xi, eta):
                items.append(LYZPair(mp, xi, eta))
    return SearchResult(items, True, len(rots) ** 2)


def run(spec: SearchSpec) -> SearchResult:
    """Dispatch on the structure kind."""
    if spec.kind == "solution":
        return enumerate_solutions(spec)
    if spec.kind == "braided-groupoid":
        return enumerate_braided_structures(spec)
    if spec.kind == "lyz-pair":
        return enumerate_lyz_pairs(spec.target)
    from .linear import cyclic_cohomology

    h = cyclic_cohomology(spec.target, spec.order)
    return SearchResult(list(h.representatives), True, h.cocycles, f"{h.cocycles} cocycles, {h.coboundaries} coboundaries")


# --- classification -------------------------------------------------------------------


def solution_key(s: Solution) -> tuple:
    return (len(s.quiver.arrows), s.quiver.arrows, s.perm)


def classify(items: Sequence[Solution], mode: str = "iso", n_max: int = 3) -> list[list[Solution]]:
    """Partition into classes, each led by its least canonical encoding.

    ``iso`` merges solutions related by an arrow permutation over the base
    (so arrow names do not matter, only the arrow order of each quiver).
    ``u-equivalence`` merges solutions whose braid group actions agree up to
    level ``n_max``; this is a certificate up to that level only.
    """
    if mode not in ("iso", "u-equivalence"):
        raise ValueError(f"unknown mode {mode!r}")
    keys = [_iso_key(s) for s in items]
    parent = list(range(len(items)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(items)):
        for j in range(i):
            if find(i) == find(j):
                continue
            same = keys[i] == keys[j]
            if not same and mode == "u-equivalence":
                same = bool(solutions_equivalent(items[i], items[j], n_max))
            if same:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(items)):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        members.sort(key=lambda i: keys[i])
        out.append([items[i] for i in members])
    out.sort(key=lambda cls: _iso_key(cls[0]))
    return out


def _iso_key(s: Solution) -> tuple:
    q = s.quiver
    shape = (q.vertices, tuple((q.src[a], q.end[a]) for a in q.arrows))
    return (shape, canonical_perm(q, s.perm))
