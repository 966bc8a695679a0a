"""Finite quivers over a fixed vertex set.

A quiver is a set of arrows with source and end maps into the vertex
set. Composable pairs (x, y) satisfy end(x) == src(y); the fiber
product collects them into a new quiver over the same base.

Opposite arrows are named by appending ``^-1``; taking the opposite twice
strips the suffix again, so ``opposite(opposite(A)) == A``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, NamedTuple

INV = "^-1"


class QuiverError(ValueError):
    pass


def inv_name(x: str) -> str:
    """Name of the formal inverse of arrow ``x``."""
    return x[: -len(INV)] if x.endswith(INV) else x + INV


def is_inverse_name(x: str) -> bool:
    return x.endswith(INV)


def pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


@dataclass(frozen=True, eq=False)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[str, ...]
    src: Mapping[str, str]
    end: Mapping[str, str]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise QuiverError("vertex set must be non-empty")
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex identifiers")
        if len(set(self.arrows)) != len(self.arrows):
            raise QuiverError("duplicate arrow identifiers")
        vs = set(self.vertices)
        for a in self.arrows:
            if a not in self.src or a not in self.end:
                raise QuiverError(f"arrow {a!r} lacks source or end")
            if self.src[a] not in vs or self.end[a] not in vs:
                raise QuiverError(f"arrow {a!r} has an endpoint outside the base")
        object.__setattr__(self, "src", {a: self.src[a] for a in self.arrows})
        object.__setattr__(self, "end", {a: self.end[a] for a in self.arrows})

    @classmethod
    def build(cls, vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]]) -> "Quiver":
        """Build from ``(id, src, end)`` triples."""
        arrows = list(arrows)
        return cls(
            tuple(vertices),
            tuple(a for a, _, _ in arrows),
            {a: s for a, s, _ in arrows},
            {a: e for a, _, e in arrows},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.arrows == other.arrows
            and self.src == other.src
            and self.end == other.end
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    @cached_property
    def index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.arrows)}

    @cached_property
    def vindex(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out_arrows(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[self.src[a]].append(a)
        return {v: tuple(xs) for v, xs in out.items()}

    @cached_property
    def in_arrows(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[self.end[a]].append(a)
        return {v: tuple(xs) for v, xs in out.items()}

    def hom(self, p: str, q: str) -> tuple[str, ...]:
        return tuple(a for a in self.out_arrows[p] if self.end[a] == q)

    def composable(self, a: str, b: str) -> bool:
        return self.end[a] == self.src[b]

    @cached_property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        """Composable pairs in lexicographic arrow order."""
        return tuple((a, b) for a in self.arrows for b in self.out_arrows[self.end[a]])

    @cached_property
    def pair_index(self) -> dict[tuple[str, str], int]:
        return {p: i for i, p in enumerate(self.pairs)}

    def triples(self) -> Iterable[tuple[str, str, str]]:
        for a, b in self.pairs:
            for c in self.out_arrows[self.end[b]]:
                yield a, b, c

    def is_loop_bundle(self) -> bool:
        return all(self.src[a] == self.end[a] for a in self.arrows)

    def restrict(self, arrows: Iterable[str]) -> "Quiver":
        keep = set(arrows)
        return Quiver.build(
            self.vertices, ((a, self.src[a], self.end[a]) for a in self.arrows if a in keep)
        )

    def relabel(self, mapping: Mapping[str, str]) -> "Quiver":
        return Quiver.build(
            self.vertices, ((mapping[a], self.src[a], self.end[a]) for a in self.arrows)
        )


def unit_quiver(vertices: Iterable[str]) -> Quiver:
    """The unit (P, P, id, id); arrow ``id(P)`` sits at vertex P."""
    vs = tuple(vertices)
    return Quiver.build(vs, ((f"id({v})", v, v) for v in vs))


def _same_base(a: Quiver, b: Quiver) -> None:
    if a.vertices != b.vertices:
        raise QuiverError("quivers live over different vertex sets")


def fiber_product(a: Quiver, b: Quiver) -> Quiver:
    """A (x) B: composable pairs (x, y) with end(x) == src(y)."""
    _same_base(a, b)
    arrows = []
    for x in a.arrows:
        for y in b.out_arrows[a.end[x]]:
            arrows.append((pair_name(x, y), a.src[x], b.end[y]))
    return Quiver.build(a.vertices, arrows)


def fiber_product_pairs(a: Quiver, b: Quiver) -> list[tuple[str, str]]:
    _same_base(a, b)
    return [(x, y) for x in a.arrows for y in b.out_arrows[a.end[x]]]


def opposite(a: Quiver) -> Quiver:
    return Quiver.build(a.vertices, ((inv_name(x), a.end[x], a.src[x]) for x in a.arrows))


def disjoint_union(a: Quiver, b: Quiver) -> Quiver:
    _same_base(a, b)
    clash = set(a.arrows) & set(b.arrows)
    if clash:
        raise QuiverError(f"arrow ids collide: {sorted(clash)}")
    arrows = [(x, a.src[x], a.end[x]) for x in a.arrows]
    arrows += [(x, b.src[x], b.end[x]) for x in b.arrows]
    return Quiver.build(a.vertices, arrows)


def double(a: Quiver) -> Quiver:
    """DA = A disjoint-union A^op."""
    return disjoint_union(a, opposite(a))


def end_bundle(a: Quiver, tag: str = "bar") -> Quiver:
    """The loop bundle A^e: one loop bar(x) at end(x) per arrow x."""
    return Quiver.build(a.vertices, ((f"{tag}({x})", a.end[x], a.end[x]) for x in a.arrows))


class Path(NamedTuple):
    """A path: its source vertex and a sequence of composable arrows."""

    src: str
    arrows: tuple[str, ...]

    def end(self, q: Quiver) -> str:
        return q.end[self.arrows[-1]] if self.arrows else self.src

    @property
    def length(self) -> int:
        return len(self.arrows)

    def concat(self, other: "Path", q: Quiver) -> "Path":
        if self.end(q) != other.src:
            raise QuiverError("paths are not composable")
        return Path(self.src, self.arrows + other.arrows)


def path_of(q: Quiver, arrows: Iterable[str], src: str | None = None) -> Path:
    arrows = tuple(arrows)
    if not arrows:
        if src is None:
            raise QuiverError("empty path needs a source vertex")
        return Path(src, ())
    for x, y in zip(arrows, arrows[1:]):
        if q.end[x] != q.src[y]:
            raise QuiverError(f"arrows {x!r}, {y!r} are not composable")
    if src is not None and src != q.src[arrows[0]]:
        raise QuiverError("source vertex does not match the first arrow")
    return Path(q.src[arrows[0]], arrows)


def paths_of_length(q: Quiver, n: int) -> list[Path]:
    if n < 0:
        raise QuiverError("length must be non-negative")
    level = [Path(v, ()) for v in q.vertices]
    for _ in range(n):
        level = [Path(p.src, p.arrows + (x,)) for p in level for x in q.out_arrows[p.end(q)]]
    return level


def paths_up_to(q: Quiver, n: int) -> list[Path]:
    """All paths of length <= n, by length, then in arrow order."""
    if n < 0:
        raise QuiverError("length must be non-negative")
    out = []
    level = [Path(v, ()) for v in q.vertices]
    for k in range(n + 1):
        out.extend(level)
        if k < n:
            level = [Path(p.src, p.arrows + (x,)) for p in level for x in q.out_arrows[p.end(q)]]
    return out


def connected_components(q: Quiver) -> list[tuple[str, ...]]:
    """Classes of the relation generated by arrows of DA, led by their least vertex."""
    parent = {v: v for v in q.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a in q.arrows:
        r1, r2 = find(q.src[a]), find(q.end[a])
        if r1 != r2:
            if q.vindex[r1] < q.vindex[r2]:
                parent[r2] = r1
            else:
                parent[r1] = r2
    classes: dict[str, list[str]] = {}
    for v in q.vertices:
        classes.setdefault(find(v), []).append(v)
    return sorted((tuple(c) for c in classes.values()), key=lambda c: q.vindex[c[0]])


def weak_symmetry_tau(a: Quiver, b: Quiver, pair: tuple[str, str]) -> tuple[str, str]:
    """tau(x, y) = (y, x), from A (x)_(e,s) B to B (x)_(s,e) A."""
    x, y = pair
    if a.end[x] != b.src[y]:
        raise QuiverError(f"pair {pair} is not composable")
    return (y, x)


def weak_symmetry_mu(a: Quiver, b: Quiver, pair: tuple[str, str]) -> tuple[str, str]:
    """mu(y, x) = (y^-1, x^-1) for (y, x) in B (x)_(s,e) A."""
    y, x = pair
    if b.src[y] != a.end[x]:
        raise QuiverError(f"pair {pair} is not composable")
    return (inv_name(y), inv_name(x))


def weak_symmetry_theta(a: Quiver, b: Quiver, pair: tuple[str, str]) -> tuple[str, str]:
    """theta(y^-1, x^-1) = (x, y) for x in A, y in B with end(x) == src(y)."""
    yi, xi = pair
    y, x = inv_name(yi), inv_name(xi)
    if not (is_inverse_name(yi) and is_inverse_name(xi)):
        raise QuiverError(f"pair {pair} is not a pair of opposite arrows")
    if x not in a.src or y not in b.src or a.end[x] != b.src[y]:
        raise QuiverError(f"pair {pair} is not composable")
    return (x, y)


def automorphisms_over_base(q: Quiver) -> list[dict[str, str]]:
    """Arrow permutations fixing every vertex and preserving source and end."""
    blocks: dict[tuple[str, str], list[str]] = {}
    for a in q.arrows:
        blocks.setdefault((q.src[a], q.end[a]), []).append(a)
    from itertools import permutations

    choices = [[(blk, perm) for perm in permutations(blk)] for blk in blocks.values()]
    out = []
    for combo in product(*choices):
        m = {}
        for blk, perm in combo:
            m.update(zip(blk, perm))
        out.append(m)
    return out
