"""Reduced words in the free groupoid on a quiver.

Letters are arrow ids of the double quiver: ``x`` or ``x^-1``. A word
is reduced when no letter is followed by its own inverse.
"""
from __future__ import annotations

from collections import deque
from typing import TYPE_CHECKING, Iterable, Mapping, NamedTuple

from .quiver import Quiver, inv_name, is_inverse_name

if TYPE_CHECKING:
    from .groupoid import Groupoid


class WordError(ValueError):
    pass


class Word(NamedTuple):
    src: str
    letters: tuple[str, ...]

    def __str__(self) -> str:
        return " ".join(self.letters) if self.letters else f"id({self.src})"

    @property
    def length(self) -> int:
        return len(self.letters)


def letter_src(q: Quiver, x: str) -> str:
    if is_inverse_name(x):
        return q.end[inv_name(x)]
    return q.src[x]


def letter_end(q: Quiver, x: str) -> str:
    if is_inverse_name(x):
        return q.src[inv_name(x)]
    return q.end[x]


def _check_letter(q: Quiver, x: str) -> None:
    base = inv_name(x) if is_inverse_name(x) else x
    if base not in q.src:
        raise WordError(f"unknown letter {x!r}")


def word_end(q: Quiver, w: Word) -> str:
    return letter_end(q, w.letters[-1]) if w.letters else w.src


def make_word(q: Quiver, letters: Iterable[str], src: str | None = None) -> Word:
    """Validate composability in DA."""
    letters = tuple(letters)
    for x in letters:
        _check_letter(q, x)
    if not letters:
        if src is None or src not in q.vindex:
            raise WordError("empty word needs a vertex of the base")
        return Word(src, ())
    for x, y in zip(letters, letters[1:]):
        if letter_end(q, x) != letter_src(q, y):
            raise WordError(f"letters {x!r}, {y!r} are not composable")
    s = letter_src(q, letters[0])
    if src is not None and src != s:
        raise WordError("source vertex does not match the first letter")
    return Word(s, letters)


def parse_word(q: Quiver, text: str, src: str | None = None) -> Word:
    """Parse ``"a b a^-1"``; an empty string needs ``src``."""
    return make_word(q, text.split(), src)


def is_reduced(w: Word) -> bool:
    return all(y != inv_name(x) for x, y in zip(w.letters, w.letters[1:]))


def w_process(q: Quiver, w: Word) -> Word:
    """Unique reduced word equivalent to w, by suffix cancellation on a stack."""
    w = make_word(q, w.letters, w.src)
    stack: list[str] = []
    for x in w.letters:
        if stack and stack[-1] == inv_name(x):
            stack.pop()
        else:
            stack.append(x)
    return Word(w.src, tuple(stack))


def naive_reduce(w: Word) -> Word:
    """Repeated left-to-right scan for adjacent inverse pairs. Oracle only."""
    letters = list(w.letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            if letters[i + 1] == inv_name(letters[i]):
                del letters[i : i + 2]
                changed = True
                break
    return Word(w.src, tuple(letters))


def all_normal_forms(w: Word, memo: dict | None = None) -> set[tuple[str, ...]]:
    """Endpoints of every maximal sequence of elementary reductions.

    Pass the same ``memo`` dict across calls to share work between words.
    """
    memo = {} if memo is None else memo

    def go(ls: tuple[str, ...]) -> frozenset[tuple[str, ...]]:
        if ls in memo:
            return memo[ls]
        out: set[tuple[str, ...]] = set()
        for i in range(len(ls) - 1):
            if ls[i + 1] == inv_name(ls[i]):
                out |= go(ls[:i] + ls[i + 2 :])
        res = frozenset(out) if out else frozenset([ls])
        memo[ls] = res
        return res

    return set(go(w.letters))


def word_multiply(q: Quiver, u: Word, v: Word) -> Word:
    if word_end(q, u) != v.src:
        raise WordError("words are not composable")
    return w_process(q, Word(u.src, u.letters + v.letters))


def word_inverse(q: Quiver, u: Word) -> Word:
    u = w_process(q, u)
    return Word(word_end(q, u), tuple(inv_name(x) for x in reversed(u.letters)))


def identity_word(v: str) -> Word:
    return Word(v, ())


def words_up_to(q: Quiver, n: int) -> list[Word]:
    """Every composable word over DA of length <= n (not necessarily reduced)."""
    letters = list(q.arrows) + [inv_name(a) for a in q.arrows]
    out_of: dict[str, list[str]] = {v: [] for v in q.vertices}
    for x in letters:
        out_of[letter_src(q, x)].append(x)
    out = []
    level = [Word(v, ()) for v in q.vertices]
    for k in range(n + 1):
        out.extend(level)
        if k < n:
            level = [Word(w.src, w.letters + (x,)) for w in level for x in out_of[word_end(q, w)]]
    return out


def evaluate_word(g: "Groupoid", nu: Mapping[str, str], w: Word) -> str:
    """Multiplicative extension of a quiver map A -> G to words over DA."""
    acc = g.identity[w.src]
    for x in w.letters:
        if is_inverse_name(x):
            f = g.inv(nu[inv_name(x)])
        else:
            f = nu[x]
        acc = g.mul(acc, f)
    return acc


def subgroupoid_generated(g: "Groupoid", s: Iterable[str]) -> "Groupoid":
    """Wide subgroupoid generated by s, by breadth-first saturation."""
    from .groupoid import subgroupoid

    gens = set(s)
    unknown = gens - set(g.arrows)
    if unknown:
        raise WordError(f"generators outside the groupoid: {sorted(unknown)}")
    gens |= {g.inv(f) for f in gens}
    seen = set(g.identity.values())
    frontier = deque(seen)
    while frontier:
        f = frontier.popleft()
        for x in gens:
            if g.end(f) == g.src(x):
                h = g.mul(f, x)
                if h not in seen:
                    seen.add(h)
                    frontier.append(h)
    return subgroupoid(g, seen)


def generating_set(g: "Groupoid") -> list[str]:
    """A small generating set: greedily add the least arrow not yet generated."""
    gens: list[str] = []
    have = set(g.identity.values())
    while len(have) < len(g.arrows):
        f = next(a for a in g.arrows if a not in have)
        gens.append(f)
        have = set(subgroupoid_generated(g, gens).arrows)
    return gens
