from hypothesis import given
from hypothesis import strategies as st

from quiverbraid.groupoid import coarse_groupoid
from quiverbraid.quiver import Quiver, double
from quiverbraid.words import (
    Word,
    all_normal_forms,
    evaluate_word,
    identity_word,
    is_reduced,
    naive_reduce,
    parse_word,
    w_process,
    word_inverse,
    word_multiply,
    words_up_to,
)

from conftest import load


def test_cancellation_to_identity(k2):
    w = w_process(k2, parse_word(k2, "u u^-1"))
    assert w == identity_word("p")


def test_single_cancellation(l2):
    assert w_process(l2, parse_word(l2, "a b b^-1 a")).letters == ("a", "a")


def test_multiply_and_inverse(l2):
    ab = parse_word(l2, "a b")
    assert word_multiply(l2, ab, parse_word(l2, "b^-1")).letters == ("a",)
    assert word_inverse(l2, ab).letters == ("b^-1", "a^-1")
    assert word_multiply(l2, ab, word_inverse(l2, ab)) == identity_word("p")


def test_evaluate_empty_word():
    g = load("z2")
    assert evaluate_word(g, {"a": "g"}, identity_word("p")) == "1"


def test_single_arrow_words_land_in_pairs(k2):
    g = coarse_groupoid("pq")
    for w in words_up_to(k2, 5):
        f = evaluate_word(g, {"u": "(p,q)"}, w)
        end = w.src if not w.letters else ("q" if w.letters[-1] == "u" else "p")
        assert f == f"({w.src},{end})"


def test_parallel_arrows_generate_loops():
    n = 3
    q = Quiver.build(["p", "q"], [(f"u{i}", "p", "q") for i in range(1, n + 1)])
    gens = [parse_word(q, f"u1 u{i}^-1") for i in range(2, n + 1)]
    gens += [word_inverse(q, g) for g in gens]
    reached = {identity_word("p")}
    frontier = set(reached)
    for _ in range(4):
        frontier = {word_multiply(q, w, g) for w in frontier for g in gens}
        reached |= frontier
    loops = [w for w in words_up_to(q, 4) if w.src == "p" and is_reduced(w)
             and (not w.letters or w.letters[-1].endswith("^-1"))]
    assert loops and all(w in reached for w in loops)


def test_church_rosser_exhaustive_small(l2, k2):
    for q in (double(l2), double(k2)):
        for w in words_up_to(q, 5):
            assert all_normal_forms(w) == {w_process(q, w).letters or ()}


@st.composite
def l2_words(draw, max_len=12):
    letters = draw(st.lists(st.sampled_from(["a", "b", "a^-1", "b^-1"]), max_size=max_len))
    return Word("p", tuple(letters))


@given(l2_words())
def test_free_group_degeneration(w):
    l2 = load("l2")
    assert w_process(l2, w).letters == naive_reduce(w).letters


@given(l2_words(), l2_words())
def test_multiply_matches_concatenation(u, v):
    l2 = load("l2")
    assert word_multiply(l2, u, v) == w_process(l2, Word("p", u.letters + v.letters))


@given(l2_words())
def test_reduction_idempotent(w):
    l2 = load("l2")
    r = w_process(l2, w)
    assert is_reduced(r)
    assert w_process(l2, r) == r
