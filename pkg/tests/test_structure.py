import pytest

from quiverbraid.braided import braided_from_left_action, check_braided_groupoid, flip_braided
from quiverbraid.groupoid import symmetric_group_3
from quiverbraid.rack import conjugation_rack, rack_solution
from quiverbraid.solution import flip_solution
from quiverbraid.structure import (
    check_path_compatibility,
    check_structural_pair,
    induced_morphism,
    reduced_structure_groupoid,
    solution_from_structural_pair,
    structural_pair_key,
    word_element,
)

from conftest import load, solutions_on

FIXTURES = ("l1", "l2", "lb11", "lb12", "lb22", "c2")


def _conj_s3():
    s3 = symmetric_group_3()
    conj = {(f, g): s3.mul_all([f, g, s3.inv(f)]) for f, g in s3.pairs}
    return s3, braided_from_left_action(s3, conj).value


def test_flip_collapses_to_trivial_group(flip):
    sp = reduced_structure_groupoid(flip)
    assert sp.groupoid.arrows == ("[id(p)]",)
    assert set(sp.grading.values()) == {"[id(p)]"}
    assert not sp.faithful


def test_single_loop_gives_trivial_groupoid():
    sp = reduced_structure_groupoid(flip_solution(load("l1")))
    assert len(sp.groupoid.arrows) == 1


def test_conjugation_rack_matches_permutation_image():
    s3, _ = _conj_s3()
    s = rack_solution(conjugation_rack(s3))
    sp = reduced_structure_groupoid(s)
    # group generated by the translations y -> x▷y
    gens = {tuple(s.sigma(x, y)[0] for y in s3.arrows) for x in s3.arrows}
    idx = {y: i for i, y in enumerate(s3.arrows)}
    group = {tuple(range(len(s3.arrows)))}
    frontier = set(group)
    while frontier:
        new = set()
        for p in frontier:
            for g in gens:
                c = tuple(p[idx[g[i]]] for i in range(len(g)))
                if c not in group:
                    new.add(c)
        group |= new
        frontier = new
    assert len(sp.groupoid.arrows) == len(group) == 6
    assert sp.faithful


@pytest.mark.parametrize("name", FIXTURES)
def test_pipeline_passes_checks(name):
    for s in solutions_on(name):
        sp = reduced_structure_groupoid(s)
        b = sp.braided
        assert check_braided_groupoid(b.groupoid, b.lact, b.ract)
        raw = {(g, h, x): v for (n, x), v in sp.representation.action.items()
               for g, h in [sp.taut.diagonal.pair_of[n]]}
        assert check_structural_pair(b, sp.quiver, sp.grading, raw)
        assert check_path_compatibility(sp, s, 2)


@pytest.mark.parametrize("name", FIXTURES)
def test_roundtrip_and_distinct_pairs(name):
    keys = set()
    for s in solutions_on(name):
        sp = reduced_structure_groupoid(s)
        assert solution_from_structural_pair(sp).table == s.table
        keys.add(structural_pair_key(sp))
    assert len(keys) == len(solutions_on(name))


def test_unreduced_proxy_fails_injectivity(l2):
    z2 = load("z2")
    b = flip_braided(z2).value
    act = {(g, h, x): x for g in z2.arrows for h in z2.arrows for x in l2.arrows}
    rep = check_structural_pair(b, l2, {"a": "g", "b": "g"}, act)
    assert not rep and rep.axiom == "nabla-injective"
    rep = check_structural_pair(b, l2, {"a": "1", "b": "1"}, act)
    assert not rep and rep.axiom == "generation"


def test_universal_property_on_conjugation():
    s3, target = _conj_s3()
    s = rack_solution(conjugation_rack(s3))
    sp = reduced_structure_groupoid(s)
    rep = induced_morphism(sp, target, {x: x for x in s.quiver.arrows})
    assert rep
    for x in s.quiver.arrows:
        assert rep.value.amap[sp.grading[x]] == x


def test_universal_property_needs_the_unreduced_groupoid(flip):
    # flip → flip on Z2 sending both loops to g does not factor through the trivial quotient
    z2 = load("z2")
    rep = induced_morphism(reduced_structure_groupoid(flip), flip_braided(z2).value, {"a": "g", "b": "g"})
    assert not rep and rep.axiom == "factor"


def test_word_element_is_multiplicative():
    s3, _ = _conj_s3()
    sp = reduced_structure_groupoid(rack_solution(conjugation_rack(s3)))
    g = sp.groupoid
    for x in ("102", "021"):
        for y in ("120", "210"):
            assert word_element(sp, [x, y]) == g.mul(sp.grading[x], sp.grading[y])
