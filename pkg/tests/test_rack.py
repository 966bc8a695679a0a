import pytest
from hypothesis import given
from hypothesis import strategies as st

from quiverbraid.groupoid import AutElement, cyclic_group, symmetric_group_3
from quiverbraid.rack import (
    check_braided_morphism,
    check_quiver_datum,
    check_rack_bundle,
    conjugation_rack,
    data_equivalent,
    datum_from_solution,
    derived_solution,
    is_rack_morphism,
    rack_shape_solution,
    rack_solution,
    solution_from_quiver_datum,
    trivial_rack,
    u_family,
    unbar,
)
from quiverbraid.solution import Solution, check_solution, flip_solution, solutions_equivalent
from quiverbraid.structure import reduced_structure_groupoid

from conftest import load, solutions_on

FIXTURES = ("l1", "l2", "lb12", "lb22", "c2")


def _plain(rb):
    return {(unbar(x), unbar(y)): unbar(v) for (x, y), v in rb.tri.items()}


def test_trivial_rack_on_l2(l2):
    rb = trivial_rack(l2)
    assert check_rack_bundle(rb.quiver, rb.tri)
    assert rack_solution(rb).table == flip_solution(l2).table


def test_conjugation_racks():
    z2 = conjugation_rack(cyclic_group(2))
    assert all(v == y for (x, y), v in z2.tri.items())
    s3 = conjugation_rack(symmetric_group_3())
    assert check_rack_bundle(s3.quiver, s3.tri)
    assert any(v != y for (x, y), v in s3.tri.items())
    s = rack_solution(s3)
    assert check_solution(s.quiver, s.table)


def test_non_bijective_translation_is_degenerate(l2):
    tri = {(x, y): "a" for x in l2.arrows for y in l2.arrows}
    assert not check_rack_bundle(l2, tri)
    assert not rack_shape_solution(l2, tri)


@given(st.lists(st.sampled_from(["a", "b"]), min_size=4, max_size=4))
def test_rack_iff_shape_solution(vals):
    l2 = load("l2")
    tri = dict(zip(l2.pairs, vals))
    assert bool(check_rack_bundle(l2, tri)) == bool(rack_shape_solution(l2, tri))


def test_rack_shape_rejected_off_loop_bundles():
    c2 = load("c2")
    assert not rack_shape_solution(c2, {(x, y): x for x, y in c2.pairs})


def test_derived_of_flip_is_trivial(flip):
    d = derived_solution(flip)
    assert all(v == y for (x, y), v in d.rack.tri.items())


@pytest.mark.parametrize("group", [cyclic_group(3), symmetric_group_3()])
def test_derived_of_rack_solution_is_the_rack(group):
    rb = conjugation_rack(group)
    assert _plain(derived_solution(rack_solution(rb)).rack) == dict(rb.tri)


@pytest.mark.parametrize("name", FIXTURES)
def test_derived_rack_and_u_family(name):
    for s in solutions_on(name):
        d = derived_solution(s)
        assert check_rack_bundle(d.rack.quiver, d.rack.tri)
        for y, a in d.phi.items():
            assert is_rack_morphism(d.rack, a)
        u = u_family(s, 3)
        assert all(u.bijective.values()) and all(u.intertwines.values())


def test_u_squared_on_flip(flip):
    u = u_family(flip, 2)
    assert all(v == (f"bar({x})", f"bar({y})") for (x, y), v in u.maps[2].items())


def test_u_family_on_conjugation_rack_n3():
    u = u_family(rack_solution(conjugation_rack(symmetric_group_3())), 3)
    assert u.intertwines[3] and u.bijective[3]


@pytest.mark.parametrize("name", ("l2", "lb12"))
def test_solution_equivalent_to_its_rack_solution(name):
    for s in solutions_on(name):
        c = rack_solution(derived_solution(s).rack)
        assert solutions_equivalent(s, c, 3).found


@pytest.mark.parametrize("name", FIXTURES)
def test_datum_roundtrip(name):
    for s in solutions_on(name):
        d = datum_from_solution(s)
        assert check_quiver_datum(d.quiver, d.rack, d.phi, d.mu)
        assert solution_from_quiver_datum(d).table == s.table
        assert data_equivalent(d, datum_from_solution(solution_from_quiver_datum(d)))


def test_flip_datum_is_trivial(flip):
    d = datum_from_solution(flip)
    assert all(v == y for (x, y), v in d.rack.tri.items())
    assert all(a.map == {e: e for e in a.map} for a in d.phi.values())


def test_mutated_datum_rejected(flip):
    d = datum_from_solution(flip)
    phi = dict(d.phi)
    phi["a"] = AutElement.of("p", {"bar(a)": "bar(b)", "bar(b)": "bar(a)"}, "p")
    rep = check_quiver_datum(d.quiver, d.rack, phi, d.mu)
    assert not rep and rep.axiom == "cocycle"
    assert rep.witness == ("a", "a")


def test_braided_morphisms(flip):
    assert check_braided_morphism({"a": "a", "b": "b"}, flip, flip)
    assert check_braided_morphism({"a": "b", "b": "a"}, flip, flip)
    s = solutions_on("l2")
    nonflip = [t for t in s if t.table != flip.table]
    assert not all(check_braided_morphism({"a": "a", "b": "b"}, flip, t) for t in nonflip)


def test_grading_is_a_braided_morphism():
    s = rack_solution(conjugation_rack(symmetric_group_3()))
    sp = reduced_structure_groupoid(s)
    from quiverbraid.braided import induced_solution

    target = induced_solution(sp.braided)
    assert check_braided_morphism(dict(sp.grading), Solution(s.quiver, s.perm), target)
