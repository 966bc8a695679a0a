import pytest

from quiverbraid.braided import (
    antipode_solution,
    braided_from_left_action,
    check_antipode_identities,
    check_braided_groupoid,
    flip_braided,
    from_cocycle_datum,
    gamma_bundles,
    in_restricted_product,
    induced_solution,
    is_symmetric,
    quotient_braided,
    restricted_product_braided,
    to_cocycle_datum,
)
from quiverbraid.groupoid import coarse_groupoid, cyclic_group, product_groupoid
from quiverbraid.matched import from_exact_factorization, trivial_matched_pair
from quiverbraid.search import enumerate_braided_structures
from quiverbraid.solution import Solution, check_nondegenerate, check_solution

from conftest import load

GROUPS = ("z2", "z3", "z4", "s3")


def braided_on(name):
    return enumerate_braided_structures(load(name)).items


def test_flip_on_z2_is_braided():
    z2 = load("z2")
    rep = check_braided_groupoid(z2, {(f, g): g for f, g in z2.pairs}, {(f, g): f for f, g in z2.pairs})
    assert rep


def test_non_unital_left_action_rejected():
    z2 = load("z2")
    lact = {(f, g): g for f, g in z2.pairs}
    lact[("1", "g")] = "1"
    assert not check_braided_groupoid(z2, lact, {(f, g): f for f, g in z2.pairs})


def test_trivial_left_action_gives_flip():
    for g in (load("z2"), load("z4")):
        b = braided_from_left_action(g, {(f, h): h for f, h in g.pairs}).value
        assert all(b.ract[(f, h)] == f for f, h in g.pairs)


def test_s3_conjugation_is_braided():
    s3 = load("s3")
    conj = {(f, g): s3.mul_all([f, g, s3.inv(f)]) for f, g in s3.pairs}
    rep = braided_from_left_action(s3, conj)
    assert rep
    # x↼y = (x⇀y)^-1 x y
    for f, g in s3.pairs:
        assert rep.value.ract[(f, g)] == s3.mul_all([s3.inv(conj[(f, g)]), f, g])


@pytest.mark.parametrize("name", GROUPS)
def test_induced_solutions_are_nondegenerate(name):
    for b in braided_on(name):
        s = induced_solution(b)
        assert check_solution(s.quiver, s.table)
        assert check_nondegenerate(Solution(s.quiver, s.perm))


@pytest.mark.parametrize("name", GROUPS)
def test_antipode(name):
    for b in braided_on(name):
        a = antipode_solution(b)
        assert check_braided_groupoid(a.groupoid, a.lact, a.ract)
        aa = antipode_solution(a)
        assert aa.lact == b.lact and aa.ract == b.ract
        assert check_antipode_identities(b)


def test_antipode_of_flip_is_flip():
    b = flip_braided(load("z2")).value
    a = antipode_solution(b)
    assert a.lact == b.lact and a.ract == b.ract


@pytest.mark.parametrize("name", GROUPS)
def test_cocycle_datum_roundtrip(name):
    for b in braided_on(name):
        d = to_cocycle_datum(b)
        back = from_cocycle_datum(d)
        assert back.lact == b.lact and back.ract == b.ract
        cert = is_symmetric(b)
        squares = all(b.sigma(*b.sigma(f, g)) == (f, g) for f, g in b.groupoid.pairs)
        assert cert.symmetric == squares == cert.abelian_bundle


def test_trivial_group_datum():
    b = flip_braided(cyclic_group(1)).value
    d = to_cocycle_datum(b)
    assert len(d.bundle.arrows) == 1


def test_z3_flip_is_symmetric():
    cert = is_symmetric(flip_braided(load("z3")).value)
    assert cert.symmetric and cert.abelian_bundle


def test_nonabelian_bundle_found_on_s3():
    certs = [is_symmetric(b) for b in braided_on("s3")]
    assert any(not c.abelian_bundle and not c.symmetric for c in certs)


def test_gamma_of_flip_is_everything():
    z4 = load("z4")
    g = gamma_bundles(flip_braided(z4).value)
    assert g.both == frozenset(z4.arrows)
    assert gamma_bundles(flip_braided(cyclic_group(1)).value).both == frozenset({"1"})


def test_quotient_of_flip_z4():
    b = quotient_braided(flip_braided(load("z4")).value, ["1", "g2"])
    assert len(b.groupoid.arrows) == 2
    assert all(b.sigma(f, g) == (g, f) for f, g in b.groupoid.pairs)


def test_quotient_outside_gamma_rejected():
    s3 = load("s3")
    conj = {(f, g): s3.mul_all([f, g, s3.inv(f)]) for f, g in s3.pairs}
    b = braided_from_left_action(s3, conj).value
    gam = gamma_bundles(b).both
    outside = [f for f in s3.arrows if f not in gam]
    assert outside
    with pytest.raises(ValueError):
        quotient_braided(b, ["012", outside[0]])


def test_restricted_product_of_trivial_pair():
    z2 = load("z2")
    rp = restricted_product_braided(trivial_matched_pair(z2, z2))
    assert len(rp.braided.groupoid.arrows) == 4
    one = cyclic_group(1)
    assert len(restricted_product_braided(trivial_matched_pair(one, one)).braided.groupoid.arrows) == 1


def test_restricted_product_over_coarse_keeps_diagonal_pairs():
    d = product_groupoid(cyclic_group(2), coarse_groupoid("pq"))
    v = ["1.(p,p)", "1.(q,q)", "1.(p,q)", "1.(q,p)"]
    h = ["1.(p,p)", "1.(q,q)", "g.(p,q)", "g.(q,p)"]
    mp = from_exact_factorization(d, v, h)
    rp = restricted_product_braided(mp)
    assert len(rp.braided.groupoid.arrows) == 4
    for g, x in rp.pair_of.values():
        assert in_restricted_product(mp, g, x)
    assert not in_restricted_product(mp, "1.(p,q)", "1.(p,p)")
