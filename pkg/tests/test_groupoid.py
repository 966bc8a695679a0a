from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quiverbraid.groupoid import (
    GroupoidMorphism,
    action_as_morphism,
    adjoint_action,
    check_left_action,
    check_morphism,
    coarse_groupoid,
    cyclic_group,
    disjoint_union_groupoid,
    image,
    is_abelian_bundle,
    is_normal_bundle,
    is_subgroup_bundle,
    kernel,
    left_regular_action,
    morphism_as_action,
    product_groupoid,
    quotient_by_bundle,
    semidirect_product,
    structure_decomposition,
    subgroupoid,
    trivial_action,
    validate_groupoid,
)
from quiverbraid.words import subgroupoid_generated

from conftest import load


def test_z2_validates():
    z2 = load("z2")
    assert validate_groupoid(z2.quiver, z2.identity, z2.compose, z2.inverse)


def test_wrong_inverse_is_reported():
    z2 = load("z2")
    rep = validate_groupoid(z2.quiver, z2.identity, z2.compose, {"1": "1", "g": "1"})
    assert not rep
    assert "g" in rep.witness


@pytest.mark.parametrize("n,arrows", [(1, 1), (2, 4), (3, 9)])
def test_coarse_sizes(n, arrows):
    g = coarse_groupoid("pqr"[:n])
    assert len(g.arrows) == arrows
    assert len(set(g.identity.values())) == n
    assert validate_groupoid(g.quiver, g.identity, g.compose, g.inverse)


def test_structure_decomposition():
    (c,) = structure_decomposition(coarse_groupoid("pq"))
    assert len(c.group) == 1 and c.vertices == ("p", "q")
    (z,) = structure_decomposition(load("z2"))
    assert set(z.group) == {"1", "g"}
    g = disjoint_union_groupoid(load("z2"), coarse_groupoid("qr"))
    comps = structure_decomposition(g)
    assert sorted(len(c.group) for c in comps) == [1, 2]
    for c in comps:
        for f, img in c.forward.items():
            assert c.backward[img] == f
        assert len(c.forward) == len(c.group) * len(c.vertices) ** 2


def test_quotient_by_whole_bundle_is_the_relation():
    g = product_groupoid(load("z2"), coarse_groupoid("pq"))
    bundle = [f for f in g.arrows if g.src(f) == g.end(f)]
    q = quotient_by_bundle(g, bundle)
    assert len(q.groupoid.arrows) == 4
    assert all(len(c) == 2 for c in q.cosets.values())
    assert set(kernel(q.projection).arrows) == set(bundle)


def test_quotient_by_identities_is_identity():
    g = load("s3")
    q = quotient_by_bundle(g, g.identity.values())
    assert len(q.groupoid.arrows) == len(g.arrows)


def test_kernels():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    ident = GroupoidMorphism(z4, z4, {f: f for f in z4.arrows})
    assert kernel(ident).arrows == ("1",)
    triv = GroupoidMorphism(z2, cyclic_group(1), {f: "1" for f in z2.arrows})
    assert check_morphism(triv)
    assert set(kernel(triv).arrows) == {"1", "g"}
    mod2 = GroupoidMorphism(z4, z2, {"1": "1", "g": "g", "g2": "1", "g3": "g"})
    assert check_morphism(mod2)
    assert set(kernel(mod2).arrows) == {"1", "g2"}
    assert image(mod2) == frozenset(z2.arrows)


def test_broken_morphism_reported():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    bad = GroupoidMorphism(z4, z2, {"1": "1", "g": "g", "g2": "g", "g3": "g"})
    assert not check_morphism(bad)


def test_first_isomorphism_counts():
    # |Im T| per hom-set matches the quotient by the kernel
    z4, z2 = cyclic_group(4), cyclic_group(2)
    t = GroupoidMorphism(z4, z2, {"1": "1", "g": "g", "g2": "1", "g3": "g"})
    q = quotient_by_bundle(z4, kernel(t).arrows)
    assert len(q.groupoid.arrows) == len(image(t))


def test_normality():
    s3 = load("s3")
    assert is_normal_bundle(s3, subgroupoid_generated(s3, ["120"]).arrows)
    h = subgroupoid_generated(s3, ["102"]).arrows
    assert is_subgroup_bundle(s3, h)
    assert not is_normal_bundle(s3, h)


@given(st.sets(st.sampled_from(["012", "021", "102", "120", "201", "210"])),
       st.sets(st.sampled_from(["012", "021", "102", "120", "201", "210"])))
def test_intersection_of_subbundles(a, b):
    s3 = load("s3")
    ha = set(subgroupoid_generated(s3, a).arrows)
    hb = set(subgroupoid_generated(s3, b).arrows)
    assert is_subgroup_bundle(s3, ha & hb)
    if is_normal_bundle(s3, ha) and is_normal_bundle(s3, hb):
        assert is_normal_bundle(s3, ha & hb)


def test_trivial_action_is_identity_tables():
    g = coarse_groupoid("pq")
    act = trivial_action(g, ["x", "y"])
    assert check_left_action(act)
    for f, rho in action_as_morphism(act).items():
        assert (rho.src, rho.end) == (g.src(f), g.end(f))
        assert sorted(v.split(":")[1] for _, v in rho.table) == ["x", "y"]
        assert all(k.split(":")[1] == v.split(":")[1] for k, v in rho.table)


def test_regular_action_roundtrip():
    z2 = load("z2")
    act = left_regular_action(z2)
    assert check_left_action(act)
    rho = action_as_morphism(act)
    assert rho["g"].map == {"1": "g", "g": "1"}
    back = morphism_as_action(z2, act.fiber, rho)
    assert dict(back.table) == dict(act.table)


def test_klein_four():
    z2 = load("z2")
    n = load("z2")
    act = {(m, f): m for m in n.arrows for f in z2.arrows}
    sd = semidirect_product(z2, n, act)
    g = sd.groupoid
    assert len(g.arrows) == 4
    assert all(g.mul(f, f) == g.identity["p"] for f in g.arrows)
    assert is_abelian_bundle(g)[0]


def test_semidirect_degenerate_cases():
    z3 = cyclic_group(3)
    one = cyclic_group(1)
    sd = semidirect_product(z3, one, {("1", f): "1" for f in z3.arrows})
    assert len(sd.groupoid.arrows) == 3
    sd = semidirect_product(one, z3, {(m, "1"): m for m in z3.arrows})
    assert len(sd.groupoid.arrows) == 3


def test_semidirect_kernel_and_adjoint():
    # Z2 acting on Z3 by inversion gives S3
    z2, z3 = cyclic_group(2), cyclic_group(3)
    inv = {"1": "1", "g": "g2", "g2": "g"}
    act = {(m, f): (inv[m] if f == "g" else m) for m in z3.arrows for f in z2.arrows}
    sd = semidirect_product(z2, z3, act)
    g = sd.groupoid
    assert not is_abelian_bundle(g)[0]
    ker = kernel(sd.projection)
    assert {sd.pair_of[k] for k in ker.arrows} == {("1", m) for m in z3.arrows}
    adj = adjoint_action(g, ker.arrows)
    for (m, f), r in act.items():
        got = adj[(f"(1,{m})", sd.section[f])]
        assert sd.pair_of[got] == ("1", r)


def test_subgroupoid_generated_extremes():
    s3 = load("s3")
    assert set(subgroupoid_generated(s3, s3.arrows).arrows) == set(s3.arrows)
    assert subgroupoid_generated(s3, []).arrows == ("012",)
    assert set(subgroupoid_generated(load("z2"), ["g"]).arrows) == {"1", "g"}


def test_subgroupoid_rejects_non_closed():
    s3 = load("s3")
    with pytest.raises(Exception):
        subgroupoid(s3, ["012", "120"])


def test_product_groupoid_associative_table():
    g = product_groupoid(cyclic_group(2), coarse_groupoid("pq"))
    assert validate_groupoid(g.quiver, g.identity, g.compose, g.inverse)
    for f, h, k in product(g.arrows, repeat=3):
        if g.end(f) == g.src(h) and g.end(h) == g.src(k):
            assert g.mul(g.mul(f, h), k) == g.mul(f, g.mul(h, k))
