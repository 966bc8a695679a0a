import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverbraid.linear import (
    BimoduleMatrix,
    GradingError,
    NoInverseError,
    apply_coboundary,
    braid_equation,
    check_face_model,
    check_two_cocycle,
    coev,
    constant_cocycle,
    cyclic_cohomologous,
    cyclic_cohomology,
    dimension,
    dual,
    Face,
    ev,
    face_model_from_solution,
    flat_formula,
    identity,
    intertwines,
    linearize,
    lyz_bridge,
    qybe_matrix,
    rigidity_flat,
    sigma_q,
    solution_from_matrix,
    solution_matrix_from_face_model,
    star_triangular,
    tensor,
    tensor_bijection,
    tensor_maps,
    zigzag,
)
from quiverbraid.quiver import fiber_product
from quiverbraid.solution import Solution, check_nondegenerate, flip_solution, identity_solution

from conftest import load, solutions_on

FIXTURES = ("l1", "l2", "lb12", "lb22", "c2")
ONE = Fraction(1)


def random_cocycle(q, rng):
    return {xy: Fraction(rng.randint(1, 5), rng.randint(1, 5)) * rng.choice((1, -1)) for xy in q.pairs}


def random_u(q, rng):
    return {x: Fraction(rng.randint(1, 7), rng.randint(1, 7)) for x in q.arrows}


def test_single_arrow_has_one_block(k2):
    sp = linearize(k2)
    assert sp.blocks() == {("p", "q"): [(("e", "u"),)]}


def test_loop_dimension_is_two(l2):
    d = dimension(linearize(l2))
    assert list(d.entries.values()) == [Fraction(2)]


@pytest.mark.parametrize("name", ("l2", "k2", "c2", "lb12"))
def test_zigzag(name):
    assert zigzag(linearize(load(name)))


def test_tensor_rejects_nothing_but_degrees(l2):
    m = linearize(l2)
    assert len(tensor(m, m).labels) == 4
    assert len(tensor(m, dual(m)).labels) == 4


def test_grading_linter(k2):
    m = linearize(k2)
    u = tensor(m, dual(m))
    with pytest.raises(GradingError):
        BimoduleMatrix(m, u, {(u.labels[0], m.labels[0]): ONE})


def test_flip_linearizes_to_permutation(flip, l2):
    m = sigma_q(flip, constant_cocycle(l2))
    assert set(m.entries.values()) == {ONE}
    assert len(m.entries) == 4
    assert braid_equation(m, linearize(l2))


@pytest.mark.parametrize("name", FIXTURES)
def test_constant_cocycles_braid(name):
    q = load(name)
    for s in solutions_on(name):
        for lam in (ONE, Fraction(-3, 2)):
            assert braid_equation(sigma_q(s, constant_cocycle(q, lam)), linearize(q))


def test_every_cocycle_on_flip_is_a_cocycle(flip, l2):
    rng = random.Random(7)
    for _ in range(20):
        c = random_cocycle(l2, rng)
        assert check_two_cocycle(flip, c)
        assert braid_equation(sigma_q(flip, c), linearize(l2))


def test_non_cocycles_fail_with_matching_witness(l2):
    rng = random.Random(11)
    failures = 0
    for s in solutions_on("l2"):
        for _ in range(20):
            c = random_cocycle(l2, rng)
            a = check_two_cocycle(s, c)
            b = braid_equation(sigma_q(s, c), linearize(l2))
            assert bool(a) == bool(b)
            if not a:
                failures += 1
                assert a.witness == b.witness
    assert failures > 0


def test_unit_coboundary_is_trivial(flip, l2):
    c = constant_cocycle(l2)
    assert apply_coboundary(flip, c, {x: ONE for x in l2.arrows}) == c


@pytest.mark.parametrize("name", ("l2", "lb12"))
def test_coboundary_intertwines(name):
    q = load(name)
    rng = random.Random(3)
    for s in solutions_on(name):
        c = constant_cocycle(q)
        u = random_u(q, rng)
        ct = apply_coboundary(s, c, u)
        assert check_two_cocycle(s, ct)
        assert intertwines(s, c, ct, u)


def test_coboundary_transitive(l2):
    rng = random.Random(5)
    for s in solutions_on("l2"):
        c = constant_cocycle(l2)
        u1, u2 = random_u(l2, rng), random_u(l2, rng)
        c1 = apply_coboundary(s, c, u1)
        c2 = apply_coboundary(s, c1, u2)
        u12 = {x: u1[x] * u2[x] for x in l2.arrows}
        assert apply_coboundary(s, c, u12) == c2
        assert intertwines(s, c, c2, u12)


def test_literal_coboundary_breaks_intertwining(l2):
    rng = random.Random(9)
    broken = 0
    for s in solutions_on("l2"):
        c = constant_cocycle(l2)
        u = random_u(l2, rng)
        lit = apply_coboundary(s, c, u, literal=True)
        broken += not intertwines(s, c, lit, u)
    assert broken > 0


def test_cyclic_cohomology_counts(flip):
    h = cyclic_cohomology(flip, 2)
    assert h.cocycles == 16 and h.coboundaries == 1
    assert len(h.representatives) == 16


def test_cohomologous_pairs():
    s = next(t for t in solutions_on("l2") if t.table != flip_solution(load("l2")).table)
    h = cyclic_cohomology(s, 3)
    assert h.cocycles % h.coboundaries == 0
    reps = h.representatives
    pairs = s.quiver.pairs
    c0 = dict(zip(pairs, reps[0]))
    assert cyclic_cohomologous(s, 3, c0, c0) is not None
    if len(reps) > 1:
        assert cyclic_cohomologous(s, 3, c0, dict(zip(pairs, reps[1]))) is None


def test_flip_is_rigid(flip):
    r = rigidity_flat(flip)
    assert r.invertible
    assert r.flat.entries == flat_formula(flip).entries


def test_identity_is_not_rigid(l2):
    r = rigidity_flat(identity_solution(l2))
    assert not r.invertible
    assert r.ranks[("p", "p")][2] < 4


def test_single_arrow_fibers_rigid():
    assert rigidity_flat(flip_solution(load("lb11"))).invertible


@pytest.mark.parametrize("name", FIXTURES)
def test_rigidity_matches_nondegeneracy_enumerated(name):
    for s in solutions_on(name):
        assert rigidity_flat(s).invertible
        assert rigidity_flat(s).flat.entries == flat_formula(s).entries


def test_rigidity_matches_nondegeneracy_all_tables():
    from quiverbraid.solution import all_composable_tables, check_solution

    for name in ("l2", "lb12"):
        q = load(name)
        for t in all_composable_tables(q):
            rep = check_solution(q, t)
            if rep:
                assert rigidity_flat(rep.value).invertible == bool(check_nondegenerate(rep.value))


def test_face_model_of_flip(flip, l2):
    fm = face_model_from_solution(flip)
    assert len(fm.faces) == 4
    assert fm.is_vacant()
    assert solution_matrix_from_face_model(fm).entries == sigma_q(flip, constant_cocycle(l2)).entries
    assert star_triangular(fm)


@pytest.mark.parametrize("name", FIXTURES)
def test_face_model_roundtrip(name):
    q = load(name)
    for s in solutions_on(name):
        fm = face_model_from_solution(s)
        assert fm.is_vacant()
        assert solution_matrix_from_face_model(fm).entries == sigma_q(s, constant_cocycle(q)).entries
        assert star_triangular(fm)


def test_missing_box_is_not_thin(flip, l2):
    fm = face_model_from_solution(flip)
    faces = fm.faces[1:]
    rep = check_face_model(l2, faces, {f.name: fm.weight[f.name] for f in faces})
    assert not rep and rep.axiom == "xi-surjective"


def test_thin_but_not_vacant(flip, l2):
    fm = face_model_from_solution(flip)
    faces = fm.faces + (Face("[a|a]*", "a", "b", "a", "b"), Face("[b|b]*", "b", "a", "b", "a"))
    rep = check_face_model(l2, faces, {f.name: ONE for f in faces})
    assert rep
    thin = rep.value
    assert not thin.is_vacant()
    c = solution_matrix_from_face_model(thin)
    assert not c.is_invertible()
    assert c.block_ranks()[("p", "p")] == (4, 4, 3)
    rep = star_triangular(thin)
    assert not rep and rep.witness == ("a", "a", "b")


def test_duplicate_box_breaks_theta(flip, l2):
    fm = face_model_from_solution(flip)
    f0 = fm.faces[0]
    faces = fm.faces + (Face("copy", f0.top, f0.left, f0.right, f0.bottom),)
    rep = check_face_model(l2, faces, {f.name: ONE for f in faces})
    assert not rep and rep.axiom == "theta-injective"


@pytest.mark.parametrize("name", FIXTURES)
def test_qybe_matrix(name):
    for s in solutions_on(name):
        assert qybe_matrix(s)


def test_broken_sigma_fails_qybe_matrix(l2):
    from quiverbraid.solution import all_composable_tables, check_solution

    for t in all_composable_tables(l2):
        if not check_solution(l2, t):
            perm = tuple(l2.pair_index[t[xy]] for xy in l2.pairs)
            rep = qybe_matrix(Solution(l2, perm))
            assert not rep and rep.extra["block"] == ("p", "p")
            break


@pytest.mark.parametrize("name", ("l2", "c2"))
def test_lin_is_monoidal(name):
    q = load(name)
    bij = tensor_bijection(q, q)
    assert len(bij) == len(fiber_product(q, q).arrows)
    assert set(bij.values()) == {(("e", f"A:{x}"), ("e", f"B:{y}")) for x, y in q.pairs}
    assert len(tensor(linearize(q), linearize(q)).labels) == len(bij)


@pytest.mark.parametrize("name", FIXTURES)
def test_lyz_bridge(name):
    for s in solutions_on(name):
        assert lyz_bridge(s)


def test_no_matrix_inverse(flip, l2):
    with pytest.raises(NoInverseError):
        solution_from_matrix(sigma_q(flip, constant_cocycle(l2)))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=4, max_size=4))
def test_tensor_maps_compose(vals):
    l2 = load("l2")
    m = linearize(l2)
    d = {x: Fraction(v) for x, v in zip(l2.arrows, vals)}
    f = BimoduleMatrix(m, m, {(lab, lab): d[lab[0][1]] for lab in m.labels})
    ff = tensor_maps(f, f)
    assert tensor_maps(f @ f, f @ f).entries == (ff @ ff).entries
    assert (identity(m) @ f).entries == f.entries


def test_ev_coev_shapes(k2):
    m = linearize(k2)
    assert len(ev(m).entries) == 1
    assert len(coev(m).entries) == 1
