"""Acceptance criteria 1-9, one line each.

Run standalone with ``python3 tests/test_acceptance.py`` or through pytest
(``pytest tests/test_acceptance.py -s`` shows the verdict lines).
"""
import contextlib
import io as stdio
import os
import random
import sys
import tempfile
import time
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from quiverbraid import io
from quiverbraid.braided import from_cocycle_datum, is_symmetric, to_cocycle_datum
from quiverbraid.cli import main
from quiverbraid.groupoid import cyclic_group
from quiverbraid.linear import (
    braid_equation,
    check_two_cocycle,
    constant_cocycle,
    linearize,
    rigidity_flat,
    sigma_q,
)
from quiverbraid.matched import (
    braiding_from_lyz,
    check_lyz_pair,
    check_matched_pair,
    check_representation,
    tautological_pair,
)
from quiverbraid.quiver import Quiver
from quiverbraid.rack import (
    check_quiver_datum,
    check_rack_bundle,
    datum_from_solution,
    derived_solution,
    solution_from_quiver_datum,
    u_family,
)
from quiverbraid.search import enumerate_braided_structures, naive_is_solution
from quiverbraid.solution import (
    all_composable_tables,
    check_nondegenerate,
    check_solution,
    double_solution,
    mixed_sector_report,
)
from quiverbraid.structure import reduced_structure_groupoid, solution_from_structural_pair, structural_pair_key
from quiverbraid.words import all_normal_forms, w_process, words_up_to

from conftest import load, solutions_on

QUIVERS = ("l1", "l2", "k2", "lb11", "lb12", "lb22", "c2")
SOLVABLE = tuple(n for n in QUIVERS if n != "k2")
GROUPS = ("z2", "z3", "z4")
LYZ_GROUPS = ("z1", "z2", "z3", "z4", "s3")


class Failure(AssertionError):
    pass


def expect(cond, msg):
    if not cond:
        raise Failure(msg)


def group(name):
    return cyclic_group(1) if name == "z1" else load(name)


def l3():
    return Quiver.build(["p"], [(x, "p", "p") for x in "abc"])


# -- 1 ---------------------------------------------------------------------------------


def relabelings(q, rng):
    """Random degree-preserving permutation of the arrows."""
    classes = {}
    for a in q.arrows:
        classes.setdefault((q.src[a], q.end[a]), []).append(a)
    pi = {}
    for members in classes.values():
        shuffled = members[:]
        rng.shuffle(shuffled)
        pi.update(zip(members, shuffled))
    return pi


def random_tables(q, sols, rng, n):
    pairs = list(q.pairs)
    for i in range(n):
        kind = i % 4
        if kind == 0 or not pairs:
            yield {p: rng.choice(pairs) for p in pairs} if pairs else {}
        elif kind == 1:
            img = pairs[:]
            rng.shuffle(img)
            yield dict(zip(pairs, img))
        elif sols and kind == 2:
            s = rng.choice(sols)
            pi = relabelings(q, rng)
            yield {(pi[x], pi[y]): (pi[a], pi[b]) for (x, y), (a, b) in s.table.items()}
        elif sols:
            t = dict(rng.choice(sols).table)
            p1, p2 = rng.sample(pairs, 2) if len(pairs) > 1 else (pairs[0], pairs[0])
            t[p1], t[p2] = t[p2], t[p1]
            yield t
        else:
            img = pairs[:]
            rng.shuffle(img)
            yield dict(zip(pairs, img))


def criterion_1():
    rng = random.Random(1)
    total = valid = 0
    for name in QUIVERS:
        q = load(name)
        sols = solutions_on(name)
        tables = list(random_tables(q, sols, rng, 1400))
        tables += [s.table for s in sols]
        for t in tables:
            got = bool(check_solution(q, t))
            want = naive_is_solution(q, t)
            expect(got == want, f"{name}: checker {got}, oracle {want} on {t}")
            total += 1
            valid += got
    expect(total >= 9000, f"only {total} tables")
    return f"{total} tables, {valid} valid, full agreement"


# -- 2 ---------------------------------------------------------------------------------


def criterion_2():
    checked = 0
    for name in ("l2", "k2"):
        q = load(name)
        memo = {}
        for w in words_up_to(q, 8):
            nf = w_process(q, w).letters
            forms = all_normal_forms(w, memo)
            expect(forms == {nf}, f"{name}: {w.letters} reduces to {sorted(forms)}, stack gives {nf}")
            checked += 1
    return f"{checked} words, zero discrepancies"


# -- 3 ---------------------------------------------------------------------------------


def criterion_3():
    n = 0
    for name in SOLVABLE:
        for s in solutions_on(name):
            db = double_solution(s)
            expect(check_solution(db.quiver, db.table), f"{name}: double fails the braid equation")
            expect(check_nondegenerate(db), f"{name}: double is degenerate")
            for case, info in mixed_sector_report(db).items():
                expect(info["failures"] == 0, f"{name}: mixed sector {case} {info}")
            n += 1
    return f"{n} doubles verified"


# -- 4 ---------------------------------------------------------------------------------


def criterion_4():
    n = 0
    for name in SOLVABLE:
        keys = set()
        for s in solutions_on(name):
            sp = reduced_structure_groupoid(s)
            expect(solution_from_structural_pair(sp).table == s.table, f"{name}: roundtrip differs")
            keys.add(structural_pair_key(sp))
            n += 1
        expect(len(keys) == len(solutions_on(name)), f"{name}: structural pairs collide")
    return f"{n} solutions, roundtrip exact, pairs distinct"


# -- 5 ---------------------------------------------------------------------------------


def criterion_5():
    n = 0
    for name in GROUPS:
        for b in enumerate_braided_structures(load(name)).items:
            back = from_cocycle_datum(to_cocycle_datum(b))
            expect(back.lact == b.lact and back.ract == b.ract, f"{name}: datum roundtrip differs")
            cert = is_symmetric(b)
            squares = all(b.sigma(*b.sigma(f, g)) == (f, g) for f, g in b.groupoid.pairs)
            expect(cert.symmetric == squares == cert.abelian_bundle, f"{name}: symmetric verdicts disagree")
            n += 1
    return f"{n} braided structures"


# -- 6 ---------------------------------------------------------------------------------


def criterion_6():
    n = 0
    for name in SOLVABLE:
        for s in solutions_on(name):
            d = derived_solution(s)
            expect(check_rack_bundle(d.rack.quiver, d.rack.tri), f"{name}: derived rack fails")
            u = u_family(s, 3)
            expect(all(u.bijective.values()) and all(u.intertwines.values()), f"{name}: u_family fails")
            dat = datum_from_solution(s)
            expect(check_quiver_datum(dat.quiver, dat.rack, dat.phi, dat.mu), f"{name}: datum invalid")
            expect(solution_from_quiver_datum(dat).table == s.table, f"{name}: datum roundtrip differs")
            n += 1
    return f"{n} solutions"


# -- 7 ---------------------------------------------------------------------------------


def criterion_7():
    braided = 0
    for name in SOLVABLE:
        q = load(name)
        lin = linearize(q)
        for s in solutions_on(name):
            expect(braid_equation(sigma_q(s, constant_cocycle(q)), lin), f"{name}: q=1 fails")
            braided += 1

    tables = 0
    for name in ("l2", "k2", "lb12", "c2"):
        q = load(name)
        for t in all_composable_tables(q):
            rep = check_solution(q, t)
            if rep:
                verdict = rigidity_flat(rep.value).invertible
                expect(verdict == bool(check_nondegenerate(rep.value)), f"{name}: rigidity disagrees on {t}")
                tables += 1

    rng = random.Random(7)
    failures = 0
    for name in ("l2", "lb12"):
        q = load(name)
        lin = linearize(q)
        for s in solutions_on(name):
            for _ in range(10):
                c = {xy: Fraction(rng.randint(1, 5), rng.randint(1, 5)) * rng.choice((1, -1)) for xy in q.pairs}
                a = check_two_cocycle(s, c)
                b = braid_equation(sigma_q(s, c), lin)
                expect(bool(a) == bool(b), f"{name}: cocycle {bool(a)}, braid {bool(b)}")
                if not a:
                    expect(a.witness == b.witness, f"{name}: witnesses {a.witness} vs {b.witness}")
                    failures += 1
    expect(failures > 0, "no random non-cocycle was generated")
    return f"{braided} braided, {tables} tables rigidity-checked, {failures} non-cocycles matched"


# -- 8 ---------------------------------------------------------------------------------


def criterion_8():
    groups = 0
    for name in LYZ_GROUPS:
        for b in enumerate_braided_structures(group(name)).items:
            tp = tautological_pair(b)
            expect(check_matched_pair(tp.mp.V, tp.mp.H, tp.mp.lact, tp.mp.ract), f"{name}: matched pair fails")
            expect(check_lyz_pair(tp.mp, tp.lyz.xi, tp.lyz.eta), f"{name}: LYZ pair fails")
            g = b.groupoid
            r = check_representation(tp.mp, g.quiver, tp.mp.lact, {f: f for f in g.arrows}).unwrap()
            sig = {xy: b.sigma(*xy) for xy in g.pairs}
            expect(braiding_from_lyz(tp.lyz, r, r) == sig, f"{name}: regular braiding differs")
            groups += 1
    sols = 0
    for name in SOLVABLE:
        for s in solutions_on(name):
            sp = reduced_structure_groupoid(s)
            r = sp.representation
            expect(braiding_from_lyz(sp.taut.lyz, r, r) == s.table, f"{name}: braiding differs")
            sols += 1
    return f"{groups} braided groupoids, {sols} solutions"


# -- 9 ---------------------------------------------------------------------------------


def enumerate_output(path, workers):
    out = stdio.StringIO()
    with contextlib.redirect_stderr(stdio.StringIO()):
        code = main(["enumerate", "--workers", str(workers), path], out=out)
    expect(code == 0, f"{path}: exit {code}")
    return out.getvalue().encode()


def criterion_9():
    with tempfile.TemporaryDirectory() as tmp:
        docs = {"lb22": io.fixture("lb22"), "c2": io.fixture("c2"), "l3": io.to_document(l3())}
        paths = []
        for name, doc in docs.items():
            paths.append(os.path.join(tmp, name + ".json"))
            with open(paths[-1], "w", encoding="utf-8") as fh:
                fh.write(io.dumps(doc))
        lines = 0
        for path in paths:
            one, four = enumerate_output(path, 1), enumerate_output(path, 4)
            expect(one == four, f"{path}: outputs differ between 1 and 4 workers")
            lines += one.count(b"\n")
    return f"{len(paths)} inputs, {lines} lines identical"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def verdict(n):
    t = time.perf_counter()
    try:
        detail = CRITERIA[n - 1]()
        ok = True
    except Failure as e:
        detail, ok = str(e), False
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail} ({time.perf_counter() - t:.1f}s)"
    return ok, line


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, capsys):
    ok, line = verdict(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    start = time.perf_counter()
    results = [verdict(n) for n in range(1, 10)]
    for _, line in results:
        print(line)
    print(f"total {time.perf_counter() - start:.1f}s")
    sys.exit(0 if all(ok for ok, _ in results) else 1)
