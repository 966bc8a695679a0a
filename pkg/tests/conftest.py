import functools

import pytest

from quiverbraid import io
from quiverbraid.search import enumerate_solutions


def load(name):
    rep = io.build(io.fixture(name))
    assert rep, (name, rep.axiom, rep.witness)
    return rep.value


@functools.lru_cache(maxsize=None)
def solutions_on(name):
    """Non-degenerate solutions on a fixture quiver, all of them (no symmetry reduction)."""
    from quiverbraid.search import SearchSpec

    res = enumerate_solutions(SearchSpec(load(name), symmetry=False))
    assert res.exhaustive
    return tuple(res.items)


@pytest.fixture
def l2():
    return load("l2")


@pytest.fixture
def k2():
    return load("k2")


@pytest.fixture
def lb22():
    return load("lb22")


@pytest.fixture
def flip(l2):
    from quiverbraid.solution import flip_solution

    return flip_solution(l2)
