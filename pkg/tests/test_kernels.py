import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverbraid import _kernels_py, kernels
from quiverbraid.kernels import int_array

compiled = pytest.importorskip("quiverbraid._kernels", reason="compiled extension not built")


@st.composite
def partial_tables(draw):
    n = draw(st.integers(1, 5))
    pid, k = [], 0
    for _ in range(n * n):
        if draw(st.booleans()):
            pid.append(k)
            k += 1
        else:
            pid.append(-1)
    left = [draw(st.integers(-1, n - 1)) for _ in range(k)]
    right = [draw(st.integers(-1, n - 1)) for _ in range(k)]
    return n, int_array(pid), int_array(left), int_array(right)


@settings(max_examples=300)
@given(partial_tables())
def test_braid_violation_agrees(t):
    assert compiled.braid_violation(*t) == _kernels_py.braid_violation(*t)


@settings(max_examples=200)
@given(partial_tables(), st.integers(2, 4), st.data())
def test_apply_generator_agrees(t, length, data):
    n = t[0]
    codes = data.draw(st.lists(st.integers(0, n**length - 1), max_size=20))
    i = data.draw(st.integers(0, length - 2))
    left = int_array([max(v, 0) for v in t[2]])
    right = int_array([max(v, 0) for v in t[3]])
    args = (n, t[1], left, right, codes, length, i)
    assert list(compiled.apply_generator(*args)) == list(_kernels_py.apply_generator(*args))


def test_pure_backend_selected_by_environment():
    env = dict(os.environ, QUIVERBRAID_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from quiverbraid import BACKEND; print(BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND == "compiled"
