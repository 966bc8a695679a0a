"""Time the compiled and pure-Python kernels on the same inputs.

Run with ``python3 benchmarks/bench_kernels.py``. The compiled column is
skipped when the extension was not built.
"""
from __future__ import annotations

import timeit

from quiverbraid import _kernels_py
from quiverbraid.quiver import Quiver
from quiverbraid.search import enumerate_solutions
from quiverbraid.solution import flip_solution, level_action

try:
    from quiverbraid import _kernels
except ImportError:
    _kernels = None


def loops(k: int) -> Quiver:
    return Quiver.build(["p"], [(f"a{i}", "p", "p") for i in range(k)])




def main() -> None:
    impls = [("python", _kernels_py)] + ([("compiled", _kernels)] if _kernels else [])
    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name, _ in impls))
    for k in (3, 6, 10):
        # a valid solution, so the whole triple scan runs
        args = flip_solution(loops(k)).arrays
        row = []
        for _, mod in impls:
            t = timeit.timeit(lambda: mod.braid_violation(*args), number=200)
            row.append(t / 200)
        print(f"{f'braid_violation |A|={k}':<28}" + "".join(f"{t * 1e6:>10.1f}us" for t in row))
    for n in (6, 8):
        sol = enumerate_solutions(loops(2)).items[1]
        lv = level_action(sol, n)
        codes = list(range(len(lv.tuples)))
        na, pid, left, right = sol.arrays
        row = []
        for _, mod in impls:
            t = timeit.timeit(lambda: mod.apply_generator(na, pid, left, right, codes, n, 0), number=50)
            row.append(t / 50)
        print(f"{f'apply_generator n={n}':<28}" + "".join(f"{t * 1e6:>10.1f}us" for t in row))


if __name__ == "__main__":
    main()
