"""Compare the compiled and pure elimination kernels on real workloads.

Run from the repository root:

    python3 benchmarks/bench_backends.py

Workloads: the degree-2 and degree-3 differential matrices of the n = 3
matrix-algebra instance (the largest structured systems the analysis
solves), plus dense random integer matrices. Both kernels are imported
directly, so the timings ignore HAMFLUX_PURE.
"""

import copy
import random
import time

from hamflux import _core_py
from hamflux.cochain import differential_matrix
from hamflux.gallery import matrix_algebra_example
from hamflux.linalg import _int_row

try:
    from hamflux import _core
except ImportError:
    _core = None


def int_rows(matrix):
    return [_int_row(r) for r in matrix.entries]


def workloads():
    bundle = matrix_algebra_example(3)
    d1 = differential_matrix(bundle.module, 1)
    d2 = differential_matrix(bundle.module, 2)
    yield "matrix-algebra d1 (%dx%d)" % (d1.nrows, d1.ncols), int_rows(d1)
    yield "matrix-algebra d2 (%dx%d)" % (d2.nrows, d2.ncols), int_rows(d2)
    rng = random.Random(0)
    dense = [[rng.randint(-50, 50) for _ in range(120)] for _ in range(120)]
    yield "dense random 120x120", dense
    sparse = [
        [rng.randint(-9, 9) if rng.random() < 0.15 else 0 for _ in range(200)]
        for _ in range(120)
    ]
    yield "sparse random 120x200", sparse


def best_of(kernel, rows, repeats=3):
    times = []
    for _ in range(repeats):
        work = copy.deepcopy(rows)
        start = time.perf_counter()
        kernel(work, len(rows[0]))
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    if _core is None:
        print("compiled kernel not built; showing pure timings only")
    print(f"{'workload':<28} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, rows in workloads():
        pure = best_of(_core_py.rref_ints, rows)
        if _core is not None:
            comp = best_of(_core.rref_ints, rows)
            check_a = _core_py.rref_ints(copy.deepcopy(rows), len(rows[0]))
            check_b = _core.rref_ints(copy.deepcopy(rows), len(rows[0]))
            assert check_a == check_b, f"kernel mismatch on {name}"
            print(f"{name:<28} {pure:>9.4f}s {comp:>9.4f}s {pure / comp:>7.2f}x")
        else:
            print(f"{name:<28} {pure:>9.4f}s {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
