#!/usr/bin/env python3
"""Benchmark the compiled Jacobi kernel against the pure numpy fallback.

Usage: python benchmarks/bench_jacobi.py [sizes...]
"""

import sys
import time

import numpy as np

from pstlab import _jacobi_py
from pstlab import graphs as gr

try:
    from pstlab import _jacobi
except ImportError:
    _jacobi = None


def run(kernel, matrix):
    a = matrix.copy()
    v = np.eye(matrix.shape[0])
    target = 1e-13 * np.linalg.norm(matrix)
    start = time.perf_counter()
    sweeps, ok = kernel(a, v, target, 100)
    elapsed = time.perf_counter() - start
    assert ok, "kernel failed to converge"
    return elapsed, sweeps, np.diag(a).copy(), v


def main(argv):
    sizes = [int(s) for s in argv] or [32, 64, 128, 256]
    rng = np.random.default_rng(7)
    print(f"{'case':>16} {'n':>5} {'sweeps':>6} {'pure':>10} "
          f"{'compiled':>10} {'speedup':>8}")
    for n in sizes:
        dense = rng.normal(size=(n, n))
        dense = (dense + dense.T) / 2.0
        d = max(1, int(np.log2(n)))
        cases = [("random", dense)]
        if 2 ** d <= 4096:
            cases.append((f"cube-d{d}", gr.hypercube(d).adjacency))
        for label, m in cases:
            t_pure, sweeps, w_pure, _ = run(_jacobi_py.cyclic_jacobi, m)
            if _jacobi is None:
                print(f"{label:>16} {m.shape[0]:>5} {sweeps:>6} {t_pure:>10.3f} "
                      f"{'n/a':>10} {'n/a':>8}")
                continue
            t_comp, sweeps_c, w_comp, _ = run(_jacobi.cyclic_jacobi, m)
            assert sweeps == sweeps_c
            assert np.array_equal(w_pure, w_comp), "backends disagree"
            print(f"{label:>16} {m.shape[0]:>5} {sweeps:>6} {t_pure:>10.3f} "
                  f"{t_comp:>10.3f} {t_pure / t_comp:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
