"""Numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row times one kernel on a fixed input with both flavours, checks that
the outputs agree, and prints the best-of-N wall time and the speedup.
"""
import argparse
import time

import numpy as np

from schurkit import kernels
from schurkit.groups import symmetric


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def case_bfs(G):
    right = G.right
    return (lambda: kernels.cayley_bfs_numba(right, 0),
            lambda: kernels.cayley_bfs_numpy(right, 0),
            lambda a, b: np.array_equal(np.sort(a[0]), np.sort(b[0])))


def case_table(G):
    order, parent, pgen = kernels.cayley_bfs_numba(G.right, 0)
    return (lambda: kernels.fill_table_numba(G.right, order, parent, pgen),
            lambda: kernels.fill_table_numpy(G.right, order, parent, pgen),
            np.array_equal)


def case_gf2(rows, cols, seed=0):
    dense = np.random.default_rng(seed).integers(0, 2, (rows, cols), dtype=np.uint8)
    packed = kernels.pack_gf2(dense)
    return (lambda: kernels.gf2_rref_numba(packed.copy(), cols),
            lambda: kernels.gf2_rref_numpy(packed.copy(), cols),
            lambda a, b: np.array_equal(np.asarray(a), np.asarray(b)))


def case_snf(rows, cols, p, k, seed=0):
    a = np.random.default_rng(seed).integers(0, p ** k, (rows, cols)).astype(np.int64)
    a[:, ::3] *= p  # force some nonunit pivots

    def run(fn):
        v = np.eye(cols, dtype=np.int64)
        return fn(a.copy(), p, k, v, v.copy(), np.zeros((rows, 0), np.int64))
    return (lambda: run(kernels.local_snf_numba), lambda: run(kernels.local_snf_numpy),
            lambda x, y: sorted(np.asarray(x).tolist()) == sorted(np.asarray(y).tolist()))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    kernels.warmup()
    S7 = symmetric(7)
    cases = [
        ("cayley_bfs S7", case_bfs(S7)),
        ("fill_table S7", case_table(S7)),
        ("gf2_rref 800x1600", case_gf2(800, 1600)),
        ("local_snf 80x80 mod 8", case_snf(80, 80, 2, 3)),
        ("local_snf 60x60 mod 27", case_snf(60, 60, 3, 3)),
    ]
    print(f"{'kernel':<26}{'numba s':>12}{'numpy s':>12}{'speedup':>10}  agree")
    for name, (fast, slow, same) in cases:
        tf, of = best_of(fast, args.repeat)
        ts, os_ = best_of(slow, args.repeat)
        print(f"{name:<26}{tf:>12.5f}{ts:>12.5f}{ts / tf:>9.1f}x  {bool(same(of, os_))}")


if __name__ == "__main__":
    main()
