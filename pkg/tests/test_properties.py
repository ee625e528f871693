"""Randomized property suites; also runnable standalone with ``python3 tests/test_properties.py``."""
import time
from itertools import product

import numpy as np

from schurkit.cohomology import coboundary
from schurkit.groups import abelian_group, alternating, cyclic, dihedral, quaternion, symmetric
from schurkit.zlinalg import matmul, smith_normal_form, solve_mod

PROPERTY_GROUPS = [cyclic(5), abelian_group([2, 4]), symmetric(3), dihedral(4), quaternion(),
                   alternating(4), symmetric(4)]


def cocycle_identity_property(count=1000, seed=0):
    """``d t`` satisfies the cocycle identity on every triple, for random ``t``, groups and moduli."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        G = PROPERTY_GROUPS[rng.integers(len(PROPERTY_GROUPS))]
        m = int(rng.integers(2, 13))
        t = rng.integers(0, m, G.order)
        B = coboundary(G, t, m).table
        T = G.table
        a, b, c = np.meshgrid(*(np.arange(G.order),) * 3, indexing="ij")
        lhs = (B[b, c] - B[T[a, b], c] + B[a, T[b, c]] - B[a, b]) % m
        if lhs.any():
            return False
    return True


def snf_property(count=1000, seed=0):
    """``U A V = D`` with unimodular ``U, V`` and a divisibility chain on the diagonal."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        r, c = (int(x) for x in rng.integers(1, 9, 2))
        A = rng.integers(-1000, 1001, (r, c)).tolist()
        res = smith_normal_form(A)
        if matmul(matmul(res.U, A), res.V) != res.D:
            return False
        d = [x for x in res.diagonal if x]
        if any(d[i + 1] % d[i] for i in range(len(d) - 1)):
            return False
        off = [res.D[i][j] for i in range(r) for j in range(c) if i != j]
        if any(off):
            return False
    return True


def _all_vectors(m, cols):
    return np.array(list(product(range(m), repeat=cols)), dtype=np.int64).reshape(-1, cols)


def solve_mod_property(seed=0, per_shape=3, max_rows=3, max_m=100):
    """``solve_mod`` against exhaustive search for every ``(m, cols)`` with ``m^cols <= 10^4``."""
    rng = np.random.default_rng(seed)
    checked = 0
    for m in range(2, max_m + 1):
        cols = 1
        while m ** cols <= 10 ** 4:
            X = _all_vectors(m, cols)
            for rows in range(1, max_rows + 1):
                for trial in range(per_shape):
                    A = rng.integers(0, m, (rows, cols))
                    if trial % 2 == 0:
                        b = (A @ rng.integers(0, m, cols)) % m
                    else:
                        b = rng.integers(0, m, rows)
                    hits = np.all((X @ A.T) % m == b, axis=1)
                    x = solve_mod(A, b, m)
                    if (x is None) != (not hits.any()):
                        return False, checked
                    if x is not None and not np.array_equal((A @ np.array(x)) % m, b):
                        return False, checked
                    checked += 1
            cols += 1
    return True, checked


def test_cocycle_identity_property():
    assert cocycle_identity_property(200, seed=1)


def test_snf_property():
    assert snf_property(200, seed=1)


def test_solve_mod_property():
    ok, checked = solve_mod_property(seed=1, per_shape=1, max_m=16)
    assert ok and checked > 100


if __name__ == "__main__":
    for name, fn in (("cocycle identity x1000", cocycle_identity_property),
                     ("SNF re-multiplication x1000", snf_property),
                     ("solve_mod vs exhaustive, m <= 100", lambda: solve_mod_property()[0])):
        t0 = time.perf_counter()
        ok = fn()
        print(f"{'PASS' if ok else 'FAIL'}  {name}  {time.perf_counter() - t0:.2f} s")
