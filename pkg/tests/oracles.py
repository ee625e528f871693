"""Brute-force oracles, independent of the library's reduced systems and kernels.

Each oracle works from a plain multiplication table (or raw integers) and
uses sympy's integer Smith form or outright enumeration.
"""
from itertools import product
from math import gcd

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def nonzero_invariants(rows):
    if not rows:
        return []
    return [int(d) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0]


def kernel_count_mod(facs, ncols, m):
    """``#{x in (Z/m)^ncols : A x = 0}`` from the nonzero integer invariant factors of ``A``."""
    count = m ** (ncols - len(facs))
    for d in facs:
        count *= gcd(d, m)
    return count


def h2_order_full(table, ms):
    """``|Z^2| / |B^2|`` for each modulus in ``ms``, over all n^2 cochain values
    and all n^3 cocycle equations."""
    T = np.asarray(table)
    n = T.shape[0]
    var = lambda g, h: g * n + h  # noqa: E731
    rows = []
    for a, b, c in product(range(n), repeat=3):
        # beta(b, c) - beta(ab, c) + beta(a, bc) - beta(a, b) = 0
        row = [0] * (n * n)
        row[var(b, c)] += 1
        row[var(T[a, b], c)] -= 1
        row[var(a, T[b, c])] += 1
        row[var(a, b)] -= 1
        if any(row):
            rows.append(row)
    f2 = nonzero_invariants(rows)
    d1 = []
    for g, h in product(range(n), repeat=2):
        row = [0] * n
        row[g] += 1
        row[h] += 1
        row[T[g, h]] -= 1
        d1.append(row)
    f1 = nonzero_invariants(d1)
    out = []
    for m in ms:
        z2 = kernel_count_mod(f2, n * n, m)
        b2 = m ** n // kernel_count_mod(f1, n, m)
        assert z2 % b2 == 0
        out.append(z2 // b2)
    return out


def h2_exhaustive(table, m):
    """Enumerate every function ``G x G -> Z/m``; only for ``m^(n^2)`` tiny."""
    T = np.asarray(table)
    n = T.shape[0]
    cocycles = set()
    for vals in product(range(m), repeat=n * n):
        f = np.array(vals).reshape(n, n)
        ok = all((f[b, c] - f[T[a, b], c] + f[a, T[b, c]] - f[a, b]) % m == 0
                 for a, b, c in product(range(n), repeat=3))
        if ok:
            cocycles.add(vals)
    boundaries = set()
    for t in product(range(m), repeat=n):
        f = tuple(((t[g] + t[h] - t[T[g, h]]) % m) for g, h in product(range(n), repeat=2))
        boundaries.add(f)
    assert boundaries <= cocycles
    return len(cocycles) // len(boundaries)


def alternating_maps(divisors, m):
    """Distinct alternating bilinear maps, identified by their value tables."""
    k = len(divisors)
    elems = list(product(*[range(d) for d in divisors]))
    E = np.array(elems).reshape(len(elems), k)
    n = len(elems)
    add = np.array([[elems.index(tuple((a + b) % d for a, b, d in zip(x, y, divisors)))
                     for y in elems] for x in elems])
    maps = set()
    for vals in product(range(m), repeat=k * k):
        V = np.array(vals).reshape(k, k)
        F = (E @ V @ E.T) % m
        if np.diag(F).any():
            continue
        # additive in the first slot with respect to the group law of A (so well defined)
        if all(np.array_equal(F[add[i]], (F[i][None, :] + F) % m) for i in range(n)):
            maps.add(F.tobytes())
    return len(maps)


def solve_exhaustive(A, b, m):
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    sols = []
    for x in product(range(m), repeat=cols):
        if np.array_equal((A @ np.array(x, dtype=np.int64)) % m, np.asarray(b) % m):
            sols.append(x)
    return sols


def brute_center(table):
    T = np.asarray(table)
    return sorted(z for z in range(len(T)) if np.array_equal(T[z, :], T[:, z]))


def brute_inverse(table, e=0):
    T = np.asarray(table)
    return np.array([int(np.flatnonzero(T[x] == e)[0]) for x in range(len(T))])


def brute_classes(table, e=0):
    T = np.asarray(table)
    inv = brute_inverse(T, e)
    seen, classes = set(), []
    for x in range(len(T)):
        if x in seen:
            continue
        cl = {int(T[T[g, x], inv[g]]) for g in range(len(T))}
        seen |= cl
        classes.append(sorted(cl))
    return classes


def brute_closure(table, gens, e=0):
    T = np.asarray(table)
    members = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(T[x, s])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(members)


def brute_derived(table, e=0):
    T = np.asarray(table)
    inv = brute_inverse(T, e)
    comms = {int(T[T[T[x, y], inv[x]], inv[y]]) for x in range(len(T)) for y in range(len(T))}
    return brute_closure(T, sorted(comms), e)


def perm_group_order(gens):
    """Closure of permutation tuples under composition, by sets."""
    gens = [tuple(g) for g in gens]
    n = len(gens[0])
    e = tuple(range(n))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(n))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def clifford_sign_by_sorting(A, B):
    """Sign of ``e_A e_B`` by bubble-sorting the concatenated word and cancelling squares."""
    word = sorted(A) + sorted(B)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
    return sign


def f4_tables():
    """GF(4) = {0, 1, w, w+1} as 2-bit polynomials modulo x^2 + x + 1."""
    def mul(a, b):
        r = 0
        for i in range(2):
            if b >> i & 1:
                r ^= a << i
        if r & 4:
            r ^= 0b111
        return r
    M = np.array([[mul(a, b) for b in range(4)] for a in range(4)])
    A = np.array([[a ^ b for b in range(4)] for a in range(4)])
    return A, M


def su3_2_count():
    """``#{M in M_3(F_4) : M J conj(M)^T = J, det M = 1}`` with ``conj(x) = x^2`` and ``J`` antidiagonal."""
    A, M = f4_tables()
    conj = np.array([M[x, x] for x in range(4)])
    mats = np.array(list(product(range(4), repeat=9)), dtype=np.int64).reshape(-1, 3, 3)

    def fadd(x, y):
        return A[x, y]

    def fmul(x, y):
        return M[x, y]

    # (M J conj(M)^T)[i, j] = sum_k M[i, k] conj(M[j, 2 - k])
    ok = np.ones(len(mats), bool)
    for i in range(3):
        for j in range(3):
            acc = np.zeros(len(mats), np.int64)
            for k in range(3):
                acc = fadd(acc, fmul(mats[:, i, k], conj[mats[:, j, 2 - k]]))
            ok &= acc == (1 if i + j == 2 else 0)
    cand = mats[ok]
    det = np.zeros(len(cand), np.int64)
    for perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)):
        term = np.ones(len(cand), np.int64)
        for r in range(3):
            term = fmul(term, cand[:, r, perm[r]])
        det = fadd(det, term)  # characteristic 2: signs vanish
    return int(np.count_nonzero(det == 1))


def k2_order_prime(p):
    """``|K_2(F_p)|`` by building ``F_p^* (x) F_p^*`` relations from a brute-force primitive root."""
    if p == 2:
        return 1
    g = next(g for g in range(2, p) if len({pow(g, i, p) for i in range(p - 1)}) == p - 1)
    log = {pow(g, i, p): i for i in range(p - 1)}
    N = p - 1
    out = N
    for a in range(2, p):
        out = gcd(out, log[a] * log[(1 - a) % p])
    return out


def gf2_rank(A):
    """Rank over GF(2) with rows as Python integers."""
    rows = [int("".join(str(int(b)) for b in r), 2) for r in np.asarray(A) % 2]
    rank = 0
    while rows:
        pivot = max(rows)
        rows.remove(pivot)
        if pivot == 0:
            break
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if r >> top & 1 else r for r in rows]
    return rank
