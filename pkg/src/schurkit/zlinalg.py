"""Exact linear algebra over Z, Z/m and GF(2).

Integer Smith normal form runs on Python ints. Everything modulo ``m`` is
split into prime powers ``p^k`` and handled by :func:`kernels.local_snf`
(Z/p^k is a local ring, so the minimal-valuation entry is always a valid
pivot), then recombined with CRT idempotents.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import kernels
from .abelian import AbelianStructure, chain_from_primary, factorize
from .errors import ContractViolation, SnfOverflowError

CHECKED_LIMIT = 1 << 127


def _as_rows(A):
    rows = [[int(x) for x in r] for r in (A.tolist() if isinstance(A, np.ndarray) else A)]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix is not rectangular")
    return rows


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(inner)) for j in range(cols)] for i in range(len(A))]


def int_det(A) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    M = [list(r) for r in _as_rows(A)]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass
class SnfResult:
    """``U @ A @ V == D`` with ``D`` diagonal and ``d1 | d2 | ...``."""

    D: list
    U: list
    V: list

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(A, checked: bool = False) -> SnfResult:
    """Smith normal form over Z with unimodular transforms.

    Pivots are chosen by smallest magnitude and reduced with full row and
    column gcd steps. With ``checked=True`` every entry is kept below
    2**127 in magnitude and :class:`SnfOverflowError` is raised otherwise.
    """
    M = _as_rows(A)
    m = len(M)
    n = len(M[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def guard(row):
        if checked and any(abs(x) >= CHECKED_LIMIT for x in row):
            raise SnfOverflowError("entry exceeded 128-bit range; rerun with checked=False (big-integer mode)")

    def row_op(dst, src, q):  # row dst -= q * row src
        if q:
            M[dst] = [a - q * b for a, b in zip(M[dst], M[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]
            guard(M[dst])
            guard(U[dst])

    def col_op(dst, src, q):  # col dst -= q * col src
        if q:
            for r in M:
                r[dst] -= q * r[src]
            for r in V:
                r[dst] -= q * r[src]
            if checked:
                guard([r[dst] for r in M])
                guard([r[dst] for r in V])

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for r in M:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    row_op(i, t, M[i][t] // M[t][t])
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    col_op(j, t, M[t][j] // M[t][t])
                    if M[t][j]:
                        dirty = True
            if dirty:
                cand = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
                cand += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
                _, bi, bj = min(cand)
                swap_rows(t, bi)
                swap_cols(t, bj)
                continue
            piv = M[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % piv), None)
            if bad is None:
                break
            row_op(t, bad[0], -1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]

    if matmul(matmul(U, _as_rows(A)), V) != M:
        raise AssertionError("SNF verification failed")
    return SnfResult(M, U, V)


# --------------------------------------------------------------------------
# modular machinery
# --------------------------------------------------------------------------

def _crt_idempotents(m: int) -> dict[int, tuple[int, int]]:
    """``p -> (p^k, e_p)`` with ``e_p = 1 mod p^k`` and ``0 mod m/p^k``."""
    out = {}
    for p, k in factorize(m).items():
        q = p ** k
        rest = m // q
        out[p] = (q, rest * pow(rest, -1, q) % m if rest > 1 else 1 % m)
    return out


def _dtype_for(q):
    return np.int64 if q < kernels.INT64_MODULUS_LIMIT else object


def _to_mod(A, q, shape=None):
    dt = _dtype_for(q)
    if dt is object:
        arr = np.array(_as_rows(A), dtype=object) % q
    elif isinstance(A, np.ndarray) and A.dtype.kind in "iu":
        arr = np.mod(A.astype(np.int64), q)
    else:
        arr = (np.asarray(A, dtype=object) % q).astype(np.int64)
    if shape is not None and arr.size == 0:
        arr = np.zeros(shape, dtype=dt)
    return arr


def snf_local(A, p: int, k: int, rhs=None):
    """Smith reduction over Z/p^k.

    Returns ``(vals, V, Vinv, Ub)`` where ``vals`` are pivot valuations,
    ``V``/``Vinv`` the column transform and its inverse, and ``Ub`` the row
    transform applied to ``rhs``.
    """
    q = p ** k
    A = np.asarray(A)
    rows = A.shape[0]
    cols = A.shape[1] if A.ndim == 2 else 0
    dt = _dtype_for(q)
    a = _to_mod(A, q, (rows, cols)).reshape(rows, cols).astype(dt, copy=True)
    v = np.eye(cols, dtype=np.int64).astype(dt)
    vinv = v.copy()
    if rhs is None:
        b = np.zeros((rows, 0), dtype=dt)
    else:
        b = _to_mod(rhs, q, (rows, 0)).reshape(rows, -1).astype(dt, copy=True)
    vals = kernels.local_snf(a, p, k, v, vinv, b)
    return vals, v, vinv, b


def solve_mod(A, b, m: int):
    """Some ``x`` with ``A x = b (mod m)``, or ``None`` when no solution exists."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    A = np.asarray(_as_rows(A), dtype=object)
    rows = A.shape[0]
    cols = A.shape[1] if rows else 0
    b = [int(x) for x in b]
    if len(b) != rows:
        raise ValueError("dimension mismatch between A and b")
    x = [0] * cols
    for p, (q, e) in _crt_idempotents(m).items():
        k = factorize(q)[p]
        vals, V, _, ub = snf_local(A.reshape(rows, cols), p, k, rhs=np.array(b, dtype=object).reshape(rows, 1))
        c = [int(t) for t in ub[:, 0]]
        y = [0] * cols
        r = len(vals)
        for i in range(r):
            pv = p ** int(vals[i])
            if c[i] % pv:
                return None
            y[i] = c[i] // pv
        if any(c[i] % q for i in range(r, rows)):
            return None
        xq = [sum(int(V[i][j]) * y[j] for j in range(cols)) % q for i in range(cols)]
        x = [(xi + e * xqi) % m for xi, xqi in zip(x, xq)]
    check = [sum(int(A[i][j]) * x[j] for j in range(cols)) % m for i in range(rows)]
    if check != [bi % m for bi in b]:
        raise AssertionError("solve_mod produced a non-solution")
    return x


def _combine_primary(parts: dict[int, list[tuple[int, np.ndarray]]], m: int, width: int):
    """Turn p-primary generators ``p -> [(order, vec)]`` into invariant-factor generators."""
    primary = {}
    for p, gens in parts.items():
        primary[p] = [o.bit_length() - 1 if p == 2 else _log(o, p) for o, _ in gens]
    structure = AbelianStructure(tuple(chain_from_primary(primary)))
    span = len(structure.divisors)
    combined = [np.zeros(width, dtype=object) for _ in range(span)]
    for p, gens in parts.items():
        ordered = sorted((g for g in gens if g[0] > 1), key=lambda g: g[0])
        for i, (_, vec) in enumerate(reversed(ordered)):
            combined[span - 1 - i] = (combined[span - 1 - i] + vec) % m
    return structure, [np.array([int(t) for t in c], dtype=np.int64) for c in combined]


def _log(o, p):
    e = 0
    while o > 1:
        o //= p
        e += 1
    return e


def kernel_structure_mod(A, m: int):
    """``{x : A x = 0 mod m}`` as a Z/m-module: ``(structure, generators)``.

    Generators are aligned with ``structure.divisors``.
    """
    A = np.asarray(_as_rows(A), dtype=object)
    if A.ndim != 2:
        A = A.reshape(0, 0)
    cols = A.shape[1]
    parts = {}
    for p, (q, e) in _crt_idempotents(m).items():
        k = factorize(q)[p]
        vals, V, _, _ = snf_local(A, p, k)
        gens = []
        for j in range(cols):
            v = int(vals[j]) if j < len(vals) else k
            if v == 0:
                continue
            vec = np.array([(int(V[i][j]) * p ** (k - v)) % q for i in range(cols)], dtype=object)
            gens.append((p ** v, (vec * e) % m))
        parts[p] = gens
    return _combine_primary(parts, m, cols)


def quotient_structure(span_big, span_small, m: int, return_representatives: bool = False):
    """Structure of ``<span_big> / <span_small>`` inside ``(Z/m)^N``.

    Raises :class:`ContractViolation` if ``span_small`` is not contained in
    ``span_big``. With ``return_representatives`` also returns vectors that
    map to the invariant-factor generators of the quotient.
    """
    big = [list(map(int, r)) for r in span_big]
    small = [list(map(int, r)) for r in span_small]
    width = len(big[0]) if big else (len(small[0]) if small else 0)
    parts = {}
    for p, (q, e) in _crt_idempotents(m).items():
        k = factorize(q)[p]
        gens = _quotient_prime_power(big, small, p, k, width)
        parts[p] = [(o, (vec * e) % m) for o, vec in gens]
    structure, reps = _combine_primary(parts, m, width)
    if return_representatives:
        return structure, reps
    return structure


def _quotient_prime_power(big, small, p, k, width):
    q = p ** k
    if not big:
        if any(x % q for r in small for x in r):
            raise ContractViolation("span_small is not contained in span_big")
        return []
    B = np.array(big, dtype=object).reshape(len(big), width)
    vals, V, Vinv, _ = snf_local(B, p, k)
    rank = len(vals)
    basis = [(np.array([int(x) for x in Vinv[t]], dtype=object) * p ** int(vals[t])) % q for t in range(rank)]
    coords = []
    if small:
        S = np.array(small, dtype=object).reshape(len(small), width) % q
        SV = S.dot(np.array(V, dtype=object)) % q
        for row in SV:
            c = []
            for t in range(width):
                x = int(row[t])
                if t >= rank:
                    if x % q:
                        raise ContractViolation("span_small is not contained in span_big")
                    continue
                pv = p ** int(vals[t])
                if x % pv:
                    raise ContractViolation("span_small is not contained in span_big")
                c.append((x // pv) % q)
            coords.append(c)
    relations = coords + [[(p ** (k - int(vals[t])) if i == t else 0) % q for i in range(rank)] for t in range(rank)]
    rvals, _, R2inv, _ = snf_local(np.array(relations, dtype=object).reshape(len(relations), rank), p, k)
    out = []
    for j in range(rank):
        w = int(rvals[j]) if j < len(rvals) else k
        if w == 0:
            continue
        vec = np.zeros(width, dtype=object)
        for t in range(rank):
            coef = int(R2inv[j][t])
            if coef:
                vec = (vec + coef * basis[t]) % q
        out.append((p ** w, vec))
    return out


# --------------------------------------------------------------------------
# GF(2)
# --------------------------------------------------------------------------

@dataclass
class Gf2Matrix:
    """Bit-packed GF(2) matrix."""

    rows: int
    cols: int
    packed: np.ndarray = field(repr=False)

    @classmethod
    def from_dense(cls, dense):
        dense = np.asarray(dense)
        if dense.ndim != 2:
            dense = dense.reshape(0, 0)
        return cls(dense.shape[0], dense.shape[1], kernels.pack_gf2(dense))

    def to_dense(self):
        return kernels.unpack_gf2(self.packed, self.cols)[: self.rows]

    def rref(self):
        """Reduced echelon copy and its pivot columns."""
        work = self.packed.copy()
        piv = kernels.gf2_rref(work, self.cols)
        return Gf2Matrix(self.rows, self.cols, work), piv

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> np.ndarray:
        """Basis of ``{x : M x = 0}`` as rows of a 0/1 array."""
        red, piv = self.rref()
        dense = red.to_dense()[: len(piv)]
        free = [c for c in range(self.cols) if c not in set(piv.tolist())]
        basis = np.zeros((len(free), self.cols), dtype=np.int64)
        for i, f in enumerate(free):
            basis[i, f] = 1
            for r, c in enumerate(piv):
                basis[i, c] = dense[r, f]
        return basis


def gf2_quotient(big_rows, small_rows, cols):
    """Representatives of ``<big>/<small>`` over GF(2).

    ``big`` rows are scanned in order and kept when they enlarge the span of
    ``small`` plus the rows kept so far.
    """
    small = np.asarray(small_rows, dtype=np.int64).reshape(-1, cols) & 1
    big = np.asarray(big_rows, dtype=np.int64).reshape(-1, cols) & 1
    words = max(1, (cols + 63) // 64)
    work = np.zeros((0, words), np.uint64)
    rank = 0
    if len(small):
        work = kernels.pack_gf2(small)
        rank = len(kernels.gf2_rref(work, cols))
        work = work[:rank].copy()
    reps = []
    for row in big:
        trial = np.vstack([work, kernels.pack_gf2(row[None, :])])
        piv = kernels.gf2_rref(trial, cols)
        if len(piv) > rank:
            reps.append(row.copy())
            rank = len(piv)
            work = trial[:rank].copy()
    return reps
