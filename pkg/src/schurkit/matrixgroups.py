"""Matrix groups over F_q, realized by closure.

Matrices act on row vectors, so ``x * y`` applies ``x`` first, matching the
permutation convention used by :class:`~schurkit.groups.PermContext`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, prod

import numpy as np

from .errors import ContractViolation, PreconditionError
from .fields import FieldFq, field
from .groups import (DEFAULT_CAP, FiniteGroup, PermContext, _void_keys, center,
                     closure)

SUPPORTED = {
    "SL": range(1, 5),
    "GL": range(1, 4),
    "SP": (4,),
    "SU": (3, 4),
    "PGL": range(2, 4),
    "PSL": range(2, 4),
}


class MatrixContext:
    """``n x n`` matrices over ``F`` with entries stored as field integers."""

    def __init__(self, F: FieldFq, n: int):
        self.F = F
        self.n = n
        self._int_keys = F.q ** (n * n) < 2 ** 62
        self._radix = F.q ** np.arange(n * n, dtype=np.int64) if self._int_keys else None

    def identity(self):
        return np.eye(self.n, dtype=np.int64)

    def normalize(self, x):
        x = np.asarray(x, dtype=np.int64)
        if x.shape != (self.n, self.n) or x.min(initial=0) < 0 or x.max(initial=0) >= self.F.q:
            raise ContractViolation("not a matrix over the field")
        return x

    def _add(self, a, b):
        t = self.F.add_table
        return t[a, b] if t is not None else self.F.add(a, b)

    def _mul(self, a, b):
        t = self.F.mul_table
        return t[a, b] if t is not None else self.F.mul(a, b)

    def mul_batch(self, X, g):
        X = np.asarray(X, np.int64)
        acc = self._mul(X[:, :, 0][:, :, None], g[0][None, None, :])
        for l in range(1, self.n):
            acc = self._add(acc, self._mul(X[:, :, l][:, :, None], g[l][None, None, :]))
        return acc

    def mul(self, x, y):
        return self.mul_batch(x[None], y)[0]

    def key(self, x):
        return self.keys(np.asarray(x)[None])[0]

    def keys(self, X):
        X = np.asarray(X, np.int64).reshape(len(X), -1)
        if self._int_keys:
            return (X @ self._radix).tolist()
        return _void_keys(X)

    def label(self, x):
        return str(np.asarray(x).tolist())

    def det(self, x) -> int:
        """Determinant by Gaussian elimination."""
        F = self.F
        a = np.array(x, dtype=np.int64)
        n = self.n
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r, c]), None)
            if piv is None:
                return 0
            if piv != c:
                a[[c, piv]] = a[[piv, c]]
                d = int(F.neg(d))
            d = int(F.mul(d, a[c, c]))
            inv = int(F.inv(a[c, c]))
            for r in range(c + 1, n):
                if a[r, c]:
                    f = int(F.mul(a[r, c], inv))
                    a[r] = F.sub(a[r], F.mul(f, a[c]))
        return d


def _elementary(n, i, j, lam):
    m = np.eye(n, dtype=np.int64)
    m[i, j] = lam
    return m


def _power_basis(F: FieldFq):
    return [F.p ** i for i in range(F.k)]


def sl_generators(F: FieldFq, n: int):
    """Adjacent elementary transvections ``E_{i,i+-1}(lam)``, ``lam`` in the power basis."""
    gens = []
    for i in range(n - 1):
        for lam in _power_basis(F):
            gens.append(_elementary(n, i, i + 1, lam))
            gens.append(_elementary(n, i + 1, i, lam))
    return gens


def gl_generators(F: FieldFq, n: int):
    d = np.eye(n, dtype=np.int64)
    d[0, 0] = F.generator
    return sl_generators(F, n) + [d]


def order_sl(n, q):
    return q ** (n * (n - 1) // 2) * prod(q ** i - 1 for i in range(2, n + 1))


def order_gl(n, q):
    return order_sl(n, q) * (q - 1)


def order_sp4(q):
    return q ** 4 * (q ** 2 - 1) * (q ** 4 - 1)


def order_su(n, q):
    return q ** (n * (n - 1) // 2) * prod(q ** i - (-1) ** i for i in range(2, n + 1))


def sp4_generators(F: FieldFq):
    """Symplectic transvections ``x -> x + lam <x, v> v`` for 0/1 vectors ``v`` with at most two ones."""
    J = np.zeros((4, 4), np.int64)
    J[0, 2] = J[1, 3] = 1
    J[2, 0] = J[3, 1] = int(F.neg(1))
    gens = []
    for v in product((0, 1), repeat=4):
        if not 0 < sum(v) <= 2:
            continue
        v = np.array(v, np.int64)
        Jv = np.zeros(4, np.int64)
        for l in np.flatnonzero(v):
            Jv = F.add(Jv, J[:, l])
        outer = F.mul(Jv[:, None], v[None, :])
        for lam in _power_basis(F):
            M = F.add(np.eye(4, dtype=np.int64), F.mul(lam, outer))
            gens.append(np.asarray(M, np.int64))
    return gens, J


def _unitary_check(F2: FieldFq, q: int, M, J):
    """``M J sigma(M)^T == J`` with ``sigma(x) = x^q``."""
    ctx = MatrixContext(F2, M.shape[0])
    return np.array_equal(ctx.mul(ctx.mul(M, J), F2.pow(M, q).T), J)


def su_candidates(n: int, q: int):
    """Unitriangular and diagonal det-1 matrices preserving the antidiagonal Hermitian form over F_{q^2}."""
    F2 = field(q * q)
    J = np.fliplr(np.eye(n, dtype=np.int64))
    ctx = MatrixContext(F2, n)
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for vals in product(range(F2.q), repeat=len(upper)):
        if not any(vals):
            continue
        U = np.eye(n, dtype=np.int64)
        for (i, j), v in zip(upper, vals):
            U[i, j] = v
        if _unitary_check(F2, q, U, J):
            out.append(U)
            out.append(ctx.mul(ctx.mul(J, U), J))
    units = range(1, F2.q)
    for diag in product(units, repeat=n):
        D = np.diag(np.array(diag, np.int64))
        if diag == (1,) * n or ctx.det(D) != 1:
            continue
        if _unitary_check(F2, q, D, J):
            out.append(D)
    lower = [M for M in out if _unitary_check(F2, q, M, J)]
    return F2, J, lower


def _greedy(ctx, candidates, cap):
    gens = []
    members = {ctx.key(ctx.identity())}
    for c in candidates:
        if ctx.key(c) in members:
            continue
        gens.append(c)
        G = closure(gens, ctx, cap=cap)
        members = set(ctx.keys(G.elements))
    return gens


def su_generators(n: int, q: int, cap=DEFAULT_CAP):
    F2, J, cands = su_candidates(n, q)
    ctx = MatrixContext(F2, n)
    return F2, _greedy(ctx, cands, cap)


def projective_points(F: FieldFq, n: int) -> np.ndarray:
    """Vectors whose first nonzero coordinate is 1."""
    pts = []
    for v in product(range(F.q), repeat=n):
        nz = [c for c in v if c]
        if nz and nz[0] == 1:
            pts.append(v)
    return np.array(pts, np.int64)


def _projective_perm(F: FieldFq, M, pts, index):
    n = M.shape[0]
    imgs = np.zeros_like(pts)
    for c in range(n):
        col = np.zeros(len(pts), np.int64)
        for l in range(n):
            col = F.add(col, F.mul(pts[:, l], M[l, c]))
        imgs[:, c] = col
    lead = np.array([row[np.flatnonzero(row)[0]] for row in imgs])
    imgs = F.mul(imgs, F.inv(lead)[:, None])
    return np.array([index[tuple(r)] for r in imgs.tolist()], np.int64)


@dataclass(frozen=True)
class MatrixGroupSpec:
    family: str
    n: int
    q: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        if fam not in SUPPORTED or self.n not in SUPPORTED[fam]:
            raise PreconditionError(f"unsupported classical group {fam}({self.n},{self.q})")

    def expected_order(self) -> int:
        n, q = self.n, self.q
        return {
            "SL": lambda: order_sl(n, q),
            "GL": lambda: order_gl(n, q),
            "SP": lambda: order_sp4(q),
            "SU": lambda: order_su(n, q),
            "PGL": lambda: order_gl(n, q) // (q - 1),
            "PSL": lambda: order_sl(n, q) // gcd(n, q - 1),
        }[self.family]()


def classical_group(spec: MatrixGroupSpec, cap: int = DEFAULT_CAP) -> FiniteGroup:
    F = field(spec.q)
    n, fam = spec.n, spec.family
    name = f"{fam}{n}({spec.q})"
    if fam in ("SL", "GL"):
        gens = sl_generators(F, n) if fam == "SL" else gl_generators(F, n)
        if n == 1:
            gens = [] if fam == "SL" else [np.array([[F.generator]])]
        G = closure(gens, MatrixContext(F, n), cap=cap, name=name)
    elif fam == "SP":
        gens, J = sp4_generators(F)
        G = closure(gens, MatrixContext(F, 4), cap=cap, name=name)
    elif fam == "SU":
        F2, gens = su_generators(n, spec.q, cap)
        G = closure(gens, MatrixContext(F2, n), cap=cap, name=name)
    else:
        pts = projective_points(F, n)
        index = {tuple(r): i for i, r in enumerate(pts.tolist())}
        mats = gl_generators(F, n) if fam == "PGL" else sl_generators(F, n)
        perms = [_projective_perm(F, M, pts, index) for M in mats]
        G = closure(perms, PermContext(len(pts)), cap=cap, name=name)
    if G.order != spec.expected_order():
        raise AssertionError(f"{name} has order {G.order}, expected {spec.expected_order()}")
    return G


def heisenberg_matrices(n: int, q: int):
    """Generators of the unipotent group with entries only in the first row and last column."""
    F = field(q)
    size = n + 2
    gens = [_elementary(size, 0, i, 1) for i in range(1, n + 1)]
    gens += [_elementary(size, i, size - 1, 1) for i in range(1, n + 1)]
    return F, MatrixContext(F, size), gens


def heisenberg(n: int, q: int, cap: int = DEFAULT_CAP):
    """``0 -> F_q -> H -> F_q^{2n} -> 0`` as a central extension (``q`` prime)."""
    from .extensions import CentralExtension
    from .groups import abelian_group, Homomorphism

    F, ctx, gens = heisenberg_matrices(n, q)
    if F.k != 1:
        raise PreconditionError("heisenberg needs prime q so that the kernel is cyclic")
    if q ** (2 * n + 1) > cap:
        from .errors import CapacityError
        raise CapacityError(f"order {q ** (2 * n + 1)} exceeds element cap {cap}", bound=cap)
    H = closure(gens, ctx, cap=cap, name=f"H({n},{q})")
    size = n + 2
    mats = H.elements
    xs = mats[:, 0, 1:n + 1]
    ys = mats[:, 1:n + 1, size - 1]
    zs = mats[:, 0, size - 1]
    base = abelian_group([q] * (2 * n), name=f"F{q}^{2 * n}")
    radix = q ** np.arange(2 * n, dtype=np.int64)
    proj = np.concatenate([xs, ys], axis=1) @ radix
    coords = base.coordinates
    section = np.empty(base.order, np.int64)
    for g in range(base.order):
        M = np.eye(size, dtype=np.int64)
        M[0, 1:n + 1] = coords[g, :n]
        M[1:n + 1, size - 1] = coords[g, n:]
        section[g] = H.index_of(M)
    kernel_gen = H.index_of(_elementary(size, 0, size - 1, 1))
    kcoord = np.full(H.order, -1, np.int64)
    central = (xs == 0).all(axis=1) & (ys == 0).all(axis=1)
    kcoord[central] = zs[central]
    return CentralExtension(total=H, base=base, modulus=q, kernel_gen=kernel_gen,
                            projection=Homomorphism(H, base, proj), section=section,
                            kernel_coord=kcoord)


def mu_n_order(n: int, q: int) -> int:
    """``#{x in F_q^* : x^n = 1}`` counted directly."""
    F = field(q)
    return int(np.count_nonzero(F.pow(F.units(), n) == 1))


def dual_sequence_check(family: str, n: int, q: int, cap: int = DEFAULT_CAP) -> dict:
    """Compare ``|PGL_n|`` with ``|SL_n / Z| * |Z|`` where ``Z = mu_n``."""
    if family.upper() != "SL" or not 1 <= n <= 3:
        raise PreconditionError("dual sequence check covers SL_n with n <= 3")
    SL = classical_group(MatrixGroupSpec("SL", n, q), cap)
    PGL = classical_group(MatrixGroupSpec("PGL", n, q), cap) if n > 1 else None
    PSL = classical_group(MatrixGroupSpec("PSL", n, q), cap) if n > 1 else None
    z_sl = center(SL).order
    mu = mu_n_order(n, q)
    pgl = PGL.order if PGL else 1
    psl = PSL.order if PSL else 1
    report = {
        "family": "SL", "n": n, "q": q,
        "sl_order": SL.order, "center_order": z_sl, "mu_n_order": mu,
        "psl_order": psl, "pgl_order": pgl,
        "quotient_order": SL.order // z_sl,
    }
    report["center_is_mu_n"] = z_sl == mu
    report["psl_is_quotient"] = psl == SL.order // z_sl
    report["holds"] = bool(report["center_is_mu_n"] and report["psl_is_quotient"]
                           and pgl == (SL.order // z_sl) * mu)
    return report
