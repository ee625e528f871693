"""Second cohomology with trivial coefficients Z/m, Ext^1, Lambda^2 and Schur multipliers.

Normalized 2-cochains are determined by their values ``x(g, s) = beta(g, s)``
on ``G x S`` for a generating set ``S``: walking a BFS tree over ``S`` the
cocycle identity
``beta(g, p s) = beta(g, p) + beta(g p, s) - beta(p, s)``
expresses every ``beta(g, y)`` as a linear form ``L[y][g] . x``. The forms are
consistent exactly when the identity holds along every non-tree edge, and
the identity for third argument in ``S`` implies it everywhere (apply
``d d = 0`` to ``(g, h, k, s)`` and induct on the length of ``k``). This
turns ``Z^2`` into the kernel of a ``(n-1)(n|S| - n + 1) x (n-1)|S|``
matrix instead of an ``n^3 x n^2`` one.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import kernels
from .abelian import AbelianStructure, chain_from_primary, factorize
from .errors import CapacityError, ContractViolation
from .groups import FiniteGroup, TABLE_LIMIT, abelianization, generating_set
from .zlinalg import (Gf2Matrix, _combine_primary, _crt_idempotents, gf2_quotient,
                      quotient_structure, snf_local, solve_mod)

DEFAULT_COCHAIN_BOUND = 60
STRETCH_COCHAIN_BOUND = 256


# --------------------------------------------------------------------------
# cocycles
# --------------------------------------------------------------------------

class Cocycle2:
    """Normalized 2-cochain ``G x G -> Z/m``.

    Stored densely (``values``) or as the coboundary of a 1-cochain
    (``cochain``), which keeps huge groups cheap.
    """

    def __init__(self, group: FiniteGroup, modulus: int, values=None, cochain=None):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        if (values is None) == (cochain is None):
            raise ValueError("give exactly one of values and cochain")
        self.group = group
        self.modulus = int(modulus)
        n = group.order
        if values is not None:
            values = np.asarray(values, dtype=np.int64)
            if values.shape == (n * n,):
                values = values.reshape(n, n)
            if values.shape != (n, n):
                raise ContractViolation(f"cocycle table must be {n}x{n}")
            values = values % self.modulus
        else:
            cochain = np.asarray(cochain, dtype=np.int64) % self.modulus
            if cochain.shape != (n,):
                raise ContractViolation("1-cochain must have one value per element")
            cochain = (cochain - cochain[group.identity]) % self.modulus
        self._values = values
        self.cochain = cochain

    @property
    def is_lazy(self) -> bool:
        return self._values is None

    def values_at(self, gs, hs) -> np.ndarray:
        gs = np.asarray(gs, np.int64)
        hs = np.asarray(hs, np.int64)
        if self._values is not None:
            return self._values[gs, hs]
        t = self.cochain
        return (t[gs] + t[hs] - t[self.group.mul_arrays(gs, hs)]) % self.modulus

    def __call__(self, g, h) -> int:
        return int(self.values_at(np.array([g]), np.array([h]))[0])

    @property
    def table(self) -> np.ndarray:
        if self._values is not None:
            return self._values
        n = self.group.order
        if n > TABLE_LIMIT:
            raise CapacityError(f"dense cocycle table for order {n} exceeds {TABLE_LIMIT}", bound=TABLE_LIMIT)
        g, h = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        return self.values_at(g, h)

    def is_normalized(self) -> bool:
        e = self.group.identity
        ar = np.arange(self.group.order)
        return not (self.values_at(np.full_like(ar, e), ar).any() or self.values_at(ar, np.full_like(ar, e)).any())

    def check_cocycle(self) -> bool:
        """Cocycle identity for all ``g, h`` and ``k`` in a generating set (which implies all ``k``)."""
        if self.is_lazy:
            return True
        G = self.group
        T = self._values
        m = self.modulus
        tab = G.table
        n = G.order
        ar = np.arange(n)
        for s in generating_set(G):
            col = T[:, s]
            rs = G.right_perm(s)
            lhs = (col[None, :] - col[tab] + T[ar[:, None], rs[None, :]] - T) % m
            if lhs.any():
                return False
        return True

    def _binary(self, other, sign):
        if other.group is not self.group or other.modulus != self.modulus:
            raise ContractViolation("cocycles live on different groups or moduli")
        if self.is_lazy and other.is_lazy:
            return Cocycle2(self.group, self.modulus, cochain=self.cochain + sign * other.cochain)
        return Cocycle2(self.group, self.modulus, values=self.table + sign * other.table)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c: int):
        if self.is_lazy:
            return Cocycle2(self.group, self.modulus, cochain=c * self.cochain)
        return Cocycle2(self.group, self.modulus, values=c * self._values)

    __rmul__ = lambda self, c: self.scale(c)  # noqa: E731

    def __eq__(self, other):
        return (isinstance(other, Cocycle2) and other.group is self.group
                and other.modulus == self.modulus and np.array_equal(self.table, other.table))

    def __hash__(self):
        return id(self)

    def to_json(self, group_ref=None) -> dict:
        return {"group": group_ref if group_ref is not None else self.group.name,
                "modulus": self.modulus, "values": self.table.reshape(-1).tolist()}

    @classmethod
    def from_json(cls, data, group: FiniteGroup) -> "Cocycle2":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        beta = cls(group, int(data["modulus"]), values=np.asarray(data["values"], np.int64))
        if not beta.is_normalized():
            beta = normalize(beta)
        return beta


def normalize(beta: Cocycle2) -> Cocycle2:
    """Subtract the constant coboundary ``beta(e, e)``; cocycles become normalized."""
    e = beta.group.identity
    return Cocycle2(beta.group, beta.modulus, values=beta.table - beta(e, e))


def zero_cocycle(G: FiniteGroup, m: int) -> Cocycle2:
    return Cocycle2(G, m, cochain=np.zeros(G.order, np.int64))


def coboundary(G: FiniteGroup, t, m: int, lazy: bool | None = None) -> Cocycle2:
    """``(d t)(g, h) = t(g) + t(h) - t(gh)`` for a 1-cochain with ``t(e)`` shifted to 0."""
    beta = Cocycle2(G, m, cochain=t)
    if lazy is None:
        lazy = G.order > 512
    return beta if lazy else Cocycle2(G, m, values=beta.table)


def random_coboundary(G: FiniteGroup, m: int, seed: int = 0, lazy: bool | None = None) -> Cocycle2:
    t = np.random.default_rng(seed).integers(0, m, size=G.order)
    return coboundary(G, t, m, lazy)


# --------------------------------------------------------------------------
# the reduced linear system
# --------------------------------------------------------------------------

@dataclass
class CocycleSystem:
    group: FiniteGroup
    gens: list
    pos: np.ndarray          # element -> row position among non-identity elements, -1 for e
    L: np.ndarray            # (n, n, nvars): beta(g, y) = L[y, g] . x
    relations: np.ndarray    # rows cutting out Z^2
    boundaries: np.ndarray   # rows spanning B^2 (one per non-identity u)

    @property
    def nvars(self) -> int:
        return self.L.shape[2]

    def var(self, g, j):
        return self.pos[g] * len(self.gens) + j

    def table_from(self, x, m) -> np.ndarray:
        """Dense cocycle table from a solution vector."""
        x = np.asarray(x, np.int64) % m
        return (np.tensordot(self.L.astype(np.int64), x, axes=([2], [0])).T) % m


def cocycle_system(G: FiniteGroup) -> CocycleSystem:
    cached = G.__dict__.get("_cocycle_system")
    if cached is not None:
        return cached
    n = G.order
    e = G.identity
    S = generating_set(G)
    k = len(S)
    pos = np.full(n, -1, np.int64)
    others = np.array([g for g in range(n) if g != e], np.int64)
    pos[others] = np.arange(n - 1)
    nv = (n - 1) * k
    ar = np.arange(n)
    rperm = [G.right_perm(s) for s in S]
    right = np.stack(rperm, axis=1) if k else np.zeros((n, 0), np.int64)
    order, parent, pgen = kernels.cayley_bfs(right, e)
    L = np.zeros((n, n, nv), np.int16)

    def onehot_rows(targets, j):
        """Matrix with ``+1`` at ``(g, var(targets[g], j))`` where the target is not ``e``."""
        M = np.zeros((n, nv), np.int16)
        ok = targets != e
        M[ar[ok], pos[targets[ok]] * k + j] = 1
        return M

    for y in order[1:]:
        p, j = parent[y], pgen[y]
        gp = G.right_perm(p) if p != e else ar
        block = L[p] + onehot_rows(gp, j)
        if p != e:
            block[:, pos[p] * k + j] -= 1
        L[y] = block
    tree = set(zip(parent[order[1:]].tolist(), pgen[order[1:]].tolist()))
    rows = []
    for h in range(n):
        gh = G.right_perm(h) if h != e else ar
        for j in range(k):
            if (h, j) in tree:
                continue
            y = rperm[j][h]
            block = L[y] - L[h] - onehot_rows(gh, j)
            if h != e:
                block[:, pos[h] * k + j] += 1
            rows.append(np.delete(block, e, axis=0))
    relations = np.concatenate(rows, axis=0) if rows else np.zeros((0, nv), np.int16)
    relations = relations[relations.any(axis=1)]
    B = np.zeros((n - 1, nv), np.int16)
    for j, s in enumerate(S):
        for g in others:
            c = pos[g] * k + j
            B[pos[g], c] += 1
            B[pos[s], c] += 1
            gs = rperm[j][g]
            if gs != e:
                B[pos[gs], c] -= 1
    system = CocycleSystem(G, S, pos, L, relations, B)
    G.__dict__["_cocycle_system"] = system
    return system


# --------------------------------------------------------------------------
# H^2
# --------------------------------------------------------------------------

@dataclass
class CohomologyResult:
    group: FiniteGroup
    modulus: int
    structure: AbelianStructure
    basis: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.structure.order


def _check_bound(G, bound):
    if G.order > bound:
        raise CapacityError(f"|G| = {G.order} exceeds the cochain bound {bound}", bound=bound)


def _module_order(rows, p, k) -> int:
    """``log_p`` of the order of the Z/p^k-span of ``rows``."""
    if rows.shape[0] == 0 or rows.shape[1] == 0:
        return 0
    if p ** k == 2:
        return Gf2Matrix.from_dense(rows & 1).rank()
    vals, _, _, _ = snf_local(np.mod(rows.astype(np.int64), p ** k), p, k)
    return int(sum(k - int(v) for v in vals))


def h2_order(G: FiniteGroup, m: int, bound: int = DEFAULT_COCHAIN_BOUND) -> int:
    """``|H^2(G, Z/m)|`` without constructing representatives."""
    _check_bound(G, bound)
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if G.order == 1:
        return 1
    system = cocycle_system(G)
    total = 1
    for p, (q, _) in _crt_idempotents(m).items():
        k = factorize(q)[p]
        z_log = k * system.nvars - _module_order(system.relations, p, k)
        b_log = _module_order(system.boundaries, p, k)
        total *= p ** (z_log - b_log)
    return total


def second_cohomology(G: FiniteGroup, m: int, bound: int = DEFAULT_COCHAIN_BOUND) -> CohomologyResult:
    """``H^2(G, Z/m)`` as ``Z^2/B^2`` on normalized cochains, with basis cocycles."""
    _check_bound(G, bound)
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if G.order == 1:
        return CohomologyResult(G, m, AbelianStructure(), [])
    system = cocycle_system(G)
    nv = system.nvars
    parts = {}
    for p, (q, e) in _crt_idempotents(m).items():
        k = factorize(q)[p]
        if q == 2:
            Z = Gf2Matrix.from_dense(system.relations & 1).nullspace()
            reps = gf2_quotient(Z, system.boundaries & 1, nv)
            gens = [(2, np.asarray(r, np.int64)) for r in reps]
        else:
            Z = _kernel_basis(system.relations, p, k)
            structure_q, reps = quotient_structure(Z, np.mod(system.boundaries.astype(np.int64), q), q,
                                                   return_representatives=True)
            gens = list(zip(structure_q.divisors, reps))
        parts[p] = [(o, (np.asarray(v, dtype=object) * e) % m) for o, v in gens]
    structure, vecs = _combine_primary(parts, m, nv)
    basis = [Cocycle2(G, m, values=system.table_from(v, m)) for v in vecs]
    return CohomologyResult(G, m, structure, basis)


def _kernel_basis(rows, p, k):
    """Generators of ``{x : rows x = 0 mod p^k}``."""
    q = p ** k
    nv = rows.shape[1]
    vals, V, _, _ = snf_local(np.mod(rows.astype(np.int64), q), p, k)
    out = []
    for j in range(nv):
        v = int(vals[j]) if j < len(vals) else k
        if v == 0:
            continue
        out.append((np.asarray(V[:, j], np.int64) * p ** (k - v)) % q)
    return out


def is_coboundary(beta: Cocycle2):
    """A normalized 1-cochain ``s`` with ``beta = d s``, or ``None``."""
    G = beta.group
    m = beta.modulus
    if beta.is_lazy:
        s = beta.cochain.copy()
        _verify_witness(beta, s)
        return s
    if not beta.is_normalized():
        raise ContractViolation("cocycle is not normalized")
    if not beta.check_cocycle():
        raise ContractViolation("input violates the cocycle identity")
    n = G.order
    e = G.identity
    if n == 1:
        return np.zeros(1, np.int64)
    S = generating_set(G)
    others = [g for g in range(n) if g != e]
    pos = {g: i for i, g in enumerate(others)}
    rows, rhs = [], []
    for s in S:
        rs = G.right_perm(s)
        for g in others:
            row = [0] * (n - 1)
            row[pos[g]] += 1
            row[pos[s]] += 1
            if rs[g] != e:
                row[pos[int(rs[g])]] -= 1
            rows.append(row)
            rhs.append(beta(g, s))
    sol = solve_mod(rows, rhs, m)
    if sol is None:
        return None
    t = np.zeros(n, np.int64)
    t[others] = sol
    _verify_witness(beta, t)
    return t


def _verify_witness(beta, t):
    G = beta.group
    n = G.order
    if n <= TABLE_LIMIT:
        d = coboundary(G, t, beta.modulus, lazy=False).table
        ok = np.array_equal(d, beta.table)
    else:
        ar = np.arange(n)
        ok = all(np.array_equal(beta.values_at(ar, np.full(n, s)),
                                (t[ar] + t[s] - t[G.right_perm(s)]) % beta.modulus)
                 for s in generating_set(G))
    if not ok:
        raise AssertionError("coboundary witness failed verification")


def cohomologous(a: Cocycle2, b: Cocycle2) -> bool:
    return is_coboundary(a - b) is not None


# --------------------------------------------------------------------------
# abelian-group functors
# --------------------------------------------------------------------------

def ext1(A: AbelianStructure, m: int) -> AbelianStructure:
    """``Ext^1(A, Z/m) = sum Z/gcd(d_i, m)``."""
    return AbelianStructure.from_cyclic_orders(g for g in (gcd(d, m) for d in A.divisors) if g > 1)


def lambda2(A: AbelianStructure) -> AbelianStructure:
    """``Lambda^2`` of ``sum Z/d_i`` (chain order) is ``sum_{i<j} Z/d_i``."""
    d = A.divisors
    return AbelianStructure.from_cyclic_orders(d[i] for i in range(len(d)) for _ in range(i + 1, len(d)))


def hom_order(A: AbelianStructure, m: int) -> int:
    return A.hom_order(m)


def schur_multiplier(G: FiniteGroup, bound: int = DEFAULT_COCHAIN_BOUND) -> AbelianStructure:
    """``M(G)`` from ``|H^2(G, Z/p^k)| / |Ext^1(G^ab, Z/p^k)| = |Hom(M, Z/p^k)|``.

    ``log_p |Hom(M, Z/p^k)| - log_p |Hom(M, Z/p^{k-1})|`` counts the cyclic
    factors of order at least ``p^k``; stop at the first zero increment or at
    ``v_p(|G|)`` since the exponent of ``M`` divides ``|G|``.
    """
    _check_bound(G, bound)
    ab = abelianization(G)
    primary = {}
    for p, e in factorize(G.order).items() if G.order > 1 else []:
        h = [0]
        for k in range(1, e + 1):
            q = p ** k
            ratio, rem = divmod(h2_order(G, q, bound), ab.hom_order(q))
            if rem:
                raise AssertionError("UCT cardinality violated")
            h.append(_exact_log(ratio, p))
            if h[-1] == h[-2]:
                break
        ge = [h[i] - h[i - 1] for i in range(1, len(h))]
        exps = []
        for i, c in enumerate(ge):
            nxt = ge[i + 1] if i + 1 < len(ge) else 0
            exps += [i + 1] * (c - nxt)
        primary[p] = exps
    return AbelianStructure(tuple(chain_from_primary(primary)))


def _exact_log(x, p):
    e = 0
    while x % p == 0 and x > 1:
        x //= p
        e += 1
    if x != 1:
        raise AssertionError(f"{x * p ** e} is not a power of {p}")
    return e


# --------------------------------------------------------------------------
# the V = Z/2 + Z/2 equivariant splitting question
# --------------------------------------------------------------------------

def _automorphisms(G: FiniteGroup):
    """All automorphisms as index arrays (images of a generating set, extended by words)."""
    from itertools import product

    S = generating_set(G)
    order, parent, pgen = kernels.cayley_bfs(np.stack([G.right_perm(s) for s in S], axis=1), G.identity)
    autos = []
    for imgs in product(range(G.order), repeat=len(S)):
        phi = np.full(G.order, -1, np.int64)
        phi[G.identity] = G.identity
        for y in order[1:]:
            phi[y] = G.mul(phi[parent[y]], imgs[pgen[y]])
        if np.unique(phi).size != G.order:
            continue
        tab = G.table
        if np.array_equal(phi[tab], tab[phi[:, None], phi[None, :]]):
            autos.append(phi)
    return autos


def aut_splitting_report() -> dict:
    """Decide whether ``0 -> Ext^1(V, Z/2) -> H^2(V, Z/2) -> Hom(Lambda^2 V, Z/2) -> 0``
    has an ``Aut(V)``-equivariant section for ``V = Z/2 + Z/2``.

    Hom(Lambda^2 V, Z/2) is Z/2, so a section is the choice of a class with
    nonzero commutator pairing; it is equivariant iff that class is
    ``Aut(V)``-fixed (checked after confirming the pairing class is fixed).
    """
    from itertools import product

    from .groups import abelian_group

    V = abelian_group([2, 2], name="V")
    res = second_cohomology(V, 2)
    n = V.order
    e1, e2 = 1, 2
    e12 = V.mul(e1, e2)
    classes = []
    for coeffs in product(range(2), repeat=len(res.basis)):
        beta = zero_cocycle(V, 2)
        beta = Cocycle2(V, 2, values=beta.table)
        for c, b in zip(coeffs, res.basis):
            if c:
                beta = beta + b
        classes.append((coeffs, beta))

    def class_index(beta):
        hits = [i for i, (_, c) in enumerate(classes) if cohomologous(beta, c)]
        if len(hits) != 1:
            raise AssertionError("class identification is not unique")
        return hits[0]

    autos = _automorphisms(V)
    entries = []
    for i, (coeffs, beta) in enumerate(classes):
        T = beta.table
        pairing = int((T[e1, e2] - T[e2, e1]) % 2)
        quad = [int(T[v, v]) for v in (e1, e12, e2)]
        a, c = quad[0], quad[2]
        b = (quad[1] - a - c) % 2
        images = []
        for phi in autos:
            pulled = Cocycle2(V, 2, values=T[phi[:, None], phi[None, :]])
            images.append(class_index(pulled))
        entries.append({
            "class": i,
            "coordinates": list(coeffs),
            "quadratic_form": {"x^2": a, "xy": b, "y^2": c},
            "pairing": pairing,
            "fixed_by_aut": all(j == i for j in images),
            "orbit": sorted(set(images)),
            "extension": _name_order8(beta),
        })
    # the pairing map must itself be equivariant: pullbacks keep the pairing value
    pairing_fixed = all(entries[j]["pairing"] == en["pairing"] for en in entries for j in en["orbit"])
    sections = [en for en in entries if en["pairing"] == 1]
    equivariant = [en for en in sections if en["fixed_by_aut"]]
    ext_part = [en for en in entries if en["pairing"] == 0]
    consistent = (
        len(entries) == 8 and len(autos) == 6 and len(ext_part) == 4 and len(sections) == 4
        and res.structure.divisors == (2, 2, 2)
    )
    return {
        "h2_structure": list(res.structure.divisors),
        "aut_order": len(autos),
        "candidates": entries,
        "pairing_class_fixed": pairing_fixed,
        "sections": [en["class"] for en in sections],
        "equivariant_sections": [en["class"] for en in equivariant],
        "equivariant_section_exists": bool(equivariant),
        "verdict": ("split: an Aut(V)-equivariant section exists" if equivariant
                    else "nonsplit: no Aut(V)-equivariant section"),
        "consistent": bool(consistent and pairing_fixed),
    }


def _name_order8(beta: Cocycle2) -> str:
    from .extensions import build_extension
    from .groups import is_abelian

    X = build_extension(beta.group, beta.modulus, beta)
    E = X.total
    count4 = int(np.count_nonzero(E.element_orders == 4))
    if is_abelian(E):
        return "Z/4 x Z/2" if count4 else "(Z/2)^3"
    return "Q8" if count4 == 6 else "D4"
