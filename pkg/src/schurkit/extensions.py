"""Central extensions ``0 -> Z/m -> E -> G -> 1``.

Extensions built from a cocycle index the pair ``(g, a)`` as ``g * m + a``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod

import numpy as np

from .cohomology import Cocycle2, coboundary, is_coboundary
from .errors import ContractViolation, PreconditionError
from .groups import (TABLE_LIMIT, FiniteGroup, Homomorphism, abelian_group, center,
                     generating_set, is_abelian, subgroup_closure)

COMPLEMENT_SEARCH_LIMIT = 10 ** 5


@dataclass
class CentralExtension:
    total: FiniteGroup
    base: FiniteGroup
    modulus: int
    kernel_gen: int
    projection: Homomorphism
    section: np.ndarray
    kernel_coord: np.ndarray = None   # total index -> exponent of kernel_gen, -1 outside the kernel
    cocycle: Cocycle2 | None = None

    def __post_init__(self):
        self.section = np.asarray(self.section, np.int64)
        if self.kernel_coord is None:
            self.kernel_coord = np.full(self.total.order, -1, np.int64)
            x = self.total.identity
            for a in range(self.modulus):
                self.kernel_coord[x] = a
                x = self.total.mul(x, self.kernel_gen)

    @property
    def kernel_elements(self) -> np.ndarray:
        out = np.empty(self.modulus, np.int64)
        idx = np.flatnonzero(self.kernel_coord >= 0)
        out[self.kernel_coord[idx]] = idx
        return out

    @property
    def kernel_embedding(self) -> Homomorphism:
        return Homomorphism(abelian_group([self.modulus]) if self.modulus > 1 else abelian_group([]),
                            self.total, self.kernel_elements)

    def lift(self, g, c: int = 0) -> int:
        """``section(g) * z^c``."""
        return self.total.mul(int(self.section[int(g)]), int(self.kernel_elements[c % self.modulus]))

    def check(self) -> None:
        """Raise :class:`ContractViolation` if a structural invariant fails."""
        E, G, m = self.total, self.base, self.modulus
        if E.order != G.order * m:
            raise ContractViolation("|total| != |base| * m")
        K = self.kernel_elements
        if np.unique(K).size != m:
            raise ContractViolation("kernel generator does not have order m")
        for s in generating_set(E):
            if not np.array_equal(E.mul_arrays(K, np.full(m, s)), E.mul_arrays(np.full(m, s), K)):
                raise ContractViolation("kernel is not central")
        if not np.all(self.projection.images[K] == G.identity):
            raise ContractViolation("projection is nontrivial on the kernel")
        if not np.array_equal(self.projection.images[self.section], np.arange(G.order)):
            raise ContractViolation("projection o section is not the identity")
        if not self.projection.check():
            raise ContractViolation("projection is not a homomorphism")


def build_extension(G: FiniteGroup, m: int, beta: Cocycle2 | None = None, validate: bool = True) -> CentralExtension:
    """Total group on pairs with ``(g, a)(h, b) = (gh, a + b + beta(g, h))``."""
    if beta is None:
        beta = Cocycle2(G, m, cochain=np.zeros(G.order, np.int64))
    if beta.group is not G or beta.modulus != m:
        raise ContractViolation("cocycle does not match group and modulus")
    if validate and not beta.is_lazy:
        if not beta.is_normalized():
            raise ContractViolation("cocycle is not normalized")
        if not beta.check_cocycle():
            raise ContractViolation("cocycle identity fails; the product would not be associative")
    n = G.order
    N = n * m
    e = G.identity
    gens = generating_set(G)
    idx = np.arange(N)
    g_of, a_of = idx // m, idx % m
    cols = []
    for s in gens:
        cols.append(G.right_perm(s)[g_of] * m + (a_of + beta.values_at(g_of, np.full(N, s))) % m)
    if m > 1:
        cols.append(g_of * m + (a_of + 1) % m)
    right = np.stack(cols, axis=1) if cols else np.zeros((N, 0), np.int64)
    gen_idx = [s * m for s in gens] + ([e * m + 1] if m > 1 else [])
    table = None
    if N <= TABLE_LIMIT and G.has_table:
        T = G.table
        B = beta.table
        table = (T[g_of[:, None], g_of[None, :]] * m
                 + (a_of[:, None] + a_of[None, :] + B[g_of[:, None], g_of[None, :]]) % m)
    E = FiniteGroup(right, gen_idx, e * m, table=table, name=f"E({G.name or G.order},{m})")
    proj = Homomorphism(E, G, g_of)
    kcoord = np.where(g_of == e, a_of, -1)
    X = CentralExtension(E, G, m, e * m + (1 % m), proj, np.arange(n) * m, kcoord, beta)
    return X


def extract_cocycle(X: CentralExtension) -> Cocycle2:
    """``beta(g, h) = coord(s(g) s(h) s(gh)^-1)``."""
    G, E, m = X.base, X.total, X.modulus
    n = G.order
    if n > TABLE_LIMIT:
        raise PreconditionError("cocycle extraction needs a base small enough for a dense table")
    s = X.section
    g, h = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    gh = G.table[g, h]
    prods = E.mul_arrays(E.mul_arrays(s[g], s[h]), E.inverse[s[gh]])
    vals = X.kernel_coord[prods]
    if (vals < 0).any():
        raise ContractViolation("section products leave the kernel")
    return Cocycle2(G, m, values=vals)


@dataclass
class SplitResult:
    split: bool
    witness_cochain: np.ndarray | None = None
    complement: np.ndarray | None = None
    routes: dict = field(default_factory=dict)

    def __bool__(self):
        return self.split


def _complement_search(X: CentralExtension):
    """Search lifts of base generators whose span is a complement.

    Returns ``(decided, members)``; undecided when the candidate count
    exceeds the search limit.
    """
    G, E, m = X.base, X.total, X.modulus
    gens = generating_set(G)
    if not gens:
        return True, np.array([E.identity])
    gorders = G.element_orders
    eorders = E.element_orders
    candidates = []
    for s in gens:
        lifts = [X.lift(s, c) for c in range(m)]
        candidates.append([x for x in lifts if eorders[x] == gorders[s]])
    if prod(len(c) for c in candidates) > COMPLEMENT_SEARCH_LIMIT:
        return False, None
    for choice in product(*candidates):
        H = subgroup_closure(E, choice)
        if H.order == G.order:
            return True, H.members
    return True, None


def is_split(X: CentralExtension) -> SplitResult:
    """Split iff the extracted cocycle is a coboundary; cross-checked by a complement search."""
    beta = extract_cocycle(X)
    t = is_coboundary(beta)
    routes = {"coboundary": t is not None}
    complement = None
    if t is not None:
        # s'(g) = s(g) z^{-t(g)} is a homomorphic section
        lifted = np.array([X.lift(g, -int(t[g])) for g in range(X.base.order)], np.int64)
        complement = np.sort(lifted)
        H = subgroup_closure(X.total, lifted)
        if H.order != X.base.order:
            raise AssertionError("coboundary witness does not give a complement")
    decided, found = _complement_search(X)
    if decided:
        routes["complement_search"] = found is not None
        if routes["complement_search"] != routes["coboundary"]:
            raise AssertionError("split routes disagree")
        if complement is None and found is not None:
            complement = found
    return SplitResult(t is not None, t, complement, routes)


def commutator_pairing(X: CentralExtension, seed: int = 0) -> np.ndarray:
    """``P[g, h] = [s(g), s(h)]`` in ``Z/m`` for an abelian base.

    Verified independent of lifts (a seeded second lift), bilinear and alternating.
    """
    G, E, m = X.base, X.total, X.modulus
    if not is_abelian(G):
        raise PreconditionError("commutator pairing needs an abelian base")
    n = G.order
    g, h = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")

    def pairing(lifts):
        a, b = lifts[g], lifts[h]
        comm = E.mul_arrays(E.mul_arrays(E.mul_arrays(a, b), E.inverse[a]), E.inverse[b])
        vals = X.kernel_coord[comm]
        if (vals < 0).any():
            raise ContractViolation("commutator of lifts left the kernel")
        return vals

    P = pairing(X.section)
    rng = np.random.default_rng(seed)
    other = np.array([X.lift(x, int(c)) for x, c in enumerate(rng.integers(0, m, n))], np.int64)
    if not np.array_equal(P, pairing(other)):
        raise AssertionError("commutator pairing depends on the lift")
    if np.diag(P).any():
        raise AssertionError("commutator pairing is not alternating")
    T = G.table
    for s in range(n):
        if not np.array_equal(P[T[s]] % m, (P[s][None, :] + P) % m):
            raise AssertionError("commutator pairing is not bilinear")
    return P


def equivalence_map(X1: CentralExtension, X2: CentralExtension) -> Homomorphism | None:
    """Isomorphism ``(g, a) -> (g, a + c(g))`` fixing kernel and base, if the cocycles are cohomologous."""
    b1, b2 = extract_cocycle(X1), extract_cocycle(X2)
    t = is_coboundary(b2 - b1)
    if t is None:
        return None
    m = X1.modulus
    E1 = X1.total
    images = np.empty(E1.order, np.int64)
    # b2 = b1 + d t, so c = -t
    for g in range(X1.base.order):
        for a in range(m):
            x = E1.mul(int(X1.section[g]), int(X1.kernel_elements[a]))
            images[x] = X2.lift(g, a - int(t[g]))
    hom = Homomorphism(E1, X2.total, images)
    if not (hom.check() and hom.is_injective()):
        raise AssertionError("equivalence map is not an isomorphism")
    return hom


def direct_product(G: FiniteGroup, m: int) -> CentralExtension:
    return build_extension(G, m, coboundary(G, np.zeros(G.order, np.int64), m))


def center_order(X: CentralExtension) -> int:
    return center(X.total).order
