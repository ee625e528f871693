"""Finite groups on element indices ``0..n-1``.

Every group carries its right Cayley action ``right[x, j] = x * gens[j]``.
Groups of order <= ``TABLE_LIMIT`` also cache the full multiplication
table; larger ones multiply by walking the generator word of the right
operand (a BFS spanning tree from the identity) or, when they came from a
concrete context (permutations, matrices), by multiplying representatives.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .abelian import AbelianStructure, chain_from_primary, factorize
from .errors import CapacityError, ContractViolation

TABLE_LIMIT = 4096
DEFAULT_CAP = 10 ** 6
EXHAUSTIVE_AXIOM_LIMIT = 512


class FiniteGroup:
    """A finite group with a fixed generating sequence.

    ``right`` has shape ``(order, len(gens))``. ``gens`` may repeat elements
    or contain the identity (presentations do this); use
    :func:`generating_set` for a clean one.
    """

    def __init__(self, right, gens, identity=0, *, table=None, labels=None,
                 context=None, elements=None, name=None):
        right = np.ascontiguousarray(right, dtype=np.int64)
        if right.ndim != 2:
            right = right.reshape(-1, 0)
        self.right = right
        self.order = int(right.shape[0])
        self.gens = tuple(int(g) for g in gens)
        if len(self.gens) != right.shape[1]:
            raise ValueError("right action has one column per generator")
        self.identity = int(identity)
        self.labels = labels
        self.context = context
        self.elements = elements
        self.name = name
        if table is not None:
            self.__dict__["table"] = np.ascontiguousarray(table, dtype=np.int32)

    # ------------------------------------------------------------------ build

    @classmethod
    def from_table(cls, table, labels=None, validate=True, name=None):
        table = np.ascontiguousarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n) or n == 0:
            raise ContractViolation("multiplication table must be square and non-empty")
        if table.min() < 0 or table.max() >= n:
            raise ContractViolation("table entries out of range")
        ar = np.arange(n)
        ids = [e for e in range(n) if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar)]
        if not ids:
            raise ContractViolation("no two-sided identity in table")
        e = ids[0]
        gens = _greedy_generators_from_table(table, e)
        G = cls(table[:, gens] if gens else np.zeros((n, 0), np.int64), gens, e,
                table=table, labels=labels, name=name)
        if validate:
            check_axioms(G)
        return G

    @classmethod
    def from_cayley(cls, right, identity, *, canonical=False, labels=None,
                    context=None, elements=None, name=None, build_table=True):
        """Group from a right Cayley action; ``canonical`` re-indexes in BFS order."""
        right = np.ascontiguousarray(right, dtype=np.int64)
        n = right.shape[0]
        order, parent, pgen = kernels.cayley_bfs(right, identity)
        if len(order) != n:
            raise ContractViolation("generators do not generate the whole set")
        gens = right[identity].tolist()
        if canonical and n:
            relabel = np.empty(n, np.int64)
            relabel[order] = np.arange(n)
            right = relabel[right[order]]
            identity = 0
            gens = relabel[np.asarray(gens, np.int64)].tolist() if gens else []
            if labels is not None:
                labels = [labels[i] for i in order]
            if elements is not None:
                elements = elements[order]
            parent = np.where(parent[order] >= 0, relabel[np.maximum(parent[order], 0)], -1)
            pgen = pgen[order]
            order = np.arange(n)
        G = cls(right, gens, identity, labels=labels, context=context, elements=elements, name=name)
        G.__dict__["_tree"] = (order, parent, pgen)
        if build_table and n <= TABLE_LIMIT:
            G.__dict__["table"] = kernels.fill_table(right, order, parent, pgen)
        return G

    # ---------------------------------------------------------------- caches

    @cached_property
    def _tree(self):
        return kernels.cayley_bfs(self.right, self.identity)

    @cached_property
    def table(self):
        if self.order > TABLE_LIMIT:
            return None
        order, parent, pgen = self._tree
        return kernels.fill_table(self.right, order, parent, pgen)

    @property
    def has_table(self):
        return self.table is not None

    @cached_property
    def _words(self):
        order, parent, pgen = self._tree
        n = self.order
        depth = np.full(n, -1, np.int64)
        depth[self.identity] = 0
        rest = order[1:]
        while rest.size:
            ready = depth[parent[rest]] >= 0
            depth[rest[ready]] = depth[parent[rest[ready]]] + 1
            rest = rest[~ready]
        D = int(depth.max()) if n else 0
        W = np.full((n, max(D, 1)), -1, np.int16)
        for d in range(1, D + 1):
            ys = np.flatnonzero(depth == d)
            W[ys] = W[parent[ys]]
            W[ys, d - 1] = pgen[ys]
        return W, depth

    @cached_property
    def _right_inverse(self):
        rinv = np.empty_like(self.right)
        ar = np.arange(self.order)
        for j in range(self.right.shape[1]):
            rinv[self.right[:, j], j] = ar
        return rinv

    @cached_property
    def inverse(self) -> np.ndarray:
        n = self.order
        if self.has_table:
            rows, cols = np.nonzero(self.table == self.identity)
            inv = np.empty(n, np.int64)
            inv[rows] = cols
            return inv
        W, _ = self._words
        cur = np.full(n, self.identity, np.int64)
        rinv = self._right_inverse
        for d in range(W.shape[1] - 1, -1, -1):
            g = W[:, d].astype(np.int64)
            m = g >= 0
            cur[m] = rinv[cur[m], g[m]]
        return cur

    @cached_property
    def left(self) -> np.ndarray:
        """``left[x, j] = gens[j] * x``."""
        n = self.order
        out = np.empty_like(self.right)
        ar = np.arange(n)
        for j, g in enumerate(self.gens):
            out[:, j] = self.mul_arrays(np.full(n, g, np.int64), ar)
        return out

    @cached_property
    def _key_index(self):
        if self.elements is None or self.context is None:
            return None
        return {k: i for i, k in enumerate(self.context.keys(self.elements))}

    # -------------------------------------------------------------- algebra

    def mul(self, x, y) -> int:
        x, y = int(x), int(y)
        if self.has_table:
            return int(self.table[x, y])
        if self._key_index is not None:
            prod = self.context.mul(self.elements[x], self.elements[y])
            return self._key_index[self.context.key(prod)]
        W, depth = self._words
        cur = x
        for g in W[y, : depth[y]]:
            cur = int(self.right[cur, g])
        return cur

    def mul_arrays(self, xs, ys) -> np.ndarray:
        """Elementwise products ``xs[i] * ys[i]``."""
        xs = np.asarray(xs, np.int64)
        ys = np.asarray(ys, np.int64)
        xs, ys = np.broadcast_arrays(xs, ys)
        if self.has_table:
            return self.table[xs, ys].astype(np.int64)
        W, depth = self._words
        cur = xs.astype(np.int64, copy=True).reshape(-1)
        yf = ys.reshape(-1)
        for d in range(W.shape[1]):
            g = W[yf, d].astype(np.int64)
            m = g >= 0
            if not m.any():
                break
            cur[m] = self.right[cur[m], g[m]]
        return cur.reshape(xs.shape)

    def inv(self, x) -> int:
        return int(self.inverse[int(x)])

    def power(self, x, e: int) -> int:
        x = int(x)
        if e < 0:
            x, e = self.inv(x), -e
        result = self.identity
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def power_arrays(self, xs, e: int) -> np.ndarray:
        xs = np.asarray(xs, np.int64)
        result = np.full(xs.shape, self.identity, np.int64)
        base = xs.copy()
        while e:
            if e & 1:
                result = self.mul_arrays(result, base)
            base = self.mul_arrays(base, base)
            e >>= 1
        return result

    def commutator(self, x, y) -> int:
        """``x y x^-1 y^-1``."""
        return self.mul(self.mul(self.mul(x, y), self.inv(x)), self.inv(y))

    def right_perm(self, s) -> np.ndarray:
        """Permutation ``x -> x * s`` of all elements."""
        if self.has_table:
            return self.table[:, int(s)].astype(np.int64)
        return self.mul_arrays(np.arange(self.order), np.full(self.order, int(s)))

    def left_perm(self, s) -> np.ndarray:
        if self.has_table:
            return self.table[int(s)].astype(np.int64)
        return self.mul_arrays(np.full(self.order, int(s)), np.arange(self.order))

    def conjugation_perm(self, g) -> np.ndarray:
        """``x -> g^-1 x g``."""
        g = int(g)
        return self.mul_arrays(self.mul_arrays(np.full(self.order, self.inv(g)), np.arange(self.order)),
                               np.full(self.order, g))

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        xs = np.arange(n)
        orders = np.zeros(n, np.int64)
        cur = xs.copy()
        k = 1
        while True:
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            cur = self.mul_arrays(cur, xs)
            k += 1

    def index_of(self, element) -> int:
        """Index of a concrete element of the backing context."""
        if self._key_index is None:
            raise ContractViolation("group has no backing context")
        key = self.context.key(self.context.normalize(element))
        try:
            return self._key_index[key]
        except KeyError:
            raise ContractViolation("element is not in the group") from None

    def label(self, x) -> str:
        if self.labels is not None:
            return str(self.labels[x])
        return str(x)

    def __len__(self):
        return self.order

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{nm} order={self.order}>"


def _greedy_generators_from_table(table, e):
    n = table.shape[0]
    inside = np.zeros(n, bool)
    inside[e] = True
    gens = []
    members = np.array([e])
    for x in range(n):
        if inside[x]:
            continue
        gens.append(x)
        members = _closure_members(lambda s: table[:, s], gens, e, n)
        inside[:] = False
        inside[members] = True
        if inside.all():
            break
    return gens


def _closure_members(perm_of, gens, e, n):
    perms = [np.asarray(perm_of(s), np.int64) for s in gens]
    seen = np.zeros(n, bool)
    seen[e] = True
    frontier = np.array([e], np.int64)
    while frontier.size:
        nxt = np.concatenate([p[frontier] for p in perms]) if perms else np.array([], np.int64)
        nxt = np.unique(nxt[~seen[nxt]])
        seen[nxt] = True
        frontier = nxt
    return np.flatnonzero(seen)


# --------------------------------------------------------------------------
# subgroups and homomorphisms
# --------------------------------------------------------------------------

@dataclass
class Subgroup:
    parent: FiniteGroup
    members: np.ndarray
    gens: tuple = ()

    def __post_init__(self):
        self.members = np.unique(np.asarray(self.members, np.int64))

    @property
    def order(self) -> int:
        return int(self.members.size)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, bool)
        m[self.members] = True
        return m

    def __contains__(self, x):
        return bool(self.mask[int(x)])

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def as_group(self, canonical=True) -> FiniteGroup:
        """The subgroup as a standalone group (BFS order over ``gens``)."""
        G = self.parent
        gens = [g for g in dict.fromkeys(int(s) for s in self.gens) if g != G.identity]
        if not gens and self.order > 1:
            gens = generating_set_of(G, self.members)
        pos = np.full(G.order, -1, np.int64)
        pos[self.members] = np.arange(self.order)
        cols = [pos[G.right_perm(s)[self.members]] for s in gens]
        right = np.stack(cols, axis=1) if cols else np.zeros((self.order, 0), np.int64)
        labels = [G.labels[i] for i in self.members] if G.labels is not None else None
        elements = G.elements[self.members] if G.elements is not None else None
        H = FiniteGroup.from_cayley(right, int(pos[G.identity]), canonical=canonical, labels=labels,
                                    context=G.context, elements=elements)
        if canonical:
            order = kernels.cayley_bfs(right, int(pos[G.identity]))[0]
            H.embedding = self.members[order]
        else:
            H.embedding = self.members.copy()
        return H


@dataclass
class Homomorphism:
    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.images = np.asarray(self.images, np.int64)

    def __call__(self, x):
        return int(self.images[int(x)])

    def check(self) -> bool:
        """Multiplicative on ``x * s`` for every element ``x`` and generator ``s``
        (enough, by induction on word length)."""
        S, T = self.source, self.target
        if self.images[S.identity] != T.identity:
            return False
        for j, s in enumerate(S.gens):
            lhs = self.images[S.right[:, j]]
            rhs = T.mul_arrays(self.images, np.full(S.order, self.images[s]))
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, np.flatnonzero(self.images == self.target.identity))

    def is_injective(self) -> bool:
        return np.unique(self.images).size == self.source.order

    def is_surjective(self) -> bool:
        return np.unique(self.images).size == self.target.order


# --------------------------------------------------------------------------
# structural queries
# --------------------------------------------------------------------------

def subgroup_closure(G: FiniteGroup, elements) -> Subgroup:
    gens = [int(s) for s in elements]
    members = _closure_members(G.right_perm, gens, G.identity, G.order)
    return Subgroup(G, members, tuple(gens))


def generating_set_of(G: FiniteGroup, members) -> list[int]:
    """Greedy generating set for the subgroup with the given members."""
    target = np.unique(np.asarray(members, np.int64))
    gens: list[int] = []
    inside = np.zeros(G.order, bool)
    inside[G.identity] = True
    for x in target:
        if inside[x]:
            continue
        gens.append(int(x))
        inside[:] = False
        inside[_closure_members(G.right_perm, gens, G.identity, G.order)] = True
    return gens


def generating_set(G: FiniteGroup) -> list[int]:
    """Distinct non-identity generators from ``G.gens``, dropping redundant ones."""
    cand = [g for g in dict.fromkeys(G.gens) if g != G.identity]
    gens: list[int] = []
    inside = np.zeros(G.order, bool)
    inside[G.identity] = True
    for g in cand:
        if inside[g]:
            continue
        gens.append(g)
        inside[:] = False
        inside[_closure_members(G.right_perm, gens, G.identity, G.order)] = True
        if inside.all():
            break
    return gens


def is_abelian(G: FiniteGroup) -> bool:
    gens = generating_set(G)
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            if G.mul(a, b) != G.mul(b, a):
                return False
    return True


def center(G: FiniteGroup) -> Subgroup:
    gens = generating_set(G)
    keep = np.ones(G.order, bool)
    for s in gens:
        keep &= G.right_perm(s) == G.left_perm(s)
    return Subgroup(G, np.flatnonzero(keep))


def normal_closure(G: FiniteGroup, elements) -> Subgroup:
    S = [int(s) for s in elements]
    gens = generating_set(G)
    conj = [G.conjugation_perm(g) for g in gens]
    while True:
        H = subgroup_closure(G, S)
        added = False
        for c in conj:
            outside = H.members[~H.mask[c[H.members]]]
            if outside.size:
                S.append(int(c[outside[0]]))
                added = True
                break
        if not added:
            return Subgroup(G, H.members, tuple(S))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    gens = generating_set(G)
    comms = [G.commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    comms = [c for c in comms if c != G.identity]
    return normal_closure(G, comms)


def is_perfect(G: FiniteGroup) -> bool:
    return derived_subgroup(G).order == G.order


def _components(G: FiniteGroup, perms):
    n = G.order
    if not perms:
        return n, np.arange(n)
    src = np.concatenate([np.arange(n)] * len(perms))
    dst = np.concatenate(perms)
    graph = coo_matrix((np.ones(src.size, np.int8), (src, dst)), shape=(n, n))
    return connected_components(graph, directed=True, connection="weak")


def conjugacy_classes(G: FiniteGroup) -> list[np.ndarray]:
    """Classes ordered by least member; each class sorted."""
    perms = [G.conjugation_perm(g) for g in generating_set(G)]
    count, labels = _components(G, perms)
    classes = [[] for _ in range(count)]
    for x, c in enumerate(labels):
        classes[c].append(x)
    classes = [np.array(c, np.int64) for c in classes]
    classes.sort(key=lambda c: int(c[0]))
    return classes


def coset_labels(G: FiniteGroup, N: Subgroup):
    """Left cosets ``xN``: ``(count, label per element)``."""
    gens = list(N.gens) or generating_set_of(G, N.members)
    perms = [G.right_perm(s) for s in gens]
    return _components(G, perms)


def quotient(G: FiniteGroup, N: Subgroup):
    """``G/N`` for normal ``N`` as a group plus the projection homomorphism."""
    count, lab = coset_labels(G, N)
    if count * N.order != G.order:
        raise AssertionError("coset count inconsistent with Lagrange")
    rep = np.full(count, -1, np.int64)
    rep[lab[::-1]] = np.arange(G.order)[::-1]
    right = lab[G.right[rep]]
    Q = FiniteGroup.from_cayley(right, int(lab[G.identity]), canonical=True)
    order = kernels.cayley_bfs(right, int(lab[G.identity]))[0]
    relabel = np.empty(count, np.int64)
    relabel[order] = np.arange(count)
    proj = Homomorphism(G, Q, relabel[lab])
    return Q, proj


def abelian_invariants(A: FiniteGroup) -> AbelianStructure:
    """Invariant factors of an abelian group by counting ``p^k``-torsion."""
    n = A.order
    primary = {}
    xs = np.arange(n)
    for p, e in factorize(n).items():
        counts = [1]
        cur = xs.copy()
        for _ in range(e):
            cur = A.power_arrays(cur, p)
            counts.append(int(np.count_nonzero(cur == A.identity)))
            if counts[-1] == n:
                break
        logs = [round(np.log(c) / np.log(p)) for c in counts]
        ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))]  # factors of order >= p^k
        exps = []
        for k in range(len(ge)):
            nxt = ge[k + 1] if k + 1 < len(ge) else 0
            exps += [k + 1] * (ge[k] - nxt)
        primary[p] = exps
    return AbelianStructure(tuple(chain_from_primary(primary)))


def abelianization(G: FiniteGroup) -> AbelianStructure:
    D = derived_subgroup(G)
    if D.order == G.order:
        return AbelianStructure()
    Q, _ = quotient(G, D)
    return abelian_invariants(Q)


def exponent(G: FiniteGroup) -> int:
    out = 1
    for o in np.unique(G.element_orders):
        out = out * int(o) // gcd(out, int(o))
    return out


def check_axioms(G: FiniteGroup, samples: int = 20000, seed: int = 0) -> None:
    """Raise :class:`ContractViolation` if identity, inverse or associativity fail.

    Associativity is exhaustive up to order 512 and sampled above.
    """
    n = G.order
    e = G.identity
    ar = np.arange(n)
    if not (np.array_equal(G.mul_arrays(np.full(n, e), ar), ar) and np.array_equal(G.mul_arrays(ar, np.full(n, e)), ar)):
        raise ContractViolation("identity is not two-sided")
    inv = G.inverse
    if not (np.all(G.mul_arrays(inv, ar) == e) and np.all(G.mul_arrays(ar, inv) == e)):
        raise ContractViolation("inverse law fails")
    if G.has_table and n <= EXHAUSTIVE_AXIOM_LIMIT:
        T = G.table
        for a in range(n):
            if not np.array_equal(T[T[a]], T[a][T]):
                raise ContractViolation(f"associativity fails with first factor {a}")
        return
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples))
    lhs = G.mul_arrays(G.mul_arrays(a, b), c)
    rhs = G.mul_arrays(a, G.mul_arrays(b, c))
    if not np.array_equal(lhs, rhs):
        raise ContractViolation("associativity fails on a sampled triple")


# --------------------------------------------------------------------------
# concrete contexts and closure
# --------------------------------------------------------------------------

def _void_keys(arr):
    arr = np.ascontiguousarray(arr)
    flat = arr.reshape(arr.shape[0], -1)
    return flat.view(np.dtype((np.void, flat.dtype.itemsize * flat.shape[1]))).reshape(-1).tolist()


class PermContext:
    """Permutations of ``range(degree)``; ``x * y`` applies ``x`` first."""

    def __init__(self, degree):
        self.degree = int(degree)
        self.dtype = np.int16 if degree < 32000 else np.int32

    def identity(self):
        return np.arange(self.degree, dtype=self.dtype)

    def normalize(self, x):
        return np.asarray(x, dtype=self.dtype)

    def mul(self, x, y):
        return y[x]

    def mul_batch(self, X, g):
        return g[X]

    def key(self, x):
        return np.ascontiguousarray(x, dtype=self.dtype).tobytes()

    def keys(self, X):
        return _void_keys(np.asarray(X, dtype=self.dtype))

    def label(self, x):
        return cycle_string(x)


def parse_cycles(text: str, degree: int | None = None) -> np.ndarray:
    """``"(1 2 3)(4 5)"`` (1-based) to an image array."""
    cycles = [[int(t) for t in c.replace(",", " ").split()] for c in re.findall(r"\(([^()]*)\)", text)]
    if not cycles and text.strip() not in ("", "()"):
        raise ValueError(f"bad cycle notation: {text!r}")
    top = max((max(c) for c in cycles if c), default=1)
    degree = max(degree or 0, top)
    perm = np.arange(degree)
    for c in cycles:
        if len(set(c)) != len(c) or min(c, default=1) < 1:
            raise ValueError(f"bad cycle {c}")
        for a, b in zip(c, c[1:] + c[:1]):
            perm[a - 1] = b - 1
    return perm


def cycle_string(perm) -> str:
    perm = list(map(int, perm))
    seen = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + " ".join(str(t + 1) for t in cyc) + ")")
    return "".join(parts) or "()"


def closure(generators, context=None, cap: int = DEFAULT_CAP, name=None) -> FiniteGroup:
    """Group generated by ``generators`` with canonical BFS indexing.

    ``context`` is a :class:`FiniteGroup` (generators are indices), a
    context object such as :class:`PermContext` or ``MatrixContext``, or
    ``None`` for permutations given as image arrays or cycle strings.
    """
    generators = list(generators)
    if isinstance(context, FiniteGroup):
        G = context
        return subgroup_closure(G, generators).as_group()
    if context is None:
        perms = [parse_cycles(g) if isinstance(g, str) else np.asarray(g) for g in generators]
        degree = max((len(p) for p in perms), default=1)
        context = PermContext(degree)
        generators = [np.concatenate([p, np.arange(len(p), degree)]) for p in perms]
    gens = [context.normalize(g) for g in generators]
    return _closure_in_context(context, gens, cap, name)


def _closure_in_context(ctx, gens, cap, name=None):
    e = ctx.identity()
    index = {ctx.key(e): 0}
    elems = [e[None]]
    k = len(gens)
    rows = []
    frontier = e[None]
    count = 1
    while frontier.shape[0]:
        prods = np.stack([ctx.mul_batch(frontier, g) for g in gens], axis=1) if k else frontier[:, None][:, :0]
        flat = prods.reshape((-1,) + e.shape)
        keys = ctx.keys(flat) if flat.shape[0] else []
        idx = np.empty(len(keys), np.int64)
        fresh = []
        for t, key in enumerate(keys):
            j = index.get(key)
            if j is None:
                j = count
                index[key] = j
                count += 1
                fresh.append(t)
                if count > cap:
                    raise CapacityError(f"closure exceeded element cap {cap}", bound=cap)
            idx[t] = j
        rows.append(idx.reshape(frontier.shape[0], k))
        frontier = flat[fresh] if fresh else flat[:0]
        if fresh:
            elems.append(frontier)
    right = np.concatenate(rows, axis=0) if rows else np.zeros((1, k), np.int64)
    elements = np.concatenate(elems, axis=0)
    labels = None
    if hasattr(ctx, "label"):
        labels = _LazyLabels(ctx, elements)
    return FiniteGroup.from_cayley(right, 0, context=ctx, elements=elements, labels=labels, name=name)


class _LazyLabels:
    def __init__(self, ctx, elements):
        self.ctx = ctx
        self.elements = elements

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        if isinstance(i, (int, np.integer)):
            return self.ctx.label(self.elements[int(i)])
        raise TypeError("label index must be an integer")

    def __iter__(self):
        return (self[i] for i in range(len(self)))


# --------------------------------------------------------------------------
# named small groups
# --------------------------------------------------------------------------

def abelian_group(divisors, name=None) -> FiniteGroup:
    """``Z/d1 + ... + Z/dk`` with mixed-radix indexing ``sum c_i * prod_{j<i} d_j``."""
    divisors = [int(d) for d in divisors]
    if any(d < 1 for d in divisors):
        raise ValueError("cyclic orders must be positive")
    n = int(np.prod(divisors)) if divisors else 1
    if n > DEFAULT_CAP:
        raise CapacityError(f"order {n} exceeds element cap {DEFAULT_CAP}", bound=DEFAULT_CAP)
    coords = np.zeros((n, len(divisors)), np.int64)
    stride = 1
    strides = []
    for i, d in enumerate(divisors):
        coords[:, i] = (np.arange(n) // stride) % d
        strides.append(stride)
        stride *= d
    cols = []
    for i, d in enumerate(divisors):
        if d == 1:
            continue
        shifted = coords.copy()
        shifted[:, i] = (shifted[:, i] + 1) % d
        cols.append(shifted @ np.array(strides, np.int64))
    right = np.stack(cols, axis=1) if cols else np.zeros((n, 0), np.int64)
    labels = [tuple(int(c) for c in row) for row in coords]
    G = FiniteGroup.from_cayley(right, 0, labels=labels, name=name or "x".join(f"Z{d}" for d in divisors) or "1")
    G.coordinates = coords
    G.divisors = tuple(divisors)
    return G


def cyclic(n: int) -> FiniteGroup:
    return abelian_group([n] if n > 1 else [], name=f"Z{n}")


def elementary(p: int, k: int) -> FiniteGroup:
    return abelian_group([p] * k, name=f"{p}^{k}")


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return closure([], PermContext(1), name="S1")
    gens = [np.roll(np.arange(n), -1), parse_cycles("(1 2)", n)] if n > 2 else [parse_cycles("(1 2)", 2)]
    return closure(gens, PermContext(n), name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    gens = [parse_cycles(f"({i} {i + 1} {i + 2})", n) for i in range(1, n - 1)]
    return closure(gens, PermContext(max(n, 1)), name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon, order ``2n``."""
    rot = np.roll(np.arange(n), -1)
    ref = (-np.arange(n)) % n
    return closure([rot, ref], PermContext(n), name=f"D{n}")


def quaternion() -> FiniteGroup:
    from .fields import field
    from .matrixgroups import MatrixContext

    ctx = MatrixContext(field(3), 2)
    i = np.array([[0, 1], [2, 0]])
    j = np.array([[1, 1], [1, 2]])
    return closure([i, j], ctx, name="Q8")


# --------------------------------------------------------------------------
# JSON table format
# --------------------------------------------------------------------------

def to_json(G: FiniteGroup) -> dict:
    if not G.has_table:
        raise CapacityError(f"order {G.order} too large for a table", bound=TABLE_LIMIT)
    out = {"order": G.order, "table": G.table.tolist()}
    if G.labels is not None:
        out["labels"] = [str(G.labels[i]) for i in range(G.order)]
    return out


def from_json(data) -> FiniteGroup:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    n = int(data["order"])
    table = np.asarray(data["table"], dtype=np.int64)
    if table.shape != (n, n):
        raise ContractViolation(f"table shape {table.shape} does not match order {n}")
    labels = data.get("labels")
    if labels is not None and len(labels) != n:
        raise ContractViolation("labels length does not match order")
    return FiniteGroup.from_table(table, labels=labels, validate=True)


def load_table(path) -> FiniteGroup:
    with open(path) as fh:
        return from_json(json.load(fh))
