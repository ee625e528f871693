"""Sign calculus of ``e_A`` with ``e_i^2 = 1``, the groups E_n and F_{n-1}, and double covers.

E_n element ``eps * e_A`` has index ``2 * mask(A) + (eps == -1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import CapacityError, PreconditionError
from .extensions import CentralExtension, is_split
from .groups import (FiniteGroup, Homomorphism, abelian_group, abelianization, center,
                     conjugacy_classes, derived_subgroup, quotient, subgroup_closure)
from .presentations import DEFAULT_COSET_CAP, cover_presentation, evaluate, even_words, realize

MAX_N = 16
_POP16 = np.array([bin(i).count("1") for i in range(1 << MAX_N)], dtype=np.int64)


def _mask(A) -> int:
    if isinstance(A, (int, np.integer)):
        return int(A)
    m = 0
    for i in A:
        if i < 1:
            raise ValueError("subset indices start at 1")
        m |= 1 << (i - 1)
    return m


def sign_parity(A, B) -> np.ndarray:
    """Parity of ``#{(i, j) : i in A, j in B, i > j}`` for masks (vectorized)."""
    A = np.asarray(A, np.int64)
    B = np.asarray(B, np.int64)
    t = np.zeros(np.broadcast(A, B).shape, np.int64)
    for j in range(MAX_N):
        t += ((B >> j) & 1) * _POP16[(A >> (j + 1)) & 0xFFFF]
    return t & 1


def sign_factor(A, B) -> int:
    """``eps(A, B)`` in ``e_A e_B = eps(A, B) e_{A xor B}``; subsets are 1-based index sets or masks."""
    return -1 if int(sign_parity(_mask(A), _mask(B))) else 1


@dataclass(frozen=True)
class CliffordElement:
    sign: int
    mask: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def from_subset(cls, sign, subset):
        return cls(sign, _mask(subset))

    def __mul__(self, other):
        eps = sign_factor(self.mask, other.mask)
        return CliffordElement(self.sign * other.sign * eps, self.mask ^ other.mask)

    @property
    def subset(self) -> tuple:
        return tuple(i + 1 for i in range(MAX_N) if self.mask >> i & 1)

    @property
    def index(self) -> int:
        return 2 * self.mask + (self.sign == -1)

    @classmethod
    def from_index(cls, x: int):
        return cls(-1 if x & 1 else 1, x >> 1)

    def __str__(self):
        body = "".join(f"e{i}" for i in self.subset) or "1"
        return ("-" if self.sign < 0 else "") + body


class _CliffordLabels:
    def __init__(self, size):
        self.size = size

    def __len__(self):
        return self.size

    def __getitem__(self, x):
        return str(CliffordElement.from_index(int(x)))


def clifford_E(n: int) -> FiniteGroup:
    """E_n, order ``2^(n+1)``, generated by ``-1, e_1, ..., e_n``."""
    if not 0 <= n <= MAX_N:
        raise CapacityError(f"E_n needs n <= {MAX_N}", bound=MAX_N)
    N = 1 << (n + 1)
    idx = np.arange(N)
    mask, neg = idx >> 1, idx & 1
    cols = [idx ^ 1]
    for i in range(n):
        b = 1 << i
        cols.append(2 * (mask ^ b) + (neg ^ sign_parity(mask, b)))
    G = FiniteGroup.from_cayley(np.stack(cols, axis=1), 0, labels=_CliffordLabels(N), name=f"E{n}")
    G.clifford_n = n
    return G


def clifford_F(n: int) -> FiniteGroup:
    """F_{n-1}: the even-subset subgroup of E_n, order ``2^n``; indices sorted by E_n index."""
    E = clifford_E(n)
    even = np.flatnonzero(_POP16[np.arange(E.order) >> 1] % 2 == 0)
    gens = [1] + [2 * (0b11 << i) for i in range(n - 1)]
    H = subgroup_closure(E, gens)
    if not np.array_equal(H.members, even):
        raise AssertionError("adjacent products do not span the even subsets")
    F = H.as_group(canonical=False)
    F.name = f"F{n - 1}"
    F.labels = [str(CliffordElement.from_index(int(x))) for x in F.embedding]
    F.clifford_n = n
    return F


def clifford_extension(n: int, which: str = "E") -> CentralExtension:
    """E_n over ``{+-1}^n`` or F_{n-1} over ``{+-1}^{n-1}``, kernel ``{+-1}``."""
    if which == "E":
        E = clifford_E(n)
        base = abelian_group([2] * n, name=f"2^{n}")
        proj = np.arange(E.order) >> 1
        section = 2 * np.arange(base.order)
        kcoord = np.where(np.arange(E.order) < 2, np.arange(E.order), -1)
        return CentralExtension(E, base, 2, 1, Homomorphism(E, base, proj), section, kcoord)
    if which == "F":
        F = clifford_F(n)
        emb = F.embedding
        k = n - 1
        base = abelian_group([2] * k, name=f"2^{k}")
        masks = emb >> 1
        proj = masks & ((1 << k) - 1)
        pos = {int(x): i for i, x in enumerate(emb)}
        bmask = np.arange(base.order)
        full = bmask | ((_POP16[bmask] & 1) << k)
        section = np.array([pos[2 * int(m)] for m in full], np.int64)
        kcoord = np.full(F.order, -1, np.int64)
        kcoord[pos[0]] = 0
        kcoord[pos[1]] = 1
        return CentralExtension(F, base, 2, pos[1], Homomorphism(F, base, proj), section, kcoord)
    raise ValueError("which must be 'E' or 'F'")


def top_element(n: int) -> int:
    """Index of ``e_1 ... e_n`` in E_n."""
    return 2 * ((1 << n) - 1)


def expected_center(n: int, which: str = "E") -> set:
    """Center predicted by the parity rule, as E_n indices."""
    base = {0, 1}
    with_top = (n % 2 == 1) if which == "E" else (n % 2 == 0)
    if with_top:
        t = top_element(n)
        base |= {t, t + 1}
    return base


def clifford_structure_checks(n: int) -> dict:
    E = clifford_E(n)
    F = clifford_F(n)
    out = {"n": n, "order_E": E.order == 2 ** (n + 1), "order_F": F.order == 2 ** n}
    zE = set(center(E).members.tolist())
    zF = set(F.embedding[center(F).members].tolist())
    out["center_E"] = zE == expected_center(n, "E")
    out["center_F"] = zF == expected_center(n, "F")
    XE = clifford_extension(n, "E")
    XE.check()
    out["quotient_elementary"] = abelianization(E).divisors == (2,) * n if n >= 2 else True
    if n >= 2:
        out["derived_E"] = set(derived_subgroup(E).members.tolist()) == {0, 1}
        XF = clifford_extension(n, "F")
        XF.check()
        out["nonsplit_E"] = not is_split(XE).split
        out["nonsplit_F"] = not is_split(XF).split
    return out


@dataclass
class ExtraspecialProfile:
    order: int
    linear_count: int
    nonlinear_count: int
    forced_dimension: int | None

    def to_json(self):
        return dict(self.__dict__)


def extraspecial_profile(G: FiniteGroup) -> ExtraspecialProfile:
    Z = center(G)
    D = derived_subgroup(G)
    if Z.order != 2:
        raise PreconditionError(f"center has order {Z.order}, expected 2")
    if not np.isin(Z.members, D.members).all():
        raise PreconditionError("center is not contained in the derived subgroup")
    lin = G.order // D.order
    classes = len(conjugacy_classes(G))
    nonlin = classes - lin
    dim = None
    if nonlin == 1:
        r = G.order - lin
        s = isqrt(r)
        if s * s != r:
            raise AssertionError("sum of squares is not a square")
        dim = s
    return ExtraspecialProfile(G.order, lin, nonlin, dim)


# --------------------------------------------------------------------------
# double covers of S_n and A_n
# --------------------------------------------------------------------------

def cover_extension(n: int, alternating: bool = True, far: str = "anticommute",
                    cap: int = DEFAULT_COSET_CAP) -> CentralExtension:
    """S~_n (or its even part A~_n) as an extension of ``S_n`` (``A_n``) by ``<z>``."""
    if n < 2:
        raise PreconditionError("covers need n >= 2")
    Gt = realize(cover_presentation(n, far), cap, name=f"S~{n}")
    z = Gt.gens[0]
    if alternating:
        H = subgroup_closure(Gt, [evaluate(Gt, w) for w in even_words(n)])
        total = H.as_group()
        total.name = f"A~{n}"
        z = int(np.flatnonzero(total.embedding == z)[0])
    else:
        total = Gt
    Zs = subgroup_closure(total, [z])
    if Zs.order != 2:
        raise AssertionError("z does not have order 2 in the cover")
    base, proj = quotient(total, Zs)
    section = np.full(base.order, -1, np.int64)
    imgs = proj.images
    section[imgs[::-1]] = np.arange(total.order)[::-1]
    kcoord = np.full(total.order, -1, np.int64)
    kcoord[total.identity] = 0
    kcoord[z] = 1
    X = CentralExtension(total, base, 2, z, proj, section, kcoord)
    return X


def double_cover_nontriviality(n: int, which: str) -> bool:
    which = which.lower()
    if which in ("e", "e-vs-base"):
        X = clifford_extension(n, "E")
    elif which in ("f", "f-vs-base"):
        X = clifford_extension(n, "F")
    elif which == "alt":
        X = cover_extension(n, True)
    elif which == "sym":
        X = cover_extension(n, False)
    else:
        raise ValueError("which must be one of E-vs-base, F-vs-base, Alt, Sym")
    return not is_split(X).split
