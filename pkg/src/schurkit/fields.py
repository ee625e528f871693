"""Finite fields F_q as integers ``sum c_i p^i`` over a fixed modulus."""
from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from .abelian import factorize

MAX_Q = 1 << 16
TABLE_Q = 256


def prime_power(q: int) -> tuple[int, int]:
    f = factorize(q) if q >= 2 else {}
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = f.items()
    return p, k


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by monic ``b`` (coefficient lists, low degree first)."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return [x % p for x in a[:db]]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Brute-force factor search: no monic divisor of degree ``1..deg/2``."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_mod(poly, list(low) + [1], p)):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree ``k`` (low degree first)."""
    if k == 1:
        return [0, 1]
    for low in product(range(p), repeat=k):
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")


class FieldFq:
    """F_q; element ``a`` has coefficient vector given by its base-``p`` digits."""

    def __init__(self, q: int):
        if q > MAX_Q:
            raise ValueError(f"field size {q} exceeds {MAX_Q}")
        self.p, self.k = prime_power(q)
        self.q = q
        self.modulus = tuple(smallest_irreducible(self.p, self.k))
        if not is_irreducible(list(self.modulus), self.p):
            raise AssertionError("modulus is reducible")
        self._pw = self.p ** np.arange(self.k, dtype=np.int64)
        self.digits = (np.arange(q)[:, None] // self._pw[None, :]) % self.p
        self.generator = self._find_generator()
        exp = np.empty(q - 1, np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            x = self._mul_poly(x, self.generator)
        if x != 1 or len(set(exp.tolist())) != q - 1:
            raise AssertionError("generator does not have order q-1")
        self.exp_table = exp
        self.log_table = np.full(q, -1, np.int64)
        self.log_table[exp] = np.arange(q - 1)

    # scalar helpers used during construction
    def to_vector(self, a: int) -> list[int]:
        return [int(c) for c in self.digits[a]]

    def from_vector(self, coeffs) -> int:
        return int(sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs)))

    def _mul_poly(self, a: int, b: int) -> int:
        da, db = self.to_vector(a), self.to_vector(b)
        prod_ = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod_[i + j] += x * y
        return self.from_vector(_poly_mod(prod_, list(self.modulus), self.p) if self.k > 1 else [prod_[0] % self.p])

    def _order_slow(self, a: int) -> int:
        x, n = a, 1
        while x != 1:
            x = self._mul_poly(x, a)
            n += 1
        return n

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        primes = list(factorize(self.q - 1))
        for g in range(2, self.q):
            if all(self._pow_slow(g, (self.q - 1) // r) != 1 for r in primes):
                return g
        raise AssertionError("multiplicative group not cyclic")

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_poly(r, a)
            a = self._mul_poly(a, a)
            e >>= 1
        return r

    # ---------------------------------------------------------- arithmetic

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        da = self.digits[np.asarray(a)]
        db = self.digits[np.asarray(b)]
        return ((da + db) % self.p) @ self._pw

    def neg(self, a):
        if self.p == 2:
            return np.asarray(a)
        return ((-self.digits[np.asarray(a)]) % self.p) @ self._pw

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, np.int64)
        b = np.asarray(b, np.int64)
        zero = (a == 0) | (b == 0)
        la = self.log_table[np.where(a == 0, 1, a)]
        lb = self.log_table[np.where(b == 0, 1, b)]
        out = self.exp_table[(la + lb) % (self.q - 1)]
        return np.where(zero, 0, out)

    def inv(self, a):
        a = np.asarray(a, np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse in F_q")
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, np.int64)
        la = self.log_table[np.where(a == 0, 1, a)]
        out = self.exp_table[(la * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(out)
        return np.where(a == 0, 0, out)

    def log(self, a) -> int:
        if a == 0:
            raise ValueError("log of 0")
        return int(self.log_table[a])

    def frobenius(self, a, times: int = 1):
        return self.pow(a, self.p ** times)

    def units(self) -> np.ndarray:
        return np.arange(1, self.q)

    @cached_property
    def add_table(self) -> np.ndarray | None:
        if self.q > TABLE_Q:
            return None
        x = np.arange(self.q)
        return np.asarray(self.add(x[:, None], x[None, :]), np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray | None:
        if self.q > TABLE_Q:
            return None
        x = np.arange(self.q)
        return np.asarray(self.mul(x[:, None], x[None, :]), np.int64)

    def __repr__(self):
        return f"FieldFq(q={self.q}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def field(q: int) -> FieldFq:
    return FieldFq(q)
