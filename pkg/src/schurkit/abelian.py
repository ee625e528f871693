"""Finite abelian groups in invariant-factor form."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (inputs here are small)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def chain_from_primary(primary: dict[int, list[int]]) -> list[int]:
    """Merge p-primary exponent lists into an invariant-factor chain d1 | d2 | ..."""
    width = max((len(v) for v in primary.values()), default=0)
    chain = [1] * width
    for p, exps in primary.items():
        exps = sorted(e for e in exps if e > 0)
        for i, e in enumerate(reversed(exps)):
            chain[width - 1 - i] *= p ** e
    return [d for d in chain if d > 1]


@dataclass(frozen=True)
class AbelianStructure:
    """``Z/d1 + Z/d2 + ...`` with ``d1 | d2 | ...`` and every ``di >= 2``.

    The empty tuple is the trivial group.
    """

    divisors: tuple[int, ...] = ()

    def __post_init__(self):
        divs = tuple(int(d) for d in self.divisors)
        object.__setattr__(self, "divisors", divs)
        for d in divs:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {divs}")
        for a, b in zip(divs, divs[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken in {divs}")

    @classmethod
    def from_cyclic_orders(cls, orders) -> "AbelianStructure":
        """Normalise an arbitrary direct sum of cyclic groups ``Z/o1 + Z/o2 + ...``."""
        primary: dict[int, list[int]] = {}
        for o in orders:
            o = int(o)
            if o == 0:
                raise ValueError("infinite cyclic factor in a finite structure")
            for p, e in factorize(abs(o)).items():
                primary.setdefault(p, []).append(e)
        return cls(tuple(chain_from_primary(primary)))

    @classmethod
    def from_relations(cls, relations, ngens: int) -> "AbelianStructure":
        """Structure of ``Z^ngens / rowspan(relations)``; must be finite."""
        from .zlinalg import smith_normal_form

        rows = [list(map(int, r)) for r in relations]
        if ngens == 0:
            return cls()
        if not rows:
            raise ValueError("no relations: group is infinite")
        snf = smith_normal_form(rows)
        diag = [snf.D[i][i] for i in range(min(len(rows), ngens))]
        if len(diag) < ngens or any(d == 0 for d in diag):
            raise ValueError("relations leave a free part: group is infinite")
        return cls.from_cyclic_orders(abs(d) for d in diag)

    @property
    def order(self) -> int:
        return prod(self.divisors)

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def is_trivial(self) -> bool:
        return not self.divisors

    def hom_order(self, m: int) -> int:
        """``|Hom(A, Z/m)|`` (also ``|Ext^1(A, Z/m)|`` and ``|A / mA|``)."""
        return prod(gcd(d, m) for d in self.divisors)

    def p_exponents(self, p: int) -> list[int]:
        exps = []
        for d in self.divisors:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            if e:
                exps.append(e)
        return exps

    def __str__(self):
        if not self.divisors:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.divisors)

    def to_json(self):
        return list(self.divisors)
