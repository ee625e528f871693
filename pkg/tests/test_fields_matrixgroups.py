from itertools import product

import numpy as np
import pytest

from schurkit.errors import PreconditionError
from schurkit.extensions import commutator_pairing
from schurkit.fields import field, is_irreducible, prime_power
from schurkit.groups import abelianization, center, conjugacy_classes, is_perfect
from schurkit.matrixgroups import (MatrixGroupSpec, classical_group, dual_sequence_check, heisenberg,
                                   mu_n_order, order_gl, order_sl, order_sp4, order_su,
                                   projective_points)

from oracles import f4_tables, su3_2_count

QS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def _mobius(n):
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


@pytest.mark.parametrize("q", QS)
def test_field_axioms(q):
    F = field(q)
    x = np.arange(q)
    A, M = F.add_table, F.mul_table
    assert np.array_equal(A, A.T) and np.array_equal(M, M.T)
    assert np.array_equal(A[0], x) and np.array_equal(M[1], x)
    # associativity and distributivity, exhaustively
    for a in range(q):
        assert np.array_equal(M[M[a]], M[a][M])
        assert np.array_equal(A[A[a]], A[a][A])
        assert np.array_equal(M[a][A], A[M[a][:, None], M[a][None, :]])
    u = F.units()
    assert np.all(F.mul(u, F.inv(u)) == 1)
    assert np.all(F.add(x, F.neg(x)) == 0)
    assert len(set(F.exp_table.tolist())) == q - 1


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27])
def test_frobenius_is_additive(q):
    F = field(q)
    x = np.arange(q)
    lhs = F.frobenius(F.add(x[:, None], x[None, :]))
    rhs = F.add(F.frobenius(x)[:, None], F.frobenius(x)[None, :])
    assert np.array_equal(lhs, rhs)
    assert np.array_equal(F.frobenius(x, F.k), x)


def test_f4_matches_hand_tables():
    A, M = f4_tables()
    F = field(4)
    assert np.array_equal(F.add_table, A) and np.array_equal(F.mul_table, M)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducible_count_matches_necklace_formula(p, k):
    count = sum(is_irreducible(list(low) + [1], p) for low in product(range(p), repeat=k))
    expected = sum(_mobius(d) * p ** (k // d) for d in range(1, k + 1) if k % d == 0) // k
    assert count == expected


def test_prime_power():
    assert prime_power(27) == (3, 3)
    with pytest.raises(ValueError):
        prime_power(12)


@pytest.mark.parametrize("family,n,q", [
    ("SL", 2, 2), ("SL", 2, 3), ("SL", 2, 4), ("SL", 2, 5), ("SL", 3, 2), ("SL", 3, 3),
    ("GL", 2, 3), ("GL", 3, 2), ("SP", 4, 2), ("SU", 3, 2), ("PSL", 2, 5), ("PGL", 2, 3),
])
def test_classical_orders(family, n, q):
    G = classical_group(MatrixGroupSpec(family, n, q))
    assert G.order == MatrixGroupSpec(family, n, q).expected_order()
    if family in ("SL", "SP", "SU"):
        ctx = G.context
        assert all(ctx.det(G.elements[g]) == 1 for g in G.gens)


def test_order_formulas():
    assert order_sl(2, 3) == 24 and order_gl(2, 2) == 6
    assert order_sp4(2) == 720 and order_su(3, 2) == 216


def test_su32_matches_brute_count():
    assert classical_group(MatrixGroupSpec("SU", 3, 2)).order == su3_2_count()


def test_unsupported_family():
    with pytest.raises(PreconditionError):
        MatrixGroupSpec("SL", 6, 2)


def test_psl25_is_a5_like():
    G = classical_group(MatrixGroupSpec("PSL", 2, 5))
    assert is_perfect(G) and len(conjugacy_classes(G)) == 5


def test_sl23_profile():
    G = classical_group(MatrixGroupSpec("SL", 2, 3))
    assert center(G).order == 2
    assert abelianization(G).divisors == (3,)


def test_projective_points_count():
    assert len(projective_points(field(3), 2)) == 4
    assert len(projective_points(field(4), 3)) == 21


@pytest.mark.parametrize("n,q", [(1, 2), (1, 3), (2, 2), (1, 5)])
def test_heisenberg(n, q):
    X = heisenberg(n, q)
    X.check()
    assert X.total.order == q ** (2 * n + 1)
    assert center(X.total).order == q
    P = commutator_pairing(X)
    assert not np.diag(P).any()


def test_heisenberg_needs_prime():
    with pytest.raises(PreconditionError):
        heisenberg(1, 4)


def test_mu_n():
    assert mu_n_order(2, 5) == 2 and mu_n_order(3, 4) == 3 and mu_n_order(3, 5) == 1


@pytest.mark.parametrize("n,q", [(2, 3), (2, 5), (3, 4), (3, 2)])
def test_dual_sequence(n, q):
    r = dual_sequence_check("SL", n, q)
    assert r["holds"] and r["center_is_mu_n"]
