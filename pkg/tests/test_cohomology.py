import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from schurkit.abelian import AbelianStructure
from schurkit.cohomology import (Cocycle2, aut_splitting_report, coboundary, cohomologous, ext1,
                                 h2_order, is_coboundary, lambda2, normalize, random_coboundary,
                                 schur_multiplier, second_cohomology, zero_cocycle)
from schurkit.errors import CapacityError, ContractViolation
from schurkit.groups import (abelian_group, abelianization, alternating, closure, cyclic, dihedral,
                             elementary, quaternion, symmetric)

from oracles import alternating_maps, h2_exhaustive, h2_order_full

MODULI = (2, 3, 4, 6)

# |H^2(G, Z/m)| for m = 2, 3, 4, 6 from the full n^2-variable oracle (tests/oracles.py),
# frozen because the oracle takes seconds per group.
FROZEN_H2 = {
    "dihedral(5)": (dihedral(5), (2, 1, 2, 2)),
    "abelian(2,4)": (abelian_group([2, 4]), (8, 1, 16, 8)),
    "abelian(3,3)": (abelian_group([3, 3]), (1, 27, 1, 27)),
    "dihedral(6)": (dihedral(6), (8, 1, 8, 8)),
    "cyclic(6)": (cyclic(6), (2, 3, 2, 6)),
    "alt(4)": (alternating(4), (2, 3, 2, 6)),
}


@pytest.mark.parametrize("G", [cyclic(2), cyclic(4), elementary(2, 2), symmetric(3), quaternion(),
                               dihedral(4), elementary(2, 3), cyclic(5)], ids=lambda G: G.name)
def test_h2_matches_full_oracle(G):
    assert [h2_order(G, m) for m in MODULI] == h2_order_full(G.table, MODULI)


@pytest.mark.parametrize("key", sorted(FROZEN_H2))
def test_h2_frozen_oracle_values(key):
    G, expected = FROZEN_H2[key]
    assert tuple(h2_order(G, m) for m in MODULI) == expected


def test_h2_alt4_live_oracle():
    assert h2_order_full(alternating(4).table, (2, 3)) == [h2_order(alternating(4), 2), h2_order(alternating(4), 3)]


def test_h2_exhaustive_order_three():
    assert h2_exhaustive(cyclic(3).table, 2) == 1 == h2_order(cyclic(3), 2)
    assert h2_exhaustive(cyclic(2).table, 2) == 2 == h2_order(cyclic(2), 2)


def test_h2_trivial_group():
    assert h2_order(cyclic(1), 5) == 1
    assert second_cohomology(cyclic(1), 5).structure.is_trivial()


@pytest.mark.parametrize("G,m,divisors", [
    (elementary(2, 2), 2, (2, 2, 2)), (cyclic(4), 4, (4,)), (quaternion(), 4, (2, 2)),
    (alternating(4), 6, (6,)), (abelian_group([2, 4]), 4, (2, 2, 4)),
])
def test_second_cohomology_structure_and_basis(G, m, divisors):
    res = second_cohomology(G, m)
    assert res.structure.divisors == divisors
    assert res.order == h2_order(G, m)
    for beta, d in zip(res.basis, divisors):
        assert beta.is_normalized() and beta.check_cocycle()
        assert is_coboundary(beta.scale(d)) is not None
        for p in (2, 3):
            if d % p == 0:
                assert is_coboundary(beta.scale(d // p)) is None


def test_is_coboundary_witness():
    G = symmetric(3)
    beta = random_coboundary(G, 6, seed=4)
    t = is_coboundary(beta)
    assert t is not None
    assert coboundary(G, t, 6) == beta


def test_cohomologous():
    G = dihedral(4)
    res = second_cohomology(G, 2)
    b = res.basis[0]
    assert cohomologous(b, b + random_coboundary(G, 2, seed=1))
    assert not cohomologous(b, zero_cocycle(G, 2))


def test_cocycle_validation():
    G = cyclic(2)
    beta = Cocycle2(G, 2, values=np.array([[0, 0], [0, 1]]))
    assert beta.check_cocycle()
    with pytest.raises(ContractViolation):
        Cocycle2(G, 2, values=np.zeros((3, 3)))


def test_non_cocycle_detected():
    G = cyclic(3)
    vals = np.zeros((3, 3), np.int64)
    vals[1, 1] = 1
    assert not Cocycle2(G, 2, values=vals).check_cocycle()


def test_normalize():
    G = cyclic(3)
    beta = Cocycle2(G, 5, values=np.full((3, 3), 2))
    assert not beta.is_normalized()
    assert normalize(beta).is_normalized() and normalize(beta).check_cocycle()


def test_cocycle_json_roundtrip():
    G = quaternion()
    beta = second_cohomology(G, 4).basis[0]
    again = Cocycle2.from_json(json.dumps(beta.to_json()), G)
    assert again == beta


def test_bound():
    with pytest.raises(CapacityError) as info:
        h2_order(alternating(5), 2, bound=59)
    assert info.value.bound == 59


@pytest.mark.parametrize("divisors", [[2, 2], [2, 2, 2], [2, 4], [3, 3], [2, 6]])
def test_lambda2_against_alternating_forms(divisors):
    A = AbelianStructure.from_cyclic_orders(divisors)
    e = max(A.divisors)
    assert lambda2(A).order == alternating_maps(divisors, e)


@pytest.mark.parametrize("divisors", [[2, 2], [2, 2, 2], [2, 4], [3, 3], [4], [2, 6]])
def test_multiplier_of_abelian_is_lambda2(divisors):
    G = abelian_group(divisors)
    assert schur_multiplier(G) == lambda2(AbelianStructure.from_cyclic_orders(divisors))


@pytest.mark.parametrize("G,expected", [
    (symmetric(3), ()), (alternating(4), (2,)), (dihedral(4), (2,)), (quaternion(), ()),
    (cyclic(7), ()), (symmetric(4), (2,)), (alternating(5), (2,)), (dihedral(6), (2,)),
])
def test_schur_multiplier(G, expected):
    assert schur_multiplier(G).divisors == expected


def test_ext1():
    assert ext1(AbelianStructure((2, 4)), 4).divisors == (2, 4)
    assert ext1(AbelianStructure((3,)), 2).is_trivial()


small = st.sampled_from([cyclic(4), elementary(2, 2), symmetric(3), dihedral(4), quaternion(),
                         cyclic(6), dihedral(5), abelian_group([2, 4])])


@given(small, st.integers(2, 12))
def test_uct_cardinality(G, m):
    M = schur_multiplier(G)
    assert h2_order(G, m) == ext1(abelianization(G), m).order * M.hom_order(m)


@given(small, st.integers(2, 8), st.integers(0, 10 ** 6))
def test_coboundaries_are_cocycles(G, m, seed):
    beta = random_coboundary(G, m, seed)
    assert beta.check_cocycle() and beta.is_normalized()
    assert is_coboundary(beta) is not None


def test_aut_splitting_report():
    r = aut_splitting_report()
    assert r["consistent"]
    assert r["h2_structure"] == [2, 2, 2] and r["aut_order"] == 6
    assert len(r["candidates"]) == 8 and len(r["sections"]) == 4
    # orbit sizes of Aut(V) = S_3 on the pairing-1 classes: one fixed point and one 3-orbit
    sizes = sorted(len(c["orbit"]) for c in r["candidates"] if c["pairing"] == 1)
    assert sizes == [1, 3, 3, 3]
    fixed = [c for c in r["candidates"] if c["pairing"] == 1 and c["fixed_by_aut"]]
    assert [c["extension"] for c in fixed] == ["Q8"]
    assert r["equivariant_section_exists"]

