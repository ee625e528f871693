"""The fourteen acceptance criteria, each with its runtime limit.

Every test records one ``criterion N: PASS|FAIL`` line that the terminal
summary prints (see conftest.py).
"""
import time
from math import factorial

import numpy as np
import pytest

from schurkit import kernels
from schurkit.abelian import AbelianStructure
from schurkit.clifford import clifford_E, clifford_F, cover_extension, extraspecial_profile, clifford_structure_checks
from schurkit.cohomology import (STRETCH_COCHAIN_BOUND, Cocycle2, aut_splitting_report, ext1, h2_order,
                                 lambda2, random_coboundary, schur_multiplier)
from schurkit.extensions import build_extension, commutator_pairing, is_split
from schurkit.fields import prime_power
from schurkit.groups import (abelianization, alternating, center, cyclic, dihedral, elementary, exponent,
                             is_perfect, quaternion, symmetric)
from schurkit.ktheory import k2_finite_field, symbol_identities_check
from schurkit.matrixgroups import MatrixGroupSpec, classical_group, dual_sequence_check, heisenberg

from test_properties import cocycle_identity_property, snf_property, solve_mod_property


@pytest.fixture(scope="module", autouse=True)
def _warm():
    kernels.warmup()


@pytest.fixture
def record(request):
    def _record(num, desc, ok, seconds, limit, note=""):
        status = "PASS" if ok and seconds < limit else "FAIL"
        extra = f"; {note}" if note else ""
        request.config.acceptance_lines.append(
            f"criterion {num}: {status}  {desc}  ({seconds:.4g} s, limit {limit:g} s{extra})")
        assert ok, f"criterion {num} check failed"
        assert seconds < limit, f"criterion {num} took {seconds:.3f} s (limit {limit} s)"
    return _record


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_01_cocycle_dictionary(record):
    G = cyclic(2)

    def run():
        twisted = build_extension(G, 2, Cocycle2(G, 2, values=np.array([[0, 0], [0, 1]])))
        plain = build_extension(G, 2, Cocycle2(G, 2, values=np.zeros((2, 2), np.int64)))
        return bool(twisted.total.element_orders.max() == 4) and exponent(plain.total) == 2

    results, times = zip(*(timed(run) for _ in range(25)))
    record(1, "Z/2 by Z/2: beta(1,1)=1 gives Z/4, zero cocycle gives exponent 2",
           all(results), min(times), 1e-3, "min over 25 repeats")


def test_criterion_02_v_example(record):
    def run():
        V = elementary(2, 2)
        h = h2_order(V, 2)
        e = ext1(abelianization(V), 2).order
        hom = lambda2(abelianization(V)).hom_order(2)
        return (h, e, hom)

    (h, e, hom), t = timed(run)
    record(2, f"|H^2(V,Z/2)|={h}, |Ext^1|={e}, |Hom(L2 V,Z/2)|={hom}",
           (h, e, hom) == (8, 4, 2) and h == e * hom, t, 1.0)


# multipliers used on the right-hand side: Lambda^2 for abelian groups, textbook values otherwise
UCT_GROUPS = [
    ("Z/4", lambda: cyclic(4), None), ("Z/2^2", lambda: elementary(2, 2), None),
    ("Z/2^3", lambda: elementary(2, 3), None), ("S3", lambda: symmetric(3), ()),
    ("D4", lambda: dihedral(4), (2,)), ("Q8", quaternion, ()), ("A4", lambda: alternating(4), (2,)),
]


def test_criterion_03_uct_cardinality(record):
    def run():
        bad = []
        for name, make, ref in UCT_GROUPS:
            G = make()
            ab = abelianization(G)
            M = lambda2(ab) if ref is None else AbelianStructure.from_cyclic_orders(ref)
            for m in (2, 3, 4):
                if h2_order(G, m) != ext1(ab, m).order * M.hom_order(m):
                    bad.append((name, m))
        return bad

    bad, t = timed(run)
    record(3, "UCT cardinality for 7 groups x m in {2,3,4}", not bad, t, 30.0,
           f"violations {bad}" if bad else "")


def test_criterion_04_multipliers(record):
    def run():
        out = {
            "Z/2^2": schur_multiplier(elementary(2, 2)).divisors,
            "A4": schur_multiplier(alternating(4)).divisors,
            "S3": schur_multiplier(symmetric(3)).divisors,
            "Z/9": schur_multiplier(cyclic(9)).divisors,
        }
        out["|H^2(A5,Z/2)|"] = h2_order(alternating(5), 2, bound=STRETCH_COCHAIN_BOUND)
        return out

    out, t = timed(run)
    ok = (out["Z/2^2"] == (2,) and out["A4"] == (2,) and out["S3"] == () and out["Z/9"] == ()
          and out["|H^2(A5,Z/2)|"] == 2)
    record(4, f"multipliers {out}", ok, t, 600.0)


def test_criterion_05_clifford(record):
    def run():
        return {n: clifford_structure_checks(n) for n in range(1, 9)}

    out, t = timed(run)
    failed = {n: [k for k, v in r.items() if k != "n" and not v] for n, r in out.items()}
    failed = {n: f for n, f in failed.items() if f}
    # n = 1 has no commutators and a trivial base; the nonsplit checks start at n = 2
    ok = not failed and all("nonsplit_E" in out[n] for n in range(2, 9))
    record(5, "Clifford groups E_n, F_{n-1}, n <= 8", ok, t, 5.0, f"failed {failed}" if failed else "")


def test_criterion_06_extraspecial(record):
    def run():
        out = {}
        for n in range(2, 9):
            G = clifford_E(n) if n % 2 == 0 else clifford_F(n)
            p = extraspecial_profile(G)
            out[n] = (p.nonlinear_count, p.forced_dimension)
        return out

    out, t = timed(run)
    ok = all(v == (1, 2 ** (n // 2)) for n, v in out.items())
    record(6, f"extraspecial profiles (classes beyond linear, dimension) {out}", ok, t, 5.0)


def test_criterion_07_covers(record):
    def run():
        orders = {n: cover_extension(n, alternating=False).total.order for n in range(2, 6)}
        splits = {n: is_split(cover_extension(n, alternating=True)).split for n in (3, 4, 5)}
        A4t = cover_extension(4).total
        SL23 = classical_group(MatrixGroupSpec("SL", 2, 3))
        prof = lambda G: (G.order, abelianization(G).divisors, center(G).order)  # noqa: E731
        return orders, splits, prof(A4t), prof(SL23), h2_order(alternating(4), 2)

    (orders, splits, pa, pb, h), t = timed(run)
    ok = (all(orders[n] == 2 * factorial(n) for n in orders) and splits == {3: True, 4: False, 5: False}
          and pa == pb and h == 2)
    record(7, f"covers: orders {orders}, split {splits}, A~4 {pa} vs SL2(3) {pb}, |H^2(A4,Z/2)|={h}", ok, t, 60.0)


def test_criterion_08_heisenberg(record):
    def run():
        out = []
        for n, q in ((1, 2), (1, 3), (2, 2)):
            X = heisenberg(n, q)
            P = commutator_pairing(X)
            c = X.base.coordinates
            x, y = c[:, :n], c[:, n:]
            omega = (x @ y.T - y @ x.T) % q
            nondeg = int(np.count_nonzero(~P.any(axis=1))) == 1
            out.append(X.total.order == q ** (2 * n + 1) and center(X.total).order == q
                       and np.array_equal(P % q, omega) and not np.diag(P).any() and nondeg)
        return out

    out, t = timed(run)
    record(8, "Heisenberg groups (1,2), (1,3), (2,2)", all(out), t, 5.0)


def test_criterion_09_small_field_exceptions(record):
    def run():
        g = lambda f, n, q: classical_group(MatrixGroupSpec(f, n, q))  # noqa: E731
        ab = {
            "SL2(2)": abelianization(g("SL", 2, 2)).divisors,
            "SL2(3)": abelianization(g("SL", 2, 3)).divisors,
            "Sp4(2)": abelianization(g("SP", 4, 2)).divisors,
            "SU3(2)": abelianization(g("SU", 3, 2)).divisors,
        }
        perfect = {k: is_perfect(g("SL", n, q)) for k, (n, q) in
                   {"SL2(4)": (2, 4), "SL3(2)": (3, 2), "SL4(2)": (4, 2)}.items()}
        return ab, perfect

    (ab, perfect), t = timed(run)
    ok = (ab["SL2(2)"] == (2,) and ab["SL2(3)"] == (3,) and ab["Sp4(2)"] == (2,) and ab["SU3(2)"] != ()
          and all(perfect.values()))
    record(9, f"abelianizations {ab}, perfect {perfect}", ok, t, 180.0)


def test_criterion_10_pgl_order_split(record):
    def run():
        return [dual_sequence_check("SL", n, q) for n, q in ((2, 3), (2, 5), (3, 4))]

    out, t = timed(run)
    ok = all(r["pgl_order"] == r["quotient_order"] * r["mu_n_order"] and r["holds"] for r in out)
    record(10, "|PGL_n| = |SL_n/mu_n| |mu_n| for (2,3), (2,5), (3,4)", ok, t, 60.0)


def test_criterion_11_k2(record):
    def prime_powers():
        for q in range(2, 65):
            try:
                prime_power(q)
                yield q
            except ValueError:
                pass

    qs = list(prime_powers())
    out, t = timed(lambda: [k2_finite_field(q).trivial for q in qs])
    record(11, f"K_2(F_q) trivial for {len(qs)} prime powers q <= 64", all(out), t, 1.0)


def test_criterion_12_symbols(record):
    def run():
        out = {}
        for q in (2, 3, 4):
            G = classical_group(MatrixGroupSpec("SL", 3, q))
            X = build_extension(G, 2, random_coboundary(G, 2, seed=q))
            r = symbol_identities_check(X)
            out[q] = all(r[k] for k in ("lift_independent", "bimultiplicative", "antisymmetric",
                                        "a_minus_a", "steinberg_relation", "trivial"))
        return out

    out, t = timed(run)
    record(12, f"Steinberg symbol identities in SL3(F_q) extensions {out}", all(out.values()), t, 120.0)


def test_criterion_13_property_suites(record):
    def run():
        return (cocycle_identity_property(1000), snf_property(1000), solve_mod_property()[0])

    out, t = timed(run)
    record(13, "cocycle identity x1000, SNF x1000, solve_mod vs exhaustive", all(out), t, 30.0)


def test_criterion_14_aut_splitting(record):
    r, t = timed(aut_splitting_report)
    fixed = [c["class"] for c in r["candidates"] if c["pairing"] == 1 and c["fixed_by_aut"]]
    ok = r["consistent"] and (bool(fixed) == r["equivariant_section_exists"])
    record(14, f"aut-splitting completes; {r['verdict']} (fixed classes {fixed})", ok, t, 1.0)
