"""Regenerate src/schurkit/data/manifest.json."""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "schurkit" / "data" / "manifest.json"


def check(name, op, args=None, expected=None, kind="claim", stretch=False):
    c = {"name": name, "op": op, "args": args or {}, "expected": expected or {}, "kind": kind}
    if stretch:
        c["stretch"] = True
    return c


def prime_powers(limit):
    out = []
    for q in range(2, limit + 1):
        p = next(d for d in range(2, q + 1) if q % d == 0)
        x = q
        while x % p == 0:
            x //= p
        if x == 1:
            out.append(q)
    return out


uct_groups = [("cyclic(4)", []), ("elementary(2,2)", [2]), ("elementary(2,3)", [2, 2, 2]),
              ("sym(3)", []), ("dihedral(4)", [2]), ("q8", []), ("alt(4)", [2])]
uct = [
    check("h2 V=Z/2+Z/2, m=2", "uct", {"group": "elementary(2,2)", "m": 2, "multiplier": [2]},
          {"h2_order": 8, "ext1_order": 4, "hom_order": 2, "identity": True}),
]
for g, mult in uct_groups:
    for m in (2, 3, 4):
        uct.append(check(f"uct {g} m={m}", "uct", {"group": g, "m": m, "multiplier": mult},
                         {"identity": True}, kind="reference"))
uct += [
    check("multiplier elementary(2,2)", "multiplier", {"group": "elementary(2,2)"}, {"multiplier": [2]}),
    check("multiplier alt(4)", "multiplier", {"group": "alt(4)"}, {"multiplier": [2]}),
    check("multiplier sym(3)", "multiplier", {"group": "sym(3)"}, {"multiplier": []}),
    check("multiplier cyclic(6)", "multiplier", {"group": "cyclic(6)"}, {"multiplier": []}),
    check("multiplier alt(5)", "multiplier", {"group": "alt(5)"}, {"multiplier": [2]}),
    check("h2 alt(5) m=2", "h2_order", {"group": "alt(5)", "m": 2}, {"h2_order": 2}),
    check("h2 sl(3,2) m=2", "h2_order", {"group": "sl(3,2)", "m": 2}, {"h2_order": 2},
          kind="derived", stretch=True),
    check("h2 sym(5) m=2", "h2_order", {"group": "sym(5)", "m": 2}, {"h2_order": 4},
          kind="derived", stretch=True),
]

clifford = [check(f"clifford structure n={n}", "clifford_structure", {"n": n}, {"holds": True}) for n in range(1, 9)]
for n in range(1, 9):
    which = "E" if n % 2 == 0 else "F"
    if which == "F" and n == 1:
        continue
    clifford.append(check(f"extraspecial {which} n={n}", "extraspecial", {"n": n, "which": which},
                          {"nonlinear_classes": 1, "dimension": 2 ** (n // 2)}))

covers = [check(f"cover order sym n={n}", "cover_order", {"n": n, "alternating": False},
                {"order": 2 * [1, 1, 2, 6, 24, 120][n]}) for n in range(2, 6)]
covers += [
    check("cover alt n=3 splits", "cover_split", {"n": 3}, {"split": True}),
    check("cover alt n=4 nonsplit", "cover_split", {"n": 4}, {"split": False}),
    check("cover alt n=5 nonsplit", "cover_split", {"n": 5}, {"split": False}),
    check("cover alt n=4 vs sl(2,3)", "cover_matches", {"n": 4, "group": "sl(2,3)"}, {"match": True}),
    check("h2 alt(4) m=2", "h2_order", {"group": "alt(4)", "m": 2}, {"h2_order": 2}, kind="derived"),
]

heis = [check(f"heisenberg n={n} q={q}", "heisenberg", {"n": n, "q": q},
              {"order": q ** (2 * n + 1), "center_order": q, "center_is_kernel": True,
               "symplectic": True, "alternating": True, "nondegenerate": True})
        for n, q in ((1, 2), (1, 3), (2, 2))]

t15 = [
    check("abelianization sl(2,2)", "abelianization", {"group": "sl(2,2)"}, {"abelianization": [2]}),
    check("abelianization sl(2,3)", "abelianization", {"group": "sl(2,3)"}, {"abelianization": [3]}),
    check("abelianization sp(4,2)", "abelianization", {"group": "sp(4,2)"}, {"abelianization": [2]}),
    check("abelianization su(3,2)", "abelianization", {"group": "su(3,2)"}, {"trivial": False}),
    check("perfect sl(2,4)", "perfect", {"group": "sl(2,4)"}, {"perfect": True}),
    check("perfect sl(3,2)", "perfect", {"group": "sl(3,2)"}, {"perfect": True}),
    check("perfect sl(4,2)", "perfect", {"group": "sl(4,2)"}, {"perfect": True}),
]

r16 = [check(f"dual sequence n={n} q={q}", "dual_sequence", {"n": n, "q": q}, {"holds": True})
       for n, q in ((2, 3), (2, 5), (3, 4))]

k2 = [check(f"k2 q={q}", "k2", {"q": q}, {"trivial": True}) for q in prime_powers(64)]

symbols = [check(f"symbols sl(3,{q}) m=2", "symbols", {"q": q, "modulus": 2},
                 {"lift_independent": True, "bimultiplicative": True, "antisymmetric": True,
                  "a_minus_a": True, "steinberg_relation": True, "trivial": True})
           for q in (2, 3, 4)]

aut = [check("aut-splitting V=Z/2+Z/2", "aut_splitting", {}, {"consistent": True}, kind="derived")]

manifest = {"uct": uct, "clifford": clifford, "covers": covers, "heisenberg": heis,
            "theorem15": t15, "remark16": r16, "k2": k2, "symbols": symbols, "aut-splitting": aut}
OUT.write_text(json.dumps(manifest, indent=1) + "\n")
print(OUT, sum(len(v) for v in manifest.values()), "checks")
