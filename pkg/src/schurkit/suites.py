"""Data-driven verification suites.

Each manifest check is ``{"name", "op", "args", "expected", "kind"}``.  The
operation returns a dict of observed fields; a check passes when every
expected field matches.  ``kind`` is ``"claim"`` for statements taken from
the source, ``"derived"`` for values fixed by an independent computation and
``"reference"`` for textbook inputs (multipliers used in the UCT identity).
Checks flagged ``"stretch": true`` run only when the cochain bound is raised.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .abelian import AbelianStructure
from .cohomology import (DEFAULT_COCHAIN_BOUND, STRETCH_COCHAIN_BOUND, aut_splitting_report, ext1,
                         h2_order, random_coboundary, schur_multiplier)
from .groups import abelianization, center, is_perfect

SUITES = ("uct", "clifford", "covers", "heisenberg", "theorem15", "remark16", "k2", "symbols",
          "aut-splitting")


@dataclass
class RunOptions:
    cochain_bound: int = DEFAULT_COCHAIN_BOUND
    stretch: bool = False
    seed: int = 0
    cap: int | None = None
    jobs: int = 1
    timing: bool = False

    @property
    def bound(self) -> int:
        return max(self.cochain_bound, STRETCH_COCHAIN_BOUND) if self.stretch else self.cochain_bound


def _group(spec, opts):
    from .groupspec import parse_group_spec
    return parse_group_spec(spec, opts.cap).group


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------

def op_h2_order(opts, group, m):
    return {"h2_order": h2_order(_group(group, opts), m, opts.bound)}


def op_uct(opts, group, m, multiplier):
    """``|H^2(G, Z/m)| = |Ext^1(G^ab, Z/m)| * |Hom(M, Z/m)|`` with ``M`` supplied."""
    G = _group(group, opts)
    h = h2_order(G, m, opts.bound)
    e = ext1(abelianization(G), m).order
    hom = AbelianStructure.from_cyclic_orders(multiplier).hom_order(m)
    return {"h2_order": h, "ext1_order": e, "hom_order": hom, "identity": h == e * hom}


def op_multiplier(opts, group):
    return {"multiplier": list(schur_multiplier(_group(group, opts), opts.bound).divisors)}


def op_abelianization(opts, group):
    ab = abelianization(_group(group, opts))
    return {"abelianization": list(ab.divisors), "trivial": ab.is_trivial()}


def op_perfect(opts, group):
    G = _group(group, opts)
    return {"order": G.order, "perfect": is_perfect(G)}


def op_clifford_structure(opts, n):
    from .clifford import clifford_structure_checks
    out = clifford_structure_checks(n)
    flags = [v for k, v in out.items() if k != "n"]
    return {"holds": all(flags), "failed": sorted(k for k, v in out.items() if k != "n" and not v)}


def op_extraspecial(opts, n, which):
    from .clifford import clifford_E, clifford_F, extraspecial_profile
    G = clifford_E(n) if which == "E" else clifford_F(n)
    prof = extraspecial_profile(G)
    return {"nonlinear_classes": prof.nonlinear_count, "dimension": prof.forced_dimension}


def op_cover_order(opts, n, alternating):
    from .clifford import cover_extension
    return {"order": cover_extension(n, alternating).total.order}


def op_cover_split(opts, n):
    from .clifford import cover_extension
    from .extensions import is_split
    return {"split": is_split(cover_extension(n, True)).split}


def op_cover_matches(opts, n, group):
    from .clifford import cover_extension
    A = cover_extension(n, True).total
    B = _group(group, opts)

    def profile(G):
        return [G.order, list(abelianization(G).divisors), center(G).order]
    pa, pb = profile(A), profile(B)
    return {"cover": pa, "other": pb, "match": pa == pb}


def op_heisenberg(opts, n, q):
    from .extensions import commutator_pairing
    from .matrixgroups import heisenberg
    X = heisenberg(n, q, **({} if opts.cap is None else {"cap": opts.cap}))
    Z = center(X.total)
    P = commutator_pairing(X, opts.seed)
    coords = X.base.coordinates
    x, y = coords[:, :n], coords[:, n:]
    # standard symplectic form on (x, y): <(x,y),(x',y')> = x.y' - x'.y
    omega = (x @ y.T - (x @ y.T).T) % q
    kernel_gens = X.kernel_elements
    alternating = not np.diag(P).any()
    radical = int(np.count_nonzero(~P.any(axis=1)))
    return {
        "order": X.total.order,
        "center_order": Z.order,
        "center_is_kernel": sorted(Z.members.tolist()) == sorted(kernel_gens.tolist()),
        "symplectic": bool(np.array_equal(P % q, omega)),
        "alternating": bool(alternating),
        "nondegenerate": radical == 1,
    }


def op_dual_sequence(opts, n, q):
    from .matrixgroups import dual_sequence_check
    kw = {} if opts.cap is None else {"cap": opts.cap}
    r = dual_sequence_check("SL", n, q, **kw)
    return {"pgl_order": r["pgl_order"], "quotient_order": r["quotient_order"],
            "mu_n_order": r["mu_n_order"], "holds": r["holds"]}


def op_k2(opts, q):
    from .ktheory import k2_finite_field
    r = k2_finite_field(q)
    return {"trivial": r.trivial, "order": r.structure.order}


def op_symbols(opts, q, modulus):
    from .extensions import build_extension
    from .ktheory import symbol_identities_check
    G = _group(f"sl(3,{q})", opts)
    X = build_extension(G, modulus, random_coboundary(G, modulus, opts.seed))
    r = symbol_identities_check(X, exhaustive=True, seed=opts.seed)
    keys = ("lift_independent", "bimultiplicative", "antisymmetric", "a_minus_a",
            "steinberg_relation", "trivial", "coroot_swap")
    return {k: bool(r[k]) for k in keys}


def op_aut_splitting(opts):
    r = aut_splitting_report()
    evidence = [f"verdict: {r['verdict']}",
                f"{len(r['candidates'])} classes in H^2 examined against |Aut(V)| = {r['aut_order']}"]
    for c in r["candidates"]:
        if c["pairing"] == 1:
            qf = c["quadratic_form"]
            evidence.append(f"section candidate class {c['class']} ({c['extension']}, x^2:{qf['x^2']} "
                            f"xy:{qf['xy']} y^2:{qf['y^2']}): orbit {c['orbit']}, "
                            f"{'Aut-fixed (witness)' if c['fixed_by_aut'] else 'moved'}")
    return {"evidence": evidence, "consistent": r["consistent"], "verdict": r["verdict"],
            "equivariant_section_exists": r["equivariant_section_exists"],
            "equivariant_sections": r["equivariant_sections"], "sections": r["sections"],
            "aut_order": r["aut_order"], "h2_structure": r["h2_structure"]}


OPERATIONS = {
    "h2_order": op_h2_order,
    "uct": op_uct,
    "multiplier": op_multiplier,
    "abelianization": op_abelianization,
    "perfect": op_perfect,
    "clifford_structure": op_clifford_structure,
    "extraspecial": op_extraspecial,
    "cover_order": op_cover_order,
    "cover_split": op_cover_split,
    "cover_matches": op_cover_matches,
    "heisenberg": op_heisenberg,
    "dual_sequence": op_dual_sequence,
    "k2": op_k2,
    "symbols": op_symbols,
    "aut_splitting": op_aut_splitting,
}


# --------------------------------------------------------------------------
# running
# --------------------------------------------------------------------------

def load_manifest() -> dict:
    text = resources.files("schurkit").joinpath("data/manifest.json").read_text()
    return json.loads(text)


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    seconds: float | None = None

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c["pass"])

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        out = {"suite": self.suite, "checks": self.checks, "total": len(self.checks),
               "passed": self.passed, "failed": self.failed, "skipped": self.skipped}
        if self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out


def run_check(check: dict, opts: RunOptions) -> dict:
    args = dict(check.get("args", {}))
    expected = check.get("expected", {})
    record = {"name": check["name"], "op": check["op"], "kind": check.get("kind", "derived")}
    record.update(args)
    t0 = time.perf_counter()
    try:
        observed = OPERATIONS[check["op"]](opts, **args)
        ok = all(observed.get(k) == v for k, v in expected.items())
        record.update(observed)
    except Exception as exc:  # a crashing check is a failed check, not a crashed suite
        ok = False
        record["error"] = f"{type(exc).__name__}: {exc}"
    record["expected"] = expected
    record["pass"] = bool(ok)
    if opts.timing:
        record["seconds"] = round(time.perf_counter() - t0, 3)
    return record


def run_suite(name: str, opts: RunOptions | None = None, manifest: dict | None = None) -> SuiteReport:
    opts = opts or RunOptions()
    manifest = manifest if manifest is not None else load_manifest()
    if name not in manifest:
        raise KeyError(f"unknown suite {name!r}; known suites: {', '.join(sorted(manifest))}")
    checks = manifest[name]
    active = [c for c in checks if opts.stretch or not c.get("stretch")]
    skipped = [c["name"] for c in checks if c not in active]
    t0 = time.perf_counter()
    with ThreadPoolExecutor(max_workers=max(1, opts.jobs)) as pool:
        records = list(pool.map(lambda c: run_check(c, opts), active))
    report = SuiteReport(name, records, skipped)
    if opts.timing:
        report.seconds = time.perf_counter() - t0
    return report
