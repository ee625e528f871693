"""``schurkit`` command line.

JSON reports have the shape::

    {"command": "...", "results": [{"quantity": ..., "value": ..., "op": ...}, ...]}

except ``verify``, whose report is ``{"command", "suite", "checks", "total",
"passed", "failed", "skipped"}`` with one record per manifest check.
Keys are sorted and timing appears only with ``--timing``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ContractViolation, PreconditionError, SchurkitError
from .groupspec import GRAMMAR_HINT, GroupSpecError, parse_group_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(SchurkitError):
    pass


@dataclass
class CommandReport:
    command: str
    results: list = field(default_factory=list)
    suite: dict | None = None
    exit_code: int = EXIT_OK
    error: str | None = None
    seconds: float | None = None

    def add(self, quantity, value, op):
        self.results.append({"quantity": quantity, "value": _plain(value), "op": op})

    def to_json(self) -> dict:
        if self.suite is not None:
            out = {"command": self.command, **self.suite}
        else:
            out = {"command": self.command, "results": self.results}
        if self.error is not None:
            out["error"] = self.error
        if self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out


def _plain(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    return v


def _fmt(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and all(isinstance(x, int) for x in v):
        return " x ".join(f"Z/{d}" for d in v) if v else "1"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def emit(report: CommandReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), sort_keys=True)
    lines = [f"$ schurkit {report.command}"]
    if report.suite is not None:
        s = report.suite
        for c in s["checks"]:
            flag = "PASS" if c["pass"] else "FAIL"
            observed = {k: c[k] for k in c["expected"] if k in c}
            detail = c.get("error") or ", ".join(f"{k}={_fmt(v)}" for k, v in observed.items())
            lines.append(f"{flag}  {c['name']}  [{c['op']}]  {detail}")
            for note in c.get("evidence", []):
                lines.append(f"      {note}")
        for name in s.get("skipped", []):
            lines.append(f"SKIP  {name}  (needs --stretch)")
        lines.append(f"{s['total']} checks: {s['passed']} passed, {s['failed']} failed")
    else:
        width = max((len(r["quantity"]) for r in report.results), default=0)
        for r in report.results:
            lines.append(f"{r['quantity']:<{width}}  {_fmt(r['value'])}  [{r['op']}]")
    if report.error:
        lines.append(f"error: {report.error}")
    if report.seconds is not None:
        lines.append(f"time: {report.seconds:.3f} s")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _bound(args):
    from .cohomology import STRETCH_COCHAIN_BOUND
    return max(args.cochain_bound, STRETCH_COCHAIN_BOUND) if args.stretch else args.cochain_bound


def _parse(args, spec):
    return parse_group_spec(spec, args.cap)


def cmd_info(args, rep):
    from .groups import abelianization, center, conjugacy_classes, exponent, is_abelian
    G = _parse(args, args.group).group
    rep.add("order", G.order, "FiniteGroup.order")
    rep.add("center", center(G).order, "center")
    rep.add("abelianization", list(abelianization(G).divisors), "abelianization")
    rep.add("classes", len(conjugacy_classes(G)), "conjugacy_classes")
    rep.add("abelian", is_abelian(G), "is_abelian")
    rep.add("exponent", exponent(G), "exponent")


def cmd_h2(args, rep):
    from .cohomology import second_cohomology
    G = _parse(args, args.group).group
    res = second_cohomology(G, args.m, _bound(args))
    rep.add("h2", list(res.structure.divisors), "second_cohomology")
    rep.add("order", res.order, "second_cohomology")


def cmd_multiplier(args, rep):
    from .cohomology import schur_multiplier
    G = _parse(args, args.group).group
    rep.add("multiplier", list(schur_multiplier(G, _bound(args)).divisors), "schur_multiplier")


def _cocycle(args, G, m):
    from .cohomology import Cocycle2, random_coboundary, second_cohomology, zero_cocycle
    text = args.cocycle
    if text == "zero":
        return zero_cocycle(G, m)
    if text.startswith("random-coboundary"):
        _, _, seed = text.partition(":")
        return random_coboundary(G, m, int(seed) if seed else args.seed)
    if text.startswith("h2:"):
        res = second_cohomology(G, m, _bound(args))
        i = int(text[3:])
        if not 0 <= i < len(res.basis):
            raise UsageError(f"h2 basis index {i} out of range; H^2 has {len(res.basis)} generators")
        return res.basis[i]
    try:
        with open(text) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read cocycle {text!r}: {exc.strerror}; "
                         "use zero, random-coboundary[:seed], h2:<i> or a JSON file") from None
    if int(data["modulus"]) != m:
        raise UsageError(f"cocycle file has modulus {data['modulus']}, command uses {m}")
    return Cocycle2.from_json(data, G)


def cmd_extension(args, rep):
    from .extensions import build_extension, commutator_pairing, is_split
    from .groups import abelianization, center, exponent, is_abelian
    G = _parse(args, args.group).group
    beta = _cocycle(args, G, args.m)
    X = build_extension(G, args.m, beta)
    E = X.total
    if args.action == "build":
        X.check()
        rep.add("order", E.order, "build_extension")
        rep.add("center", center(E).order, "center")
        rep.add("abelianization", list(abelianization(E).divisors), "abelianization")
        rep.add("exponent", exponent(E), "exponent")
        rep.add("abelian", is_abelian(E), "is_abelian")
    elif args.action == "split":
        r = is_split(X)
        rep.add("split", r.split, "is_split")
        for route, v in sorted(r.routes.items()):
            rep.add(f"route {route}", v, "is_split")
        if r.witness_cochain is not None:
            rep.add("witness", r.witness_cochain.tolist(), "is_coboundary")
    else:
        P = commutator_pairing(X, args.seed)
        rep.add("pairing", P.tolist(), "commutator_pairing")
        rep.add("trivial", not P.any(), "commutator_pairing")


def cmd_k2(args, rep):
    from .ktheory import k2_finite_field
    r = k2_finite_field(args.q)
    rep.add("k2", list(r.structure.divisors), "k2_finite_field")
    rep.add("trivial", r.trivial, "k2_finite_field")


def cmd_symbols(args, rep):
    from .extensions import build_extension
    from .ktheory import symbol_identities_check
    G = _parse(args, args.group).group
    beta = _cocycle(args, G, args.m)
    X = build_extension(G, args.m, beta, validate=G.order <= 512)
    r = symbol_identities_check(X, exhaustive=not args.sample, seed=args.seed)
    for k in ("lift_independent", "bimultiplicative", "antisymmetric", "a_minus_a", "steinberg_relation",
              "coroot_swap", "trivial", "evaluations", "holds"):
        rep.add(k, r[k], "symbol_identities_check")
    if not r["holds"]:
        rep.exit_code = EXIT_FAIL


def cmd_verify(args, rep):
    from .suites import RunOptions, load_manifest, run_suite
    manifest = load_manifest()
    if args.manifest:
        with open(args.manifest) as fh:
            manifest = json.load(fh)
    if args.suite not in manifest:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(sorted(manifest))}")
    opts = RunOptions(cochain_bound=args.cochain_bound, stretch=args.stretch, seed=args.seed,
                      cap=args.cap, jobs=args.jobs, timing=args.timing)
    report = run_suite(args.suite, opts, manifest)
    rep.suite = report.to_json()
    rep.exit_code = EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {"info": cmd_info, "h2": cmd_h2, "multiplier": cmd_multiplier, "extension": cmd_extension,
            "k2": cmd_k2, "symbols": cmd_symbols, "verify": cmd_verify}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    from .cohomology import DEFAULT_COCHAIN_BOUND

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, default=None, help="element cap for enumerations")
    common.add_argument("--cochain-bound", type=int, default=DEFAULT_COCHAIN_BOUND)
    common.add_argument("--stretch", action="store_true", help="allow cochain jobs beyond |G| = 60")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true")

    p = _Parser(prog="schurkit", description="Central extensions, H^2 and Schur multipliers.",
                epilog=GRAMMAR_HINT)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    s = sub.add_parser("info", parents=[common])
    s.add_argument("group")
    s = sub.add_parser("h2", parents=[common])
    s.add_argument("group")
    s.add_argument("m", type=int)
    s = sub.add_parser("multiplier", parents=[common])
    s.add_argument("group")
    s = sub.add_parser("extension", parents=[common])
    s.add_argument("action", choices=("build", "split", "pairing"))
    s.add_argument("group")
    s.add_argument("m", type=int)
    s.add_argument("--cocycle", default="zero", help="zero | random-coboundary[:seed] | h2:<i> | file.json")
    s = sub.add_parser("k2", parents=[common])
    s.add_argument("q", type=int)
    s = sub.add_parser("symbols", parents=[common])
    s.add_argument("--group", required=True)
    s.add_argument("--m", type=int, default=2, help="kernel order")
    s.add_argument("--cocycle", default="zero")
    s.add_argument("--sample", action="store_true", help="sample unit pairs instead of all of them")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("suite")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--manifest", default=None, help="alternative manifest JSON")
    return p


def _requested_format(argv) -> str:
    """Format to use even when parsing fails."""
    for i, a in enumerate(argv):
        if a == "--format=json" or (a == "--format" and argv[i + 1:i + 2] == ["json"]):
            return "json"
    return "text"


def run(argv) -> tuple[CommandReport, str]:
    argv = list(argv)
    fmt = _requested_format(argv)
    rep = CommandReport(" ".join(argv))
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        t0 = time.perf_counter()
        COMMANDS[args.command](args, rep)
        if args.timing:
            rep.seconds = time.perf_counter() - t0
    except (UsageError, GroupSpecError, ContractViolation, PreconditionError) as exc:
        rep.exit_code, rep.error = EXIT_USAGE, str(exc)
    except CapacityError as exc:
        rep.exit_code = EXIT_FAIL
        msg = str(exc)
        rep.error = msg if exc.bound is None or str(exc.bound) in msg else f"{msg} (bound {exc.bound})"
    except SchurkitError as exc:
        rep.exit_code, rep.error = EXIT_FAIL, str(exc)
    return rep, fmt


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    rep, fmt = run(argv)
    stream = sys.stderr if rep.exit_code == EXIT_USAGE and fmt == "text" else sys.stdout
    print(emit(rep, fmt), file=stream)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
