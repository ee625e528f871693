"""Group-spec grammar used by the command line.

    spec   := name "(" [arg ("," arg)*] ")" | name
    arg    := integer | quoted string | bare path
    names  := sl gl sp su pgl psl heis cyclic elementary abelian sym alt
              dihedral q8 perm table fp cover_sym cover_alt clifford_E clifford_F

``perm`` takes one or more quoted generators in cycle notation; a single
string may also hold several generators separated by ``;``.
``fp`` takes a presentation such as ``"gens: a b; rels: a^2, b^3, (a b)^3"``.
"""
from __future__ import annotations

import re
import shlex
from dataclasses import dataclass

from .errors import SchurkitError

GRAMMAR_HINT = (
    "group spec grammar: sl(n,q) gl(n,q) sp(4,q) su(n,q) pgl(n,q) psl(n,q) heis(n,q) "
    "cyclic(n) elementary(p,k) abelian(d1,...) sym(n) alt(n) dihedral(n) q8 "
    'perm("(1 2 3)","(1 2)") table(path) fp("gens: a b; rels: a^2, (a b)^3") '
    "cover_sym(n) cover_alt(n) clifford_E(n) clifford_F(n)"
)


class GroupSpecError(SchurkitError, ValueError):
    def __init__(self, message):
        super().__init__(f"{message}\n{GRAMMAR_HINT}")


@dataclass
class ParsedGroup:
    spec: str
    group: object
    extension: object = None


_SPEC = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\((.*)\))?\s*$", re.S)


def _split_args(body: str) -> list[str]:
    if body is None or not body.strip():
        return []
    lex = shlex.shlex(body, posix=True)
    lex.whitespace = ","
    lex.whitespace_split = True
    lex.quotes = "\"'"
    try:
        return [a.strip() for a in lex]
    except ValueError as exc:
        raise GroupSpecError(f"cannot split arguments {body!r}: {exc}") from None


def _ints(name, args, count=None):
    try:
        vals = [int(a) for a in args]
    except ValueError:
        raise GroupSpecError(f"{name} takes integer arguments, got {args}") from None
    if count is not None and len(vals) != count:
        raise GroupSpecError(f"{name} takes {count} integer argument(s), got {len(vals)}")
    return vals


def parse_group_spec(text: str, cap: int | None = None) -> ParsedGroup:
    from . import clifford, groups, matrixgroups, presentations

    m = _SPEC.match(text)
    if not m:
        raise GroupSpecError(f"cannot parse group spec {text!r}")
    name, body = m.group(1), m.group(2)
    key = name.lower()
    args = _split_args(body)
    kw = {} if cap is None else {"cap": cap}
    classical = {"sl": "SL", "gl": "GL", "sp": "SP", "su": "SU", "pgl": "PGL", "psl": "PSL"}
    if key in classical:
        n, q = _ints(name, args, 2)
        try:
            spec = matrixgroups.MatrixGroupSpec(classical[key], n, q)
        except ValueError as exc:
            raise GroupSpecError(str(exc)) from None
        return ParsedGroup(text, matrixgroups.classical_group(spec, **kw))
    if key == "heis":
        n, q = _ints(name, args, 2)
        X = matrixgroups.heisenberg(n, q, **kw)
        return ParsedGroup(text, X.total, X)
    if key == "cyclic":
        (n,) = _ints(name, args, 1)
        return ParsedGroup(text, groups.cyclic(n))
    if key == "elementary":
        p, k = _ints(name, args, 2)
        return ParsedGroup(text, groups.elementary(p, k))
    if key == "abelian":
        return ParsedGroup(text, groups.abelian_group(_ints(name, args)))
    if key in ("sym", "alt", "dihedral"):
        (n,) = _ints(name, args, 1)
        make = {"sym": groups.symmetric, "alt": groups.alternating, "dihedral": groups.dihedral}[key]
        return ParsedGroup(text, make(n))
    if key == "q8":
        return ParsedGroup(text, groups.quaternion())
    if key == "perm":
        gens = []
        for a in args:
            gens += [g for g in a.split(";") if g.strip()]
        try:
            return ParsedGroup(text, groups.closure(gens, **kw))
        except ValueError as exc:
            raise GroupSpecError(str(exc)) from None
    if key == "table":
        if len(args) != 1:
            raise GroupSpecError("table takes one path")
        return ParsedGroup(text, groups.load_table(args[0]))
    if key == "fp":
        if len(args) != 1:
            raise GroupSpecError("fp takes one quoted presentation")
        try:
            P = presentations.parse_presentation(args[0])
        except ValueError as exc:
            raise GroupSpecError(str(exc)) from None
        return ParsedGroup(text, presentations.realize(P, **kw))
    if key in ("cover_sym", "cover_alt"):
        (n,) = _ints(name, args, 1)
        X = clifford.cover_extension(n, alternating=key == "cover_alt")
        return ParsedGroup(text, X.total, X)
    if key in ("clifford_e", "clifford_f"):
        (n,) = _ints(name, args, 1)
        X = clifford.clifford_extension(n, "E" if key == "clifford_e" else "F")
        return ParsedGroup(text, X.total, X)
    raise GroupSpecError(f"unknown group family {name!r}")
