"""Finitely presented groups and Felsch-style Todd-Coxeter enumeration."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ContractViolation
from .groups import FiniteGroup

DEFAULT_COSET_CAP = 200_000


@dataclass(frozen=True)
class Word:
    """Freely reduced word; letters are ``(generator, +-1)``."""

    letters: tuple = ()

    def __post_init__(self):
        out = []
        for g, e in self.letters:
            g, e = int(g), int(e)
            if e not in (1, -1) or g < 0:
                raise ValueError(f"bad letter {(g, e)}")
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        object.__setattr__(self, "letters", tuple(out))

    @classmethod
    def gen(cls, g, e=1):
        return cls(((g, 1 if e > 0 else -1),) * abs(e)) if e else cls()

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def columns(self):
        return [2 * g + (0 if e > 0 else 1) for g, e in self.letters]


def commutator(a: Word, b: Word) -> Word:
    """``a b a^-1 b^-1``."""
    return a * b * a.inverse() * b.inverse()


@dataclass
class Presentation:
    ngens: int
    relators: list
    names: list = field(default_factory=list)

    def __post_init__(self):
        if not self.names:
            self.names = [f"g{i + 1}" for i in range(self.ngens)]
        self.relators = [r if isinstance(r, Word) else Word(r) for r in self.relators]
        for r in self.relators:
            if any(g >= self.ngens for g, _ in r.letters):
                raise ContractViolation("relator uses an undeclared generator")

    def word_string(self, w: Word) -> str:
        return " ".join(self.names[g] + ("" if e > 0 else "^-1") for g, e in w.letters) or "1"


@dataclass
class CosetTable:
    ngens: int
    table: np.ndarray  # shape (count, 2 * ngens); column 2g is g, 2g+1 is g^-1

    @property
    def count(self) -> int:
        return int(self.table.shape[0])

    def action(self, g: int) -> np.ndarray:
        return self.table[:, 2 * g]


class _Enumerator:
    def __init__(self, P: Presentation, cap: int):
        self.P = P
        self.cols = 2 * P.ngens
        self.cap = cap
        self.rows: list[list[int]] = [[-1] * self.cols]
        self.parent = [0]
        self.active = 1
        self.deductions: list[tuple[int, int]] = []
        rels = [r.columns() for r in P.relators if len(r)]
        rels += [Word(r.letters).inverse().columns() for r in P.relators if len(r)]
        self.conjugates: dict[int, list[list[int]]] = {c: [] for c in range(self.cols)}
        seen = set()
        for r in rels:
            for i in range(len(r)):
                w = tuple(r[i:] + r[:i])
                if w not in seen:
                    seen.add(w)
                    self.conjugates[w[0]].append(list(w))
        self.relator_cols = [r.columns() for r in P.relators if len(r)]

    def find(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def new_coset(self):
        if self.active >= self.cap:
            raise CapacityError(f"coset enumeration exceeded cap {self.cap}", bound=self.cap)
        if len(self.rows) >= 4 * self.cap:
            raise CapacityError(f"coset enumeration defined more than {4 * self.cap} cosets", bound=self.cap)
        c = len(self.rows)
        self.rows.append([-1] * self.cols)
        self.parent.append(c)
        self.active += 1
        return c

    def define(self, c, x):
        d = self.new_coset()
        self.rows[c][x] = d
        self.rows[d][x ^ 1] = c
        self.deductions.append((c, x))

    def scan(self, a, w, fill=False):
        """Scan ``w`` from coset ``a``; deduce, detect coincidences, or (with ``fill``) define."""
        rows = self.rows
        while True:
            f, i = a, 0
            n = len(w)
            while i < n and rows[f][w[i]] >= 0:
                f = rows[f][w[i]]
                i += 1
            if i == n:
                if f != a:
                    self.coincidence(f, a)
                return
            b, j = a, n - 1
            while j >= i and rows[b][w[j] ^ 1] >= 0:
                b = rows[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                rows[f][w[i]] = b
                rows[b][w[i] ^ 1] = f
                self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    def coincidence(self, a, b):
        rows = self.rows
        queue = []

        def merge(k, l):
            k, l = self.find(k), self.find(l)
            if k == l:
                return
            if k > l:
                k, l = l, k
            self.parent[l] = k
            self.active -= 1
            queue.append(l)

        merge(a, b)
        qi = 0
        while qi < len(queue):
            g = queue[qi]
            qi += 1
            for x in range(self.cols):
                d = rows[g][x]
                if d < 0:
                    continue
                if rows[d][x ^ 1] == g:
                    rows[d][x ^ 1] = -1
                mu, nu = self.find(g), self.find(d)
                if rows[mu][x] >= 0:
                    merge(nu, rows[mu][x])
                elif rows[nu][x ^ 1] >= 0:
                    merge(mu, rows[nu][x ^ 1])
                else:
                    rows[mu][x] = nu
                    rows[nu][x ^ 1] = mu
                    self.deductions.append((mu, x))

    def alive(self, c):
        return self.parent[c] == c

    def process_deductions(self):
        while self.deductions:
            a, x = self.deductions.pop()
            if not self.alive(a):
                continue
            for w in self.conjugates[x]:
                self.scan(a, w)
                if not self.alive(a):
                    break
            if not self.alive(a):
                continue
            b = self.rows[a][x]
            if b >= 0 and self.alive(b):
                for w in self.conjugates[x ^ 1]:
                    self.scan(b, w)
                    if not self.alive(b):
                        break

    def run(self, subgroup_words):
        for w in subgroup_words:
            cols = w.columns()
            if cols:
                self.scan(0, cols, fill=True)
                self.process_deductions()
        c = 0
        while c < len(self.rows):
            if self.alive(c):
                for x in range(self.cols):
                    if not self.alive(c):
                        break
                    if self.rows[c][x] < 0:
                        self.define(c, x)
                        self.process_deductions()
            c += 1
        return self.compact()

    def compact(self):
        live = [c for c in range(len(self.rows)) if self.alive(c)]
        index = {c: i for i, c in enumerate(live)}
        table = np.array([[index[self.find(d)] for d in self.rows[c]] for c in live], dtype=np.int64)
        table = table.reshape(len(live), self.cols)
        _verify(table, self.relator_cols)
        return table


def _verify(table, relator_cols):
    n = table.shape[0]
    if (table < 0).any():
        raise AssertionError("coset table has empty slots")
    ar = np.arange(n)
    for x in range(table.shape[1]):
        if not np.array_equal(table[table[:, x], x ^ 1], ar):
            raise AssertionError("coset table columns are not mutually inverse")
    for r in relator_cols:
        cur = ar.copy()
        for x in r:
            cur = table[cur, x]
        if not np.array_equal(cur, ar):
            raise AssertionError("a relator acts nontrivially on the cosets")


def todd_coxeter(P: Presentation, H=(), cap: int = DEFAULT_COSET_CAP) -> CosetTable:
    """Coset table of ``<H>`` in the group presented by ``P`` (coset 0 is ``H``)."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    H = [w if isinstance(w, Word) else Word(w) for w in H]
    table = _Enumerator(P, cap).run(H)
    return CosetTable(P.ngens, _standardize(table))


def _standardize(table):
    """Renumber cosets in BFS order over columns (the usual standard form)."""
    n = table.shape[0]
    order = [0]
    seen = np.zeros(n, bool)
    seen[0] = True
    i = 0
    while i < len(order):
        c = order[i]
        i += 1
        for d in table[c]:
            if not seen[d]:
                seen[d] = True
                order.append(int(d))
    relabel = np.empty(n, np.int64)
    relabel[order] = np.arange(n)
    return relabel[table[order]]


def realize(P: Presentation, cap: int = DEFAULT_COSET_CAP, name=None) -> FiniteGroup:
    """Regular representation from the coset table of the trivial subgroup.

    ``G.gens[i]`` is the image of free generator ``i``.
    """
    ct = todd_coxeter(P, (), cap)
    right = ct.table[:, 0::2]
    G = FiniteGroup.from_cayley(right, 0, canonical=False, name=name,
                                labels=None)
    G.presentation = P
    return G


def evaluate(G: FiniteGroup, w: Word) -> int:
    """Image of a word under the generator images ``G.gens``."""
    cur = G.identity
    for g, e in w.letters:
        s = G.gens[g]
        cur = G.mul(cur, s if e > 0 else G.inv(s))
    return cur


# --------------------------------------------------------------------------
# named presentations
# --------------------------------------------------------------------------

def symmetric_presentation(n: int) -> Presentation:
    """Coxeter presentation on ``t_1..t_{n-1}``."""
    k = n - 1
    t = [Word.gen(i) for i in range(k)]
    rels = [ti ** 2 for ti in t]
    rels += [t[i + 1] * t[i] * t[i + 1] * (t[i] * t[i + 1] * t[i]).inverse() for i in range(k - 1)]
    rels += [commutator(t[j], t[i]) for i in range(k) for j in range(i + 2, k)]
    return Presentation(k, rels, [f"t{i + 1}" for i in range(k)])


def cover_presentation(n: int, far: str = "anticommute", central_relators: bool = True) -> Presentation:
    """``z, t_1..t_{n-1}`` with ``z^2``, ``t_i t_i = z`` and braid relations.

    Far generators satisfy ``t_j t_i = z t_i t_j`` (``far="anticommute"``,
    the double cover) or ``t_j t_i = t_i t_j`` (``far="commute"``, which
    yields a cover whose even part splits). ``central_relators`` adds the
    explicit ``[z, t_i]`` relators (redundant given ``t_i t_i = z``).
    """
    if far not in ("anticommute", "commute"):
        raise ValueError("far must be 'anticommute' or 'commute'")
    k = n - 1
    z = Word.gen(0)
    t = [Word.gen(i + 1) for i in range(k)]
    rels = [z ** 2]
    rels += [ti * ti * z.inverse() for ti in t]
    rels += [t[i + 1] * t[i] * t[i + 1] * (t[i] * t[i + 1] * t[i]).inverse() for i in range(k - 1)]
    for i in range(k):
        for j in range(i + 2, k):
            rel = t[j] * t[i] * (t[i] * t[j]).inverse()
            rels.append(rel * z.inverse() if far == "anticommute" else rel)
    if central_relators:
        rels += [commutator(z, ti) for ti in t]
    return Presentation(k + 1, rels, ["z"] + [f"t{i + 1}" for i in range(k)])


def even_words(n: int) -> list[Word]:
    """``t_i t_j`` for all ``i, j`` in the cover presentation (generator 0 is ``z``)."""
    return [Word.gen(i + 1) * Word.gen(j + 1) for i in range(n - 1) for j in range(n - 1)]


# --------------------------------------------------------------------------
# mini-syntax: "gens: a b; rels: a^2, (a b)^3, [a, b], a b = b a, [a, b^-1] = 1"
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\^)\s*(-?\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()\[\],*=]|1\b))")


def parse_presentation(text: str) -> Presentation:
    parts = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        key, sep, body = chunk.partition(":")
        if not sep or key.strip() not in ("gens", "rels"):
            raise ValueError(f"expected 'gens:' or 'rels:' section, got {chunk.strip()!r}")
        parts[key.strip()] = body
    names = parts.get("gens", "").replace(",", " ").split()
    if not names or len(set(names)) != len(names):
        raise ValueError("generator names must be distinct and non-empty")
    index = {nm: i for i, nm in enumerate(names)}
    rels = []
    body = parts.get("rels", "")
    for text_rel in _split_top(body):
        if text_rel.strip():
            rels.append(_RelParser(text_rel, index).relator())
    return Presentation(len(names), rels, names)


def _split_top(body):
    out, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


class _RelParser:
    def __init__(self, text, index):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse relator {text!r} at {text[pos:]!r}")
            pos = m.end()
            if m.group(1):
                self.tokens.append(("pow", int(m.group(2))))
            elif m.group(3):
                if m.group(3) not in index:
                    raise ValueError(f"unknown generator {m.group(3)!r}")
                self.tokens.append(("gen", index[m.group(3)]))
            else:
                self.tokens.append(("sym", m.group(4)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, sym=None):
        tok = self.peek()
        if tok is None or (sym is not None and tok != ("sym", sym)):
            raise ValueError(f"expected {sym!r}")
        self.i += 1
        return tok

    def relator(self):
        lhs = self.product()
        if self.peek() == ("sym", "="):
            self.take("=")
            lhs = lhs * self.product().inverse()
        if self.peek() is not None:
            raise ValueError("trailing tokens in relator")
        return lhs

    def product(self):
        w = Word()
        while True:
            tok = self.peek()
            if tok == ("sym", "*"):
                self.take("*")
                continue
            if tok is None or tok[0] == "pow" or tok in (("sym", ")"), ("sym", "]"), ("sym", ","), ("sym", "=")):
                return w
            w = w * self.factor()

    def factor(self):
        tok = self.take()
        if tok[0] == "gen":
            atom = Word.gen(tok[1])
        elif tok == ("sym", "1"):
            atom = Word()
        elif tok == ("sym", "("):
            atom = self.product()
            self.take(")")
        elif tok == ("sym", "["):
            a = self.product()
            self.take(",")
            b = self.product()
            self.take("]")
            atom = commutator(a, b)
        else:
            raise ValueError(f"unexpected token {tok}")
        if self.peek() and self.peek()[0] == "pow":
            atom = atom ** self.take()[1]
        return atom
