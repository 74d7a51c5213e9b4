"""Finitely presented groups: a small relator language and Todd-Coxeter.

Presentation format (see docs/presentations.md):

    generators: names such as a1, a2, x
    a word:     juxtaposed factors, optionally separated by '*'
    a factor:   generator | (word) | [w1, w2, ...]  with optional ^k, k an integer
    a relation: word, or word = word = ...

[u, v] = u^-1 v^-1 u v and [u, v, w] = [[u, v], w].  Free words are
tuples of non-zero ints: i+1 for generator i, -(i+1) for its inverse.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, GroupError

TABLE_CAP = 1 << 13


class BoundExceeded(GroupError):
    """Coset enumeration needed more live cosets than allowed."""


class ParseError(GroupError):
    pass


# ---------------------------------------------------------------------------
# free words


def free_reduce(w) -> tuple[int, ...]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(w) -> tuple[int, ...]:
    return tuple(-x for x in reversed(w))


def word_power(w, k: int) -> tuple[int, ...]:
    if k < 0:
        w, k = inverse_word(w), -k
    return free_reduce(tuple(w) * k)


def commutator_word(u, v) -> tuple[int, ...]:
    return free_reduce(inverse_word(u) + inverse_word(v) + tuple(u) + tuple(v))


_TOK = re.compile(r"\s*(?:(?P<num>-?\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[\[\](),=*^]))")


class _Parser:
    def __init__(self, text: str, gens: list[str]):
        self.toks: list[tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOK.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos} in {text!r}")
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind)))
            pos = m.end()
        self.i = 0
        self.gens = {g: k for k, g in enumerate(gens)}
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value!r} in {self.text!r}")
        self.i += 1
        return tok

    def relation(self) -> list[tuple[int, ...]]:
        sides = [self.word()]
        while self.peek()[1] == "=":
            self.take("=")
            sides.append(self.word())
        if self.peek()[0] is not None:
            raise ParseError(f"trailing input in {self.text!r}")
        return [free_reduce(a + inverse_word(b)) for a, b in zip(sides, sides[1:])] if len(sides) > 1 else [sides[0]]

    def word(self) -> tuple[int, ...]:
        out: tuple[int, ...] = ()
        while True:
            kind, val = self.peek()
            if val == "*":
                self.take()
                continue
            if kind == "name" or val in ("(", "["):
                out = free_reduce(out + self.factor())
            elif kind == "num" and val == "1":
                self.take()
            else:
                return out

    def factor(self) -> tuple[int, ...]:
        kind, val = self.take()
        if kind == "name":
            if val not in self.gens:
                raise ParseError(f"unknown generator {val!r}")
            base: tuple[int, ...] = (self.gens[val] + 1,)
        elif val == "(":
            base = self.word()
            self.take(")")
        elif val == "[":
            parts = [self.word()]
            while self.peek()[1] == ",":
                self.take(",")
                parts.append(self.word())
            self.take("]")
            if len(parts) < 2:
                raise ParseError("commutator needs at least two entries")
            base = parts[0]
            for p in parts[1:]:
                base = commutator_word(base, p)
        else:
            raise ParseError(f"unexpected {val!r} in {self.text!r}")
        if self.peek()[1] == "^":
            self.take("^")
            kind, num = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            base = word_power(base, int(num))
        return base


@dataclass
class FpPresentation:
    gens: list[str]
    relators: list[tuple[int, ...]]

    @classmethod
    def parse(cls, gens, relations) -> "FpPresentation":
        gens = list(gens)
        rels: list[tuple[int, ...]] = []
        for text in relations:
            for r in _Parser(text, gens).relation():
                if r:
                    rels.append(r)
        return cls(gens, rels)

    def word(self, text: str) -> tuple[int, ...]:
        p = _Parser(text, self.gens)
        w = p.word()
        if p.peek()[0] is not None:
            raise ParseError(f"trailing input in {text!r}")
        return w


# ---------------------------------------------------------------------------
# coset enumeration (HLT with lookahead)


@dataclass
class PermGroup:
    degree: int
    gens: list[np.ndarray]  # images of 0..degree-1, acting on the right
    names: list[str]

    def order_upper(self) -> int:
        return self.degree

    def to_finite_group(self) -> FiniteGroup:
        """Cayley table of a regular permutation group (the H = 1 case)."""
        n = self.degree
        reach = {0: 0}
        elem_perm = np.zeros((n, n), dtype=np.int64)
        elem_perm[0] = np.arange(n)
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for g in self.gens:
                d = int(g[c])
                if d not in reach:
                    reach[d] = len(reach)
                    elem_perm[d] = g[elem_perm[c]]
                    queue.append(d)
        if len(reach) != n:
            raise GroupError("permutation group is not transitive")
        # element d <-> the permutation taking coset 0 to d; regular iff these are all distinct
        # T[i, j] = image of coset i under element j
        T = elem_perm.T.copy()
        G = FiniteGroup(T, gens=[int(g[0]) for g in self.gens], names=self.names)
        if not G.check_associative():
            raise GroupError("permutation group is not regular")
        return G


class _CosetTable:
    def __init__(self, ngens: int, cap: int):
        self.ncols = 2 * ngens
        self.cap = cap
        self.rows: list[list[int]] = [[-1] * self.ncols]
        self.fwd: list[int] = [0]
        self.live = 1
        self.queue: deque[int] = deque()
        self.deductions: list[tuple[int, int]] = []
        self.record = False

    @staticmethod
    def col(x: int) -> int:
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    def is_live(self, c: int) -> bool:
        return self.fwd[c] == c

    def define(self, c: int, x: int) -> int:
        if self.live >= self.cap:
            raise BoundExceeded(f"more than {self.cap} live cosets")
        n = len(self.rows)
        self.rows.append([-1] * self.ncols)
        self.fwd.append(n)
        self.live += 1
        self.rows[c][self.col(x)] = n
        self.rows[n][self.col(-x)] = c
        if self.record:
            self.deductions.append((c, x))
        return n

    def rep(self, c: int) -> int:
        fwd = self.fwd
        r = c
        while fwd[r] != r:
            r = fwd[r]
        while fwd[c] != r:
            fwd[c], c = r, fwd[c]
        return r

    def merge(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.fwd[b] = a
        self.live -= 1
        self.queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        self.merge(a, b)
        rows = self.rows
        while self.queue:
            e = self.queue.popleft()
            for k in range(self.ncols):
                f = rows[e][k]
                if f < 0:
                    continue
                kinv = k ^ 1
                if rows[f][kinv] == e:
                    rows[f][kinv] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if rows[e1][k] >= 0:
                    self.merge(f1, rows[e1][k])
                elif rows[f1][kinv] >= 0:
                    self.merge(e1, rows[f1][kinv])
                else:
                    rows[e1][k] = f1
                    rows[f1][kinv] = e1
                    if self.record:
                        self.deductions.append((e1, k // 2 + 1 if k % 2 == 0 else -(k // 2 + 1)))

    def scan(self, c: int, w, define: bool) -> None:
        """Scan w at coset c; fill gaps when define is set, record deductions/coincidences."""
        rows = self.rows
        col = self.col
        n = len(w)
        f, i = c, 0
        b, j = c, n - 1
        while True:
            while i <= j and rows[f][col(w[i])] >= 0:
                f = rows[f][col(w[i])]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i and rows[b][col(-w[j])] >= 0:
                b = rows[b][col(-w[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][col(w[i])] = b
                rows[b][col(-w[i])] = f
                if self.record:
                    self.deductions.append((f, w[i]))
                return
            if not define:
                return
            self.define(f, w[i])

    def compact(self) -> list[int]:
        """Live cosets in breadth-first order from coset 0."""
        order = [0]
        seen = {0}
        k = 0
        while k < len(order):
            c = order[k]
            k += 1
            for d in self.rows[c]:
                if d >= 0:
                    d = self.rep(d)
                    if d not in seen:
                        seen.add(d)
                        order.append(d)
        return order


def coset_enumerate(P: FpPresentation, subgroup=(), cap: int = TABLE_CAP, strategy: str = "felsch") -> PermGroup:
    """Enumerate the cosets of <subgroup> in P; returns the permutation action.

    strategy is "felsch" (default, economical in live cosets) or "hlt"
    (relator-based with lookahead).  Raises BoundExceeded if more than
    `cap` cosets are ever simultaneously live.
    """
    ngens = len(P.gens)
    rels = sorted({free_reduce(r) for r in P.relators if r}, key=len)
    T = _CosetTable(ngens, cap)
    for w in subgroup:
        if w:
            T.scan(0, w, define=True)
    if strategy == "hlt":
        _run_hlt(T, rels, ngens)
    elif strategy == "felsch":
        _run_felsch(T, rels, ngens)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    # every live coset must satisfy every relator
    for c in range(len(T.rows)):
        if T.is_live(c):
            for r in rels:
                T.scan(c, r, define=False)
    if T.queue:
        raise GroupError("enumeration did not close")
    order = T.compact()
    index = {cc: k for k, cc in enumerate(order)}
    n = len(order)
    gens = []
    for x in range(ngens):
        img = np.empty(n, dtype=np.int64)
        for k, cc in enumerate(order):
            img[k] = index[T.rep(T.rows[cc][2 * x])]
        gens.append(img)
    return PermGroup(n, gens, list(P.gens))


def _run_hlt(T: _CosetTable, rels, ngens: int) -> None:
    c = 0
    while c < len(T.rows):
        if T.is_live(c):
            try:
                for r in rels:
                    if not T.is_live(c):
                        break
                    T.scan(c, r, define=True)
                if T.is_live(c):
                    for x in range(1, ngens + 1):
                        for y in (x, -x):
                            if T.rows[c][T.col(y)] < 0:
                                T.define(c, y)
            except BoundExceeded:
                if not _lookahead(T, rels):
                    raise
                continue
        c += 1


def _run_felsch(T: _CosetTable, rels, ngens: int) -> None:
    # cyclic conjugates of relators and their inverses, by first letter
    by_letter: dict[int, list[tuple[int, ...]]] = {}
    seen = set()
    for r in rels:
        for w in (r, inverse_word(r)):
            for k in range(len(w)):
                v = w[k:] + w[:k]
                if v not in seen:
                    seen.add(v)
                    by_letter.setdefault(v[0], []).append(v)
    T.record = True

    def process() -> None:
        while T.deductions:
            c, x = T.deductions.pop()
            if T.is_live(c):
                for w in by_letter.get(x, ()):
                    if not T.is_live(c):
                        break
                    T.scan(c, w, define=False)
            if not T.is_live(c):
                c = T.rep(c)
            d = T.rows[c][T.col(x)]
            if d >= 0:
                d = T.rep(d)
                for w in by_letter.get(-x, ()):
                    if not T.is_live(d):
                        break
                    T.scan(d, w, define=False)

    process()
    letters = [y for x in range(1, ngens + 1) for y in (x, -x)]
    c = 0
    while c < len(T.rows):
        if T.is_live(c):
            for y in letters:
                if not T.is_live(c):
                    break
                if T.rows[c][T.col(y)] < 0:
                    T.define(c, y)
                    process()
        c += 1


def _lookahead(T: _CosetTable, rels) -> bool:
    before = T.live
    for c in range(len(T.rows)):
        if T.is_live(c):
            for r in rels:
                if not T.is_live(c):
                    break
                T.scan(c, r, define=False)
    return T.live < before


def enumerate_group(P: FpPresentation, cap: int = TABLE_CAP, strategy: str = "auto") -> FiniteGroup:
    """The finite group presented by P, via its regular representation.

    strategy "auto" tries Felsch first and falls back to HLT with lookahead
    when the coset cap is hit; the two behave very differently on some
    nilpotent presentations.
    """
    if strategy != "auto":
        return coset_enumerate(P, (), cap, strategy).to_finite_group()
    try:
        return coset_enumerate(P, (), cap, "felsch").to_finite_group()
    except BoundExceeded:
        return coset_enumerate(P, (), cap, "hlt").to_finite_group()
