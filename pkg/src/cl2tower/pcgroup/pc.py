"""Power-commutator presentations of finite 2-groups.

Generators g_0..g_{n-1} all have relative order 2.  A presentation stores

    g_i^2       = power[i]        (normal word in g_{i+1}..)
    [g_j, g_i]  = comm[(j, i)]    (j > i, normal word in g_{j+1}..)

with [x, y] = x^-1 y^-1 x y, so g_j g_i = g_i g_j [g_j, g_i].  Elements are
exponent vectors over F2 packed into an int (bit i = exponent of g_i).
Missing relations mean trivial right-hand sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .groups import FiniteGroup, GroupError


class InconsistentPresentation(GroupError):
    pass


def _bits(x: int):
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


@dataclass
class PcPresentation:
    ngens: int
    power: dict = field(default_factory=dict)
    comm: dict = field(default_factory=dict)
    names: list | None = None

    def __post_init__(self):
        for i, w in self.power.items():
            if w >> (i + 1) << (i + 1) != w:
                raise GroupError(f"power relation of g{i} must involve later generators")
        for (j, i), w in self.comm.items():
            if not j > i:
                raise GroupError("commutator keys must be (j, i) with j > i")
            if w >> (j + 1) << (j + 1) != w:
                raise GroupError(f"[g{j}, g{i}] must involve generators after g{j}")
        self._memo: dict = {}
        bad = self.consistency_failures()
        if bad:
            raise InconsistentPresentation(f"consistency check failed on {bad[:3]}")

    # -- collection -------------------------------------------------------------

    def mul_gen(self, x: int, k: int) -> int:
        """Normal form of x * g_k."""
        key = (x, k)
        memo = self._memo
        if key in memo:
            return memo[key]
        low = x & ((1 << k) - 1)
        has_k = (x >> k) & 1
        high = x >> (k + 1) << (k + 1)
        # x g_k = low g_k^{e_k} (high) g_k = low g_k^{e_k + 1} (high)^{g_k}
        word: list[int] = []
        if has_k:
            res = low
            word.extend(_bits(self.power.get(k, 0)))
        else:
            res = low | (1 << k)
        for j in _bits(high):
            word.append(j)
            word.extend(_bits(self.comm.get((j, k), 0)))
        for j in word:
            res = self.mul_gen(res, j)
        memo[key] = res
        return res

    def mul(self, x: int, y: int) -> int:
        for j in _bits(y):
            x = self.mul_gen(x, j)
        return x

    def collect(self, word) -> int:
        """Normal form of a word given as a sequence of generator indices.

        A negative entry -(i+1) stands for g_i^-1.
        """
        x = 0
        for t in word:
            if t >= 0:
                x = self.mul_gen(x, t)
            else:
                x = self.mul(x, self.inverse(1 << (-t - 1)))
        return x

    def inverse(self, x: int) -> int:
        # the group is finite of order 2^n: search by powering is fine at this size
        y = x
        prev = 0
        while y != 0:
            prev = y
            y = self.mul(y, x)
        return prev if x else 0

    def gen(self, i: int) -> int:
        return 1 << i

    def consistency_failures(self) -> list:
        n = self.ngens
        g = [1 << i for i in range(n)]
        bad = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    # (g_k g_j) g_i = g_k (g_j g_i)
                    if self.mul(self.mul(g[k], g[j]), g[i]) != self.mul(g[k], self.mul(g[j], g[i])):
                        bad.append(("kji", k, j, i))
        for i in range(n):
            for j in range(i + 1, n):
                # g_j^2 g_i = g_j (g_j g_i) and g_j g_i^2 = (g_j g_i) g_i
                if self.mul(self.mul(g[j], g[j]), g[i]) != self.mul(g[j], self.mul(g[j], g[i])):
                    bad.append(("jji", j, i))
                if self.mul(g[j], self.mul(g[i], g[i])) != self.mul(self.mul(g[j], g[i]), g[i]):
                    bad.append(("jii", j, i))
        for i in range(n):
            if self.mul(self.mul(g[i], g[i]), g[i]) != self.mul(g[i], self.mul(g[i], g[i])):
                bad.append(("iii", i))
        return bad

    # -- conversion ---------------------------------------------------------------

    def to_group(self) -> FiniteGroup:
        N = 1 << self.ngens
        if N > 1 << 13:
            raise GroupError("pc group too large to tabulate")
        T = np.empty((N, N), dtype=np.int64)
        # column for generator products built by right multiplication
        for x in range(N):
            T[x, 0] = x
        for y in range(1, N):
            top = y.bit_length() - 1
            # y = g_top * (y without top)?  not in general; use normal-form order:
            # y = g_{b0} g_{b1} ... ascending, so y = y' g_top with y' = y minus top bit
            prev = y & ~(1 << top)
            col_prev = T[:, prev]
            T[:, y] = [self.mul_gen(int(v), top) for v in col_prev]
        names = self.names
        return FiniteGroup(T, gens=[1 << i for i in range(self.ngens)], names=names)


# ---------------------------------------------------------------------------
# class-2 quotients of the universal group on s1, s2, s3

UNIVERSAL_NAMES = ["s1", "s2", "s3", "S1", "S2", "S3", "t12", "t13", "t23"]
# coordinates of the central elementary part V
V_INDEX = {"S1": 0, "S2": 1, "S3": 2, "t12": 3, "t13": 4, "t23": 5}


def _rref(rows: list[int], width: int) -> list[int]:
    """Reduced row echelon form over F2; pivot = lowest set bit."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if r >> (b & -b).bit_length() - 1 & 1:
                r ^= b
        if r:
            low = (r & -r).bit_length() - 1
            basis = [b ^ r if b >> low & 1 else b for b in basis]
            basis.append(r)
    return sorted(basis, key=lambda b: (b & -b))


def class2_quotient(relations: list[int]) -> tuple[PcPresentation, tuple[int, ...]]:
    """The quotient of the universal group by central relations.

    The universal group is <s1, s2, s3> with G/G' elementary of rank 3,
    class 2, and V = <s_i^2, [s_i, s_j]> elementary abelian of rank 6.  Each
    relation is a 6-bit vector over V (bit order S1 S2 S3 t12 t13 t23).

    Returns the pc presentation on s1, s2, s3 followed by a basis of
    V / <relations>, and the canonical reduced relation space (the
    memoisation key).
    """
    W = _rref([r & 0x3F for r in relations], 6)
    pivots = {(b & -b).bit_length() - 1 for b in W}
    free = [c for c in range(6) if c not in pivots]

    def reduce(v: int) -> int:
        for b in W:
            low = (b & -b).bit_length() - 1
            if v >> low & 1:
                v ^= b
        out = 0
        for pos, c in enumerate(free):
            if v >> c & 1:
                out |= 1 << (3 + pos)
        return out

    images = [reduce(1 << c) for c in range(6)]
    power = {i: images[i] for i in range(3)}
    comm = {(1, 0): images[3], (2, 0): images[4], (2, 1): images[5]}
    names = ["s1", "s2", "s3"] + [UNIVERSAL_NAMES[3 + c] for c in free]
    P = PcPresentation(3 + len(free), power={k: v for k, v in power.items() if v}, comm={k: v for k, v in comm.items() if v}, names=names)
    return P, tuple(W)


@lru_cache(maxsize=None)
def class2_group(key: tuple[int, ...]) -> FiniteGroup:
    P, _ = class2_quotient(list(key))
    return P.to_group()


def v_vector(terms: dict[str, int]) -> int:
    v = 0
    for name, e in terms.items():
        if e % 2:
            v |= 1 << V_INDEX[name]
    return v


def koch_relations(nu, delta, mu) -> list[int]:
    """The four central relations of G/G3 from the symbol data.

    nu[i][j] = [d_i, p_j] (i != j), delta[j] = [d_k, p_j], mu[j] = [d_j, p_4],
    indices 0..2 for the first three prime discriminants.
    """
    rels = [
        v_vector({"S1": delta[0], "S2": nu[1][0], "S3": nu[2][0], "t12": nu[1][0], "t13": nu[2][0]}),
        v_vector({"S1": nu[0][1], "S2": delta[1], "S3": nu[2][1], "t12": nu[0][1], "t23": nu[2][1]}),
        v_vector({"S1": nu[0][2], "S2": nu[1][2], "S3": delta[2], "t13": nu[0][2], "t23": nu[1][2]}),
        v_vector({"S1": mu[0], "S2": mu[1], "S3": mu[2]}),
    ]
    return rels
