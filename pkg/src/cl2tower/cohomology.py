"""Second cohomology H^2(G; F2) with trivial action, and Schur multiplier ranks.

Normalised 2-cocycles f (f(1, g) = f(g, 1) = 0) satisfy

    f(x, y) + f(xy, k) = f(y, k) + f(x, yk).

Taking k in a generating set S, the identity determines f(x, y) from the
values f(x, s), s in S, by walking a spanning tree of the Cayley graph, and
it suffices to impose it for k in S: if it holds for k = a and k = b it
holds for k = ab.  So the unknowns are f(x, s) for x != 1, and the
constraints come from the non-tree edges of the Cayley graph.

Vectors over F2 are Python ints used as bitsets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from .pcgroup.groups import FiniteGroup, GroupError

ORDER_CAP = 128


class OrderCapExceeded(GroupError):
    pass


def _rank(rows) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                break
            r ^= p
    return len(pivots)


@dataclass(frozen=True)
class CocycleSpace:
    order: int
    n_unknowns: int
    cocycle_dim: int      # dim Z^2, normalised
    coboundary_dim: int   # dim B^2, normalised

    @property
    def h2_dim(self) -> int:
        return self.cocycle_dim - self.coboundary_dim


def _check(G: FiniteGroup) -> None:
    if G.n > ORDER_CAP:
        raise OrderCapExceeded(f"|G| = {G.n} exceeds the cap {ORDER_CAP}")


def _generators(G: FiniteGroup) -> list[int]:
    if G.n == 1:
        return []
    if G.n & (G.n - 1) == 0:
        return G.minimal_generators()
    return list(G.gens) if G.gens else list(range(1, G.n))


def cocycle_space(G: FiniteGroup) -> CocycleSpace:
    _check(G)
    n, e, T = G.n, G.e, G.T
    S = _generators(G)
    d = len(S)
    # unknown index of f(x, S[i]) for x != e
    slot = {}
    for x in range(n):
        if x != e:
            for i in range(d):
                slot[(x, i)] = len(slot)

    def U(x: int, i: int) -> int:
        return 0 if x == e else 1 << slot[(x, i)]

    # F[y][x] = f(x, y) as a bitset over the unknowns
    F: list[list[int] | None] = [None] * n
    F[e] = [0] * n
    tree_edges = set()
    queue = deque([e])
    while queue:
        y = queue.popleft()
        for i, g in enumerate(S):
            z = int(T[y, g])
            if F[z] is None:
                Fy = F[y]
                Uy = U(y, i)
                F[z] = [Fy[x] ^ U(int(T[x, y]), i) ^ Uy for x in range(n)]
                tree_edges.add((y, i))
                queue.append(z)
    if any(col is None for col in F):
        raise GroupError("generators do not generate the group")
    rows = []
    for y in range(n):
        for i, g in enumerate(S):
            if (y, i) in tree_edges:
                continue
            z = int(T[y, g])
            Fy, Fz, Uy = F[y], F[z], U(y, i)
            for x in range(n):
                r = Fz[x] ^ Fy[x] ^ U(int(T[x, y]), i) ^ Uy
                if r:
                    rows.append(r)
    zdim = len(slot) - _rank(rows)
    bdim = coboundary_rank(G, S, slot)
    return CocycleSpace(order=n, n_unknowns=len(slot), cocycle_dim=zdim, coboundary_dim=bdim)


def coboundary_rank(G: FiniteGroup, S=None, slot=None) -> int:
    """Rank of c -> dc on normalised cochains, restricted to the f(x, s) coordinates."""
    n, e, T = G.n, G.e, G.T
    if S is None:
        S = _generators(G)
    if slot is None:
        slot = {(x, i): k for k, (x, i) in enumerate((x, i) for x in range(n) if x != e for i in range(len(S)))}
    # dc(x, s) = c(x) + c(s) + c(xs); one row per basis cochain c = [z], z != e
    rows = {z: 0 for z in range(n) if z != e}
    for (x, i), k in slot.items():
        s = S[i]
        for z in (x, s, int(T[x, s])):
            if z != e:
                rows[z] ^= 1 << k
    return _rank(rows.values())


def h2_dim(G: FiniteGroup) -> int:
    """dim over F2 of H^2(G; F2), trivial action."""
    return cocycle_space(G).h2_dim


def multiplier_rank(G: FiniteGroup) -> int:
    """rank of the Schur multiplier M(G) of a finite 2-group.

    By universal coefficients dim H^2(G; F2) = rank M(G) + d(G/G').
    """
    return h2_dim(G) - G.hom_dim_f2()


def h2_dim_bruteforce(G: FiniteGroup) -> int:
    """The full cocycle system over all triples; an oracle for small groups."""
    if G.n > 16:
        raise OrderCapExceeded("brute-force oracle limited to order 16")
    n, e, T = G.n, G.e, G.T
    idx = {}
    for x, y in product(range(n), repeat=2):
        if x != e and y != e:
            idx[(x, y)] = len(idx)

    def v(x, y):
        return 0 if x == e or y == e else 1 << idx[(x, y)]

    rows = []
    for x, y, k in product(range(n), repeat=3):
        r = v(x, y) ^ v(int(T[x, y]), k) ^ v(y, k) ^ v(x, int(T[y, k]))
        if r:
            rows.append(r)
    z = len(idx) - _rank(rows)
    brows = []
    for c in range(n):
        if c == e:
            continue
        r = 0
        for x, y in product(range(n), repeat=2):
            if x != e and y != e and ((x == c) ^ (y == c) ^ (int(T[x, y]) == c)):
                r ^= 1 << idx[(x, y)]
        brows.append(r)
    return z - _rank(brows)
