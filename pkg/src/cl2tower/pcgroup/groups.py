"""Finite groups given by a Cayley table.

Every group in the package (pc quotients, coset-enumerated groups,
reference groups) ends up here.  Elements are the integers 0..n-1 and
subgroups are sorted numpy arrays of element ids.  Commutators follow
[x, y] = x^-1 y^-1 x y.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np


class GroupError(ValueError):
    pass


def _as_subgroup(elems) -> np.ndarray:
    return np.unique(np.asarray(elems, dtype=np.int64))


@dataclass(frozen=True)
class Fingerprint:
    order: int
    order_profile: tuple
    abelianization: tuple
    center: int
    derived: tuple
    maximal_abelianizations: tuple


class FiniteGroup:
    def __init__(self, table, gens=None, names=None):
        T = np.asarray(table, dtype=np.int64)
        n = T.shape[0]
        if T.shape != (n, n):
            raise GroupError("table must be square")
        ident = np.flatnonzero((T == np.arange(n)).all(axis=1))
        if len(ident) != 1:
            raise GroupError("no unique identity")
        self.T = T
        self.n = n
        self.e = int(ident[0])
        rows, cols = np.nonzero(T == self.e)
        inv = np.empty(n, dtype=np.int64)
        inv[rows] = cols
        self.inv = inv
        self.gens = list(gens) if gens is not None else None
        self.names = names
        self._orders = None
        self._cache: dict = {}

    # -- basics -------------------------------------------------------------

    def __len__(self) -> int:
        return self.n

    @property
    def order(self) -> int:
        return self.n

    def mul(self, a: int, b: int) -> int:
        return int(self.T[a, b])

    def prod(self, *xs: int) -> int:
        r = self.e
        for x in xs:
            r = int(self.T[r, x])
        return r

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        r, b = self.e, a
        while k:
            if k & 1:
                r = int(self.T[r, b])
            b = int(self.T[b, b])
            k >>= 1
        return r

    def comm(self, a: int, b: int) -> int:
        T, inv = self.T, self.inv
        return int(T[T[inv[a], inv[b]], T[a, b]])

    def comm_array(self, A, B) -> np.ndarray:
        """All commutators [a, b], a in A, b in B."""
        A = np.asarray(A)
        B = np.asarray(B)
        T, inv = self.T, self.inv
        left = T[np.ix_(inv[A], inv[B])]
        right = T[np.ix_(A, B)]
        return T[left, right]

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            orders = np.ones(self.n, dtype=np.int64)
            cur = np.arange(self.n)
            done = cur == self.e
            k = 1
            while not done.all():
                cur = self.T[cur, np.arange(self.n)]
                k += 1
                hit = (cur == self.e) & ~done
                orders[hit] = k
                done |= hit
            self._orders = orders
        return self._orders

    def is_abelian(self) -> bool:
        return bool((self.T == self.T.T).all())

    def check_associative(self) -> bool:
        if self.n > 128:
            return self._assoc_gens()
        T = self.T
        # T[T][a, b, c] = (ab)c and T[:, T][a, b, c] = a(bc)
        return bool((T[T] == T[:, T]).all())

    def _assoc_gens(self) -> bool:
        T = self.T
        gens = self.gens or list(range(self.n))
        for g in gens:
            if not (T[T[:, :], g] == T[:, T[:, g]]).all():
                return False
        return True

    # -- subgroups ------------------------------------------------------------

    def subgroup(self, gens) -> np.ndarray:
        gens = [int(g) for g in np.atleast_1d(np.asarray(gens, dtype=np.int64))]
        member = np.zeros(self.n, dtype=bool)
        member[self.e] = True
        frontier = np.array([self.e])
        if not gens:
            return frontier
        G = np.array(gens)
        while len(frontier):
            cand = np.unique(self.T[np.ix_(frontier, G)])
            new = cand[~member[cand]]
            member[new] = True
            frontier = new
        return np.flatnonzero(member)

    def closure_of_set(self, S) -> np.ndarray:
        """Subgroup generated by an arbitrary (possibly large) set of elements."""
        S = np.unique(np.asarray(S, dtype=np.int64))
        # keep a small generating set
        gens: list[int] = []
        H = np.array([self.e])
        mask = np.zeros(self.n, dtype=bool)
        mask[self.e] = True
        for x in S:
            if not mask[x]:
                gens.append(int(x))
                H = self.subgroup(gens)
                mask[:] = False
                mask[H] = True
        return H

    def commutator_subgroup(self, A, B) -> np.ndarray:
        return self.closure_of_set(self.comm_array(A, B).ravel())

    def whole(self) -> np.ndarray:
        return np.arange(self.n)

    def derived_subgroup(self) -> np.ndarray:
        if "derived" not in self._cache:
            self._cache["derived"] = self.commutator_subgroup(self.whole(), self.whole())
        return self._cache["derived"]

    def lower_central_series(self) -> list[np.ndarray]:
        """G = G_1 > G_2 > ... down to the first repeated term (trivial for nilpotent G)."""
        if "lcs" not in self._cache:
            series = [self.whole()]
            while True:
                nxt = self.commutator_subgroup(self.whole(), series[-1])
                if len(nxt) == len(series[-1]):
                    break
                series.append(nxt)
            self._cache["lcs"] = series
        return self._cache["lcs"]

    def lcs_term(self, j: int) -> np.ndarray:
        """G_j, with G_1 = G; terms past the end repeat the last one."""
        s = self.lower_central_series()
        return s[min(j - 1, len(s) - 1)]

    def center(self) -> np.ndarray:
        T = self.T
        return np.flatnonzero((T == T.T).all(axis=1))

    def squares(self) -> np.ndarray:
        return np.unique(self.T[np.arange(self.n), np.arange(self.n)])

    def frattini(self) -> np.ndarray:
        """Frattini subgroup of a 2-group: G^2 G'."""
        self._require_two_group()
        return self.closure_of_set(np.concatenate([self.squares(), self.derived_subgroup()]))

    def _require_two_group(self) -> None:
        if self.n & (self.n - 1):
            raise GroupError("operation implemented for 2-groups only")

    def is_normal(self, H) -> bool:
        mask = np.zeros(self.n, dtype=bool)
        mask[H] = True
        T, inv = self.T, self.inv
        conj = T[T[inv[:, None], np.asarray(H)[None, :]], np.arange(self.n)[:, None]]
        return bool(mask[conj].all())

    # -- quotients and induced groups ----------------------------------------

    def coset_labels(self, N) -> np.ndarray:
        """Label of xN for every x (the least element of the coset)."""
        N = np.asarray(N)
        return self.T[:, N].min(axis=1)

    def quotient(self, N) -> tuple["FiniteGroup", np.ndarray]:
        """G/N for normal N, with the projection as an array of quotient ids."""
        lab = self.coset_labels(N)
        reps, proj = np.unique(lab, return_inverse=True)
        Q = proj[self.T[np.ix_(reps, reps)]]
        gens = None
        if self.gens is not None:
            gens = [int(proj[g]) for g in self.gens]
        return FiniteGroup(Q, gens=gens), proj

    def induced(self, H) -> tuple["FiniteGroup", np.ndarray]:
        """H as a group in its own right; returns it and the id -> element map."""
        H = np.asarray(H)
        pos = np.full(self.n, -1, dtype=np.int64)
        pos[H] = np.arange(len(H))
        sub = pos[self.T[np.ix_(H, H)]]
        if (sub < 0).any():
            raise GroupError("not closed under multiplication")
        return FiniteGroup(sub), H

    # -- abelian invariants ----------------------------------------------------

    def abelian_invariants(self) -> tuple[int, ...]:
        """Invariant factors (as prime powers, sorted) of an abelian group."""
        if not self.is_abelian():
            raise GroupError("group is not abelian")
        out = []
        for p in _prime_factors(self.n):
            # r_k = #{invariants p^e with e >= k} from kernel sizes of x -> x^(p^k)
            counts = []
            k = 0
            while True:
                k += 1
                kern = int((self._power_map(p**k) == self.e).sum())
                counts.append(kern)
                if kern == _p_part(self.n, p):
                    break
            logs = [0] + [round(math.log(c, p)) for c in counts]
            ranks = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
            for i, r in enumerate(ranks, start=1):
                nxt = ranks[i] if i < len(ranks) else 0
                out += [p**i] * (r - nxt)
        return tuple(sorted(out))

    def _power_map(self, k: int) -> np.ndarray:
        cur = np.full(self.n, self.e)
        base = np.arange(self.n)
        while k:
            if k & 1:
                cur = self.T[cur, base]
            base = self.T[base, base]
            k >>= 1
        return cur

    def abelianization(self) -> tuple[int, ...]:
        if "ab" not in self._cache:
            Q, _ = self.quotient(self.derived_subgroup())
            self._cache["ab"] = Q.abelian_invariants()
        return self._cache["ab"]

    def subgroup_abelianization(self, H) -> tuple[int, ...]:
        K, _ = self.induced(H)
        return K.abelianization()

    def rank(self) -> int:
        """Minimal number of generators of a 2-group."""
        self._require_two_group()
        return int(round(math.log2(self.n // len(self.frattini()))))

    def hom_dim_f2(self) -> int:
        """dim over F2 of Hom(G, F2)."""
        return sum(1 for e in self.abelianization() if e % 2 == 0)

    # -- maximal subgroups and transfer ----------------------------------------

    def maximal_subgroups(self) -> list[np.ndarray]:
        """All subgroups of index 2 of a 2-group, in a deterministic order."""
        self._require_two_group()
        if "max" in self._cache:
            return self._cache["max"]
        Phi = self.frattini()
        Q, proj = self.quotient(Phi)
        d = int(round(math.log2(Q.n)))
        basis = self.minimal_generators()
        # coordinates of each quotient element in the basis images
        coord = np.zeros(Q.n, dtype=np.int64)
        bimg = [int(proj[b]) for b in basis]
        for mask in range(1 << d):
            x = Q.e
            for i in range(d):
                if mask >> i & 1:
                    x = Q.mul(x, bimg[i])
            coord[x] = mask
        out = []
        for fmask in range(1, 1 << d):
            par = np.array([bin(int(c) & fmask).count("1") & 1 for c in coord])
            out.append(np.flatnonzero(par[proj] == 0))
        self._cache["max"] = out
        return out

    def minimal_generators(self) -> list[int]:
        """Generators whose images form a basis of G/Phi(G) (2-groups)."""
        if "mingens" in self._cache:
            return self._cache["mingens"]
        if self.gens is not None and len(self.subgroup(self.gens)) == self.n:
            cand_order = list(self.gens) + list(range(self.n))
        else:
            cand_order = list(range(self.n))
        Phi = self.frattini()
        gens: list[int] = []
        K = Phi
        mask = np.zeros(self.n, dtype=bool)
        mask[K] = True
        for x in cand_order:
            if not mask[x]:
                gens.append(int(x))
                K = self.closure_of_set(np.concatenate([Phi, gens]))
                mask[:] = False
                mask[K] = True
                if len(K) == self.n:
                    break
        self._cache["mingens"] = gens
        return gens

    def transfer_index2(self, H, g: int) -> int:
        """Transfer G -> H/H' for [G:H] = 2, as the least element of the image coset.

        For h in H the image is h z^-1 h z H' with z any element outside H;
        for g outside H it is g^2 H'.
        """
        H = np.asarray(H)
        if 2 * len(H) != self.n:
            raise GroupError("subgroup is not of index 2")
        inH = np.zeros(self.n, dtype=bool)
        inH[H] = True
        z = int(np.flatnonzero(~inH)[0])
        Hd = self.commutator_subgroup(H, H)
        if inH[g]:
            img = self.prod(g, int(self.inv[z]), g, z)
        else:
            img = self.mul(g, g)
        return int(self.T[img, Hd].min())

    def transfer(self, H, g: int) -> int:
        """Transfer G -> H/H' from a right transversal, for any subgroup H."""
        H = np.asarray(H)
        inH = np.zeros(self.n, dtype=bool)
        inH[H] = True
        # right cosets Hx labelled by the least element
        lab = self.T[H, :].min(axis=0)
        reps = np.unique(lab)
        rep_of = {int(l): int(l) for l in reps}
        acc = self.e
        for r in reps:
            rg = self.mul(int(r), g)
            s = rep_of[int(lab[rg])]
            acc = self.mul(acc, self.mul(rg, int(self.inv[s])))
        Hd = self.commutator_subgroup(H, H)
        return int(self.T[acc, Hd].min())

    # -- isomorphism -----------------------------------------------------------

    def element_invariants(self) -> np.ndarray:
        """Per-element invariant used to prune isomorphism search."""
        if "einv" not in self._cache:
            T = self.T
            cent = (T == T.T).sum(axis=1)
            orders = self.element_orders
            sq_orders = orders[T[np.arange(self.n), np.arange(self.n)]]
            Z = np.zeros(self.n, dtype=bool)
            Z[self.center()] = True
            D = np.zeros(self.n, dtype=bool)
            D[self.derived_subgroup()] = True
            key = ((orders * 1000 + cent) * 1000 + sq_orders) * 4 + Z * 2 + D
            self._cache["einv"] = key
        return self._cache["einv"]

    def fingerprint(self) -> Fingerprint:
        if "fp" not in self._cache:
            maxab: tuple = ()
            if self.n & (self.n - 1) == 0 and self.n > 1:
                maxab = tuple(sorted(self.subgroup_abelianization(M) for M in self.maximal_subgroups()))
            der, _ = self.induced(self.derived_subgroup())
            der_inv = der.abelian_invariants() if der.is_abelian() else ("nonabelian", der.n)
            self._cache["fp"] = Fingerprint(
                order=self.n,
                order_profile=tuple(sorted(Counter(self.element_orders.tolist()).items())),
                abelianization=self.abelianization(),
                center=len(self.center()),
                derived=der_inv,
                maximal_abelianizations=maxab,
            )
        return self._cache["fp"]

    def isomorphism_to(self, other: "FiniteGroup") -> np.ndarray | None:
        """An isomorphism self -> other as an array, or None.

        Backtracks over images of a minimal generating set, checking the
        homomorphism property on each partial subgroup <g_1..g_i>.
        """
        if self.n != other.n:
            return None
        if self.n & (self.n - 1) == 0:
            if self.fingerprint() != other.fingerprint():
                return None
            gens = self._search_generators()
        else:
            gens = self.gens or list(range(self.n))
        levels = self._bfs_levels(gens)
        inv_self = self.element_invariants()
        inv_other = other.element_invariants()
        if sorted(inv_self.tolist()) != sorted(inv_other.tolist()):
            return None
        cands = [np.flatnonzero(inv_other == inv_self[g]) for g in gens]
        phi = np.full(self.n, -1, dtype=np.int64)
        phi[self.e] = other.e
        images: list[int] = []

        def extend(level: int) -> bool:
            if level == len(gens):
                return len(np.unique(phi)) == self.n and (phi >= 0).all()
            tree, checks, members = levels[level]
            for h in cands[level]:
                images.append(int(h))
                saved = phi.copy()
                ok = True
                for child, parent, gi in tree:
                    phi[child] = other.T[phi[parent], images[gi]]
                if True:
                    img_targets = phi[checks[:, 2]]
                    srcs = other.T[phi[checks[:, 0]], np.array(images)[checks[:, 1]]]
                    ok = bool((img_targets == srcs).all())
                    if ok:
                        filled = phi[members]
                        ok = len(np.unique(filled)) == len(filled)
                if ok and extend(level + 1):
                    return True
                phi[:] = saved
                images.pop()
            return False

        if extend(0):
            return phi.copy()
        return None

    def is_isomorphic(self, other: "FiniteGroup") -> bool:
        return self.isomorphism_to(other) is not None

    def _search_generators(self) -> list[int]:
        """Minimal generators chosen from the rarest element-invariant classes."""
        key = self.element_invariants()
        freq = Counter(key.tolist())
        order = sorted(range(self.n), key=lambda x: (freq[int(key[x])], x))
        Phi = self.frattini()
        gens: list[int] = []
        mask = np.zeros(self.n, dtype=bool)
        mask[Phi] = True
        for x in order:
            if not mask[x]:
                gens.append(x)
                K = self.closure_of_set(np.concatenate([Phi, gens]))
                mask[:] = False
                mask[K] = True
                if len(K) == self.n:
                    break
        return gens

    def _bfs_levels(self, gens):
        """For each i: spanning-tree edges of <g_1..g_i> new at that level, all edges to check, members."""
        levels = []
        member = np.zeros(self.n, dtype=bool)
        member[self.e] = True
        elems = [self.e]
        for i in range(len(gens)):
            use = gens[: i + 1]
            tree = []
            frontier = list(elems)
            # extend closure using all generators so far
            queue = list(elems)
            while queue:
                x = queue.pop(0)
                for gi, g in enumerate(use):
                    y = int(self.T[x, g])
                    if not member[y]:
                        member[y] = True
                        tree.append((y, x, gi))
                        elems.append(y)
                        queue.append(y)
            del frontier
            E = np.array(elems)
            checks = np.array([(x, gi, int(self.T[x, g])) for x in elems for gi, g in enumerate(use)], dtype=np.int64)
            levels.append((tree, checks, E))
        return levels

    # -- misc ------------------------------------------------------------------

    def relabel(self, perm) -> "FiniteGroup":
        """Isomorphic copy with element x renamed perm[x]."""
        perm = np.asarray(perm)
        invp = np.argsort(perm)
        T2 = perm[self.T[np.ix_(invp, invp)]]
        gens = [int(perm[g]) for g in self.gens] if self.gens is not None else None
        return FiniteGroup(T2, gens=gens)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    n, m = A.n, B.n
    a = np.repeat(np.arange(n), m)
    b = np.tile(np.arange(m), n)
    T = A.T[a[:, None], a[None, :]] * m + B.T[b[:, None], b[None, :]]
    return FiniteGroup(T)


def cyclic_group(n: int) -> FiniteGroup:
    x = np.arange(n)
    return FiniteGroup((x[:, None] + x[None, :]) % n, gens=[1 % n])


def abelian_group(invariants) -> FiniteGroup:
    G = cyclic_group(1)
    for e in invariants:
        G = direct_product(G, cyclic_group(e))
    return G
