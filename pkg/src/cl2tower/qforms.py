"""Class groups of quadratic fields through binary quadratic forms.

Negative discriminants use reduced positive definite forms.  Positive
discriminants use cycles of reduced indefinite forms, which give the
narrow class group; the wide group is the quotient by the class of the
form (-1, b0, -c0), trivial exactly when the fundamental unit has norm -1.
All class numbers reported to callers are wide.

Redei matrix convention (rows and columns indexed by the prime
discriminants d_1..d_t of d, primes p_i):

    R[i][j] = 1  iff  (d_j / p_i) = -1        for i != j
    R[i][i] = sum_{j != i} R[i][j]  (mod 2)   i.e. the symbol (d/d_i / p_i)

Every row sums to zero, and the 4-rank of the narrow class group is
t - 1 - rank_F2(R).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .arith import (
    DiscriminantFactorization,
    NotFundamentalError,
    factor_discriminant,
    is_fundamental,
    kronecker,
)


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c


@dataclass(frozen=True)
class ClassGroupStructure:
    d: int
    h: int
    h2: int
    two_sylow: tuple[int, ...]
    four_rank: int
    narrow_h: int | None = None
    unit_norm: int | None = None

    @property
    def two_rank(self) -> int:
        return len(self.two_sylow)


@dataclass(frozen=True)
class FundamentalUnit:
    """epsilon = (x + y sqrt(d)) / 2 with x^2 - d y^2 = 4 * norm."""

    d: int
    x: int
    y: int
    norm: int

    def as_float(self) -> float:
        return (self.x + self.y * math.sqrt(self.d)) / 2


# ---------------------------------------------------------------------------
# divisors through a lazily grown smallest-prime-factor sieve

_spf = np.zeros(2, dtype=np.int64)


def _ensure_sieve(n: int) -> None:
    global _spf
    if n < len(_spf):
        return
    size = max(n + 1, 2 * len(_spf), 1 << 16)
    spf = np.arange(size, dtype=np.int64)
    for p in range(2, math.isqrt(size - 1) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            mask = block == np.arange(p * p, size, p)
            block[mask] = p
    _spf = spf


def divisors(n: int) -> list[int]:
    """Positive divisors of n >= 1, unsorted."""
    _ensure_sieve(n)
    spf = _spf
    divs = [1]
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        divs = [x * p**k for x in divs for k in range(e + 1)]
    return divs


# ---------------------------------------------------------------------------
# composition and reduction


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def compose(f: tuple[int, int, int], g: tuple[int, int, int]) -> tuple[int, int, int]:
    """Dirichlet composition of primitive forms of equal discriminant, first coefficients > 0.

    Returns an unreduced form.
    """
    a1, b1, _ = f
    a2, b2, c2 = g
    if a1 > a2:
        a1, b1, _, a2, b2, c2 = a2, b2, c2, a1, b1, f[2]
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return a3, b3, c3


def reduce_definite(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Reduced form equivalent to a positive definite (a, b, c)."""
    while True:
        if b > a or b <= -a:
            q, r = divmod(b, 2 * a)
            if r > a:
                r -= 2 * a
                q += 1
            c = c - q * (b + r) // 2
            b = r
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


def _lt_sqrt(x: int, D: int) -> bool:
    return x < 0 or x * x < D


def _gt_sqrt(x: int, D: int) -> bool:
    return x > 0 and x * x > D


def is_reduced_indefinite(a: int, b: int, c: int) -> bool:
    D = b * b - 4 * a * c
    return b > 0 and _lt_sqrt(b, D) and _reduced_core(a, b, D)


def _reduced_core(a: int, b: int, D: int) -> bool:
    # |sqrt(D) - 2|a|| < b  <=>  sqrt(D) < b + 2|a|  and  2|a| - b < sqrt(D)
    aa = 2 * abs(a)
    return _gt_sqrt(b + aa, D) and _lt_sqrt(aa - b, D)


def rho(a: int, b: int, c: int) -> tuple[int, int, int]:
    """One step of the reduction operator for indefinite forms."""
    D = b * b - 4 * a * c
    s = math.isqrt(D)
    cc = abs(c)
    m = 2 * cc
    r = (-b) % m
    if cc * cc > D:
        if r > cc:
            r -= m
    else:
        # largest r < sqrt(D) in the class, which lands in (sqrt(D) - 2|c|, sqrt(D))
        r = s - ((s - r) % m)
    return c, r, (r * r - D) // (4 * c)


def reduce_indefinite(a: int, b: int, c: int) -> tuple[int, int, int]:
    while not is_reduced_indefinite(a, b, c):
        a, b, c = rho(a, b, c)
    return a, b, c


# ---------------------------------------------------------------------------
# enumeration of reduced forms


def reduced_forms(d: int) -> list[tuple[int, int, int]]:
    """All primitive reduced positive definite forms of discriminant d < 0."""
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant")
    out = []
    b = d % 2
    bmax = math.isqrt(-d // 3)
    while b <= bmax:
        n = (b * b - d) // 4
        for a in divisors(n):
            if a < b or a * a > n or a == 0:
                continue
            c = n // a
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
            if b and b != a and a != c:
                out.append((a, -b, c))
        b += 2
    out.sort()
    return out


def reduced_indefinite_forms(D: int) -> list[tuple[int, int, int]]:
    """All primitive reduced indefinite forms of non-square discriminant D > 0."""
    s = math.isqrt(D)
    if s * s == D:
        raise ValueError("square discriminant")
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        n = (D - b * b) // 4  # a * c = -n
        if n == 0:
            continue
        for a in divisors(n):
            if not _reduced_core(a, b, D):
                continue
            c = n // a
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append((a, b, -c))
            out.append((-a, b, c))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# group tables


class FormClassGroup:
    """The (wide) class group of a fundamental discriminant as a concrete finite group.

    Elements are integer ids; `mul` composes representatives and reduces.
    """

    def __init__(self, d: int):
        if not is_fundamental(d):
            raise NotFundamentalError(f"{d} is not a fundamental discriminant")
        self.d = d
        self.unit_norm: int | None = None
        if d < 0:
            self.reps = reduced_forms(d)
            self._index = {f: i for i, f in enumerate(self.reps)}
            self.narrow_h = len(self.reps)
            self._canon = list(range(len(self.reps)))
        else:
            forms = reduced_indefinite_forms(d)
            cycle_of: dict[tuple[int, int, int], int] = {}
            reps = []
            for f in forms:
                if f in cycle_of:
                    continue
                cid = len(reps)
                reps.append(f if f[0] > 0 else None)
                g = f
                while g not in cycle_of:
                    cycle_of[g] = cid
                    if reps[cid] is None and g[0] > 0:
                        reps[cid] = g
                    g = rho(*g)
            self._index = cycle_of
            self.reps = reps
            self.narrow_h = len(reps)
            b0 = d % 2
            j = self._index[reduce_indefinite(-1, b0, (d - b0 * b0) // 4)]
            self.unit_norm = -1 if j == self.identity_narrow else 1
            self._canon = [min(i, self._mul_narrow(i, j)) for i in range(len(reps))]
        self.elements = sorted(set(self._canon))
        self.identity = self._canon[self.identity_narrow]

    @property
    def identity_narrow(self) -> int:
        b0 = self.d % 2
        f = (1, b0, (b0 * b0 - self.d) // 4)
        if self.d < 0:
            return self._index[f]
        return self._index[reduce_indefinite(*f)]

    def _mul_narrow(self, i: int, j: int) -> int:
        f = compose(self.reps[i], self.reps[j])
        if self.d < 0:
            return self._index[reduce_definite(*f)]
        return self._index[reduce_indefinite(*f)]

    def mul(self, i: int, j: int) -> int:
        return self._canon[self._mul_narrow(i, j)]

    def square(self, i: int) -> int:
        return self.mul(i, i)

    def __len__(self) -> int:
        return len(self.elements)


def _two_adic(n: int) -> int:
    return (n & -n).bit_length() - 1


def sylow2_by_images(G: FormClassGroup) -> tuple[int, ...]:
    """2-Sylow invariants from the chain of images G, G^2, G^4, ...

    The number of invariant factors >= 2^(k+1) is log2(|G^(2^k)| / |G^(2^(k+1))|).
    """
    level = set(G.elements)
    counts = []
    while True:
        nxt = {G.square(x) for x in level}
        if len(nxt) == len(level):
            break
        counts.append(_two_adic(len(level) // len(nxt)))
        level = nxt
    inv = []
    for k, c in enumerate(counts):
        nk1 = counts[k + 1] if k + 1 < len(counts) else 0
        inv += [2 ** (k + 1)] * (c - nk1)
    return tuple(sorted(inv))


def sylow2_by_orders(G: FormClassGroup) -> tuple[int, ...]:
    """2-Sylow invariants from the kernel sizes |G[2^k]|, by brute-force powering of every class."""
    h = len(G)
    K = _two_adic(h)
    kernel = [0] * (K + 1)  # kernel[k] = #{x : x^(2^k) = 1}
    for x in G.elements:
        y = x
        k = 0
        while y != G.identity and k < K:
            y = G.square(y)
            k += 1
        if y == G.identity:
            for j in range(k, K + 1):
                kernel[j] += 1
    ranks = [_two_adic(kernel[k] // kernel[k - 1]) for k in range(1, K + 1)]  # #{e_i >= k}
    inv = []
    for k, r in enumerate(ranks, start=1):
        nxt = ranks[k] if k < len(ranks) else 0
        inv += [2**k] * (r - nxt)
    return tuple(sorted(inv))


@lru_cache(maxsize=200_000)
def class_group(d: int) -> ClassGroupStructure:
    """Wide class group data of the quadratic field of fundamental discriminant d."""
    G = FormClassGroup(d)
    inv = sylow2_by_images(G)
    h2 = math.prod(inv)
    return ClassGroupStructure(
        d=d,
        h=len(G),
        h2=h2,
        two_sylow=inv,
        four_rank=sum(1 for e in inv if e >= 4),
        narrow_h=G.narrow_h,
        unit_norm=G.unit_norm,
    )


def class_number(d: int) -> int:
    return class_group(d).h


def h2(n: int) -> int:
    """2-class number of Q(sqrt(n)) for any non-square integer n."""
    from .arith import field_discriminant

    return class_group(field_discriminant(n)).h2


def four_rank(d: int) -> int:
    return class_group(d).four_rank


# ---------------------------------------------------------------------------
# Redei matrix


def _f2_rank(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                break
    return len(basis)


def redei_matrix(f: DiscriminantFactorization) -> list[list[int]]:
    vals, primes = f.values, f.primes
    t = len(vals)
    R = [[0] * t for _ in range(t)]
    for i in range(t):
        for j in range(t):
            if i != j and kronecker(vals[j], primes[i]) == -1:
                R[i][j] = 1
        R[i][i] = sum(R[i]) % 2
    return R


def redei_four_rank(d: int) -> int:
    """Narrow 4-rank from the F2-nullity of the Redei matrix."""
    f = factor_discriminant(d)
    R = redei_matrix(f)
    rows = [sum(bit << j for j, bit in enumerate(row)) for row in R]
    return len(f) - 1 - _f2_rank(rows)


# ---------------------------------------------------------------------------
# fundamental units


def fundamental_unit(d: int) -> FundamentalUnit:
    """Least unit > 1 of the order of discriminant d > 0, from the continued fraction of omega."""
    if d <= 0 or not is_fundamental(d):
        raise NotFundamentalError(f"{d} is not a positive fundamental discriminant")
    p0 = d % 2
    # omega = (p0 + sqrt(d)) / 2; complete quotients (P + sqrt(d)) / Q
    P, Q = p0, 2
    s = math.isqrt(d)
    tr, nm = p0, (p0 * p0 - d) // 4  # trace and norm of omega
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    while True:
        a = (P + s) // Q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        norm = h * h - h * k * tr + k * k * nm  # N(h - k omega)
        if norm in (1, -1):
            return FundamentalUnit(d, 2 * h - k * p0, k, norm)
        P = a * Q - P
        Q = (d - P * P) // Q


def fundamental_unit_bruteforce(d: int, limit: int = 10**6) -> FundamentalUnit:
    """Smallest y >= 1 with d y^2 +- 4 a square; oracle for small d."""
    for y in range(1, limit):
        for norm in (-1, 1):
            x2 = d * y * y + 4 * norm
            if x2 > 0:
                x = math.isqrt(x2)
                if x * x == x2:
                    return FundamentalUnit(d, x, y, norm)
    raise ArithmeticError("unit beyond search limit")


# ---------------------------------------------------------------------------
# C4-factorizations


def c4_factorizations(f: DiscriminantFactorization) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All C4-factorizations D * D' built from the prime discriminants of f.

    D and D' are products over disjoint non-empty index sets S, T (not
    necessarily covering all parts); the pair is a C4-factorization of DD'
    when (D/p') = (D'/p) = +1 for every p | D and p' | D'.  Each unordered
    pair is listed once as (S, T) with S < T.
    """
    vals, primes = f.values, f.primes
    idx = range(len(vals))
    subsets = [S for k in range(1, len(vals)) for S in combinations(idx, k)]

    def prod(S):
        return math.prod(vals[i] for i in S)

    out = []
    for S in subsets:
        for T in subsets:
            if S >= T or set(S) & set(T):
                continue
            DS, DT = prod(S), prod(T)
            if all(kronecker(DT, primes[i]) == 1 for i in S) and all(
                kronecker(DS, primes[j]) == 1 for j in T
            ):
                out.append((S, T))
    return out


def c4_rho(f: DiscriminantFactorization) -> int:
    """Number of C4-factorizations constructed from the prime discriminants of f."""
    if len(f) < 2:
        raise ValueError("need at least two prime discriminants")
    return len(c4_factorizations(f))


def complementary_c4_splittings(f: DiscriminantFactorization) -> list[tuple[int, ...]]:
    """Index sets S with d = D_S * D_(complement) a C4-factorization of d itself."""
    n = len(f)
    out = []
    for S, T in c4_factorizations(f):
        if len(S) + len(T) == n:
            out.append(S)
    return out
