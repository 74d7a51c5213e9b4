"""Integer and symbol primitives.

Kronecker symbols, deterministic primality and factorization for 64-bit
integers, and the decomposition of fundamental discriminants into prime
discriminants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class NotFundamentalError(ValueError):
    """Raised when an integer is not a fundamental discriminant."""


# ---------------------------------------------------------------------------
# primality and factorization

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


_TRIAL_BOUND = 10**6


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.

    Trial division up to 10**6, Pollard rho for what is left.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n and p < _TRIAL_BOUND:
        for q in (p, p + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        p += 6
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        if math.isqrt(m) ** 2 == m:
            r = math.isqrt(m)
            stack += [r, r]
            continue
        d = _pollard_rho(m)
        stack += [d, m // d]
    return dict(sorted(out.items()))


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


def squarefree_part(n: int) -> int:
    """The squarefree integer m with n = m * k**2, sign kept."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    m = 1
    for p, e in factorint(n).items():
        if e % 2:
            m *= p
    return m if n > 0 else -m


def field_discriminant(n: int) -> int:
    """Discriminant of Q(sqrt(n)) for a non-square integer n."""
    m = squarefree_part(n)
    if m == 1:
        raise ValueError(f"{n} is a square; Q(sqrt({n})) is not quadratic")
    return m if m % 4 == 1 else 4 * m


# ---------------------------------------------------------------------------
# symbols


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n).

    Negative n uses (a/-1) = sign(a); (a/2) is 0 for even a, +1 for
    a = +-1 mod 8 and -1 for a = +-3 mod 8.  Only positive second
    arguments occur in practice.
    """
    if n == 0:
        raise ValueError("kronecker(a, 0) is not used here; n must be nonzero")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
        n >>= v
    if n == 1:
        return result
    return result * jacobi(a, n)


def legendre_euler(a: int, p: int) -> int:
    """Legendre symbol through Euler's criterion; used as an oracle."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """Hilbert symbol (a, b)_p for nonzero integers; p = 0 means the real place."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of 0")
    if p == 0:
        return -1 if a < 0 and b < 0 else 1
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = a // p**alpha, b // p**beta
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta) % 2 and p % 4 == 3 else 1
    return s * jacobi(u, p) ** beta * jacobi(v, p) ** alpha


# ---------------------------------------------------------------------------
# discriminants


def is_fundamental(d: int) -> bool:
    if d in (0, 1):
        return False
    r = d % 4
    if r == 1:
        return is_squarefree(d)
    if r == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


@dataclass(frozen=True, order=True)
class PrimeDiscriminant:
    """-4, 8, -8 or p* = (-1)^((p-1)/2) p for an odd prime p."""

    value: int

    def __post_init__(self):
        v = self.value
        if v in (-4, 8, -8):
            return
        if v % 4 != 1 or not is_prime(abs(v)):
            raise ValueError(f"{v} is not a prime discriminant")

    @property
    def prime(self) -> int:
        return 2 if self.value in (-4, 8, -8) else abs(self.value)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"PrimeDiscriminant({self.value})"


def prime_discriminant(p: int) -> int:
    """p* for an odd prime p."""
    return p if p % 4 == 1 else -p


@dataclass(frozen=True)
class DiscriminantFactorization:
    d: int
    parts: tuple[PrimeDiscriminant, ...]

    def __post_init__(self):
        prod = 1
        for q in self.parts:
            prod *= q.value
        if prod != self.d:
            raise ValueError(f"parts multiply to {prod}, not {self.d}")
        primes = [q.prime for q in self.parts]
        if len(set(primes)) != len(primes):
            raise ValueError("prime discriminants must be pairwise coprime")

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(q.value for q in self.parts)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(q.prime for q in self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def factor_discriminant(d: int) -> DiscriminantFactorization:
    """Unique decomposition of a fundamental discriminant into prime discriminants.

    Parts are sorted by absolute value (ties: negative first).
    """
    if d in (0, 1):
        raise NotFundamentalError(f"{d} is not a discriminant")
    if d % 4 in (2, 3):
        raise NotFundamentalError(f"{d} = {d % 4} mod 4 is not a discriminant")
    fac = factorint(d)
    odd_square = [p for p, e in fac.items() if p != 2 and e > 1]
    if odd_square:
        raise NotFundamentalError(f"{d} is divisible by {odd_square[0]}^2")
    parts = [prime_discriminant(p) for p in fac if p != 2]
    odd = 1
    for q in parts:
        odd *= q
    e2 = fac.get(2, 0)
    if e2:
        if e2 == 1:  # unreachable for d = 0, 1 mod 4
            raise NotFundamentalError(f"{d} = 2 mod 4")
        if e2 > 3:
            raise NotFundamentalError(f"{d} is divisible by 16")
        rest = d // odd
        if e2 == 2:
            if rest != -4:
                raise NotFundamentalError(f"{d}/4 = 1 mod 4, so {d} is not fundamental")
        elif rest not in (8, -8):
            raise NotFundamentalError(f"unexpected even part {rest}")
        parts.append(rest)
    elif odd != d:
        raise NotFundamentalError(f"{d} is not fundamental")
    parts.sort(key=lambda v: (abs(v), v))
    return DiscriminantFactorization(d, tuple(PrimeDiscriminant(v) for v in parts))


@lru_cache(maxsize=None)
def fundamental_discriminants(lo: int, hi: int) -> tuple[int, ...]:
    """All fundamental discriminants d with lo <= d <= hi (cached)."""
    return tuple(d for d in range(lo, hi + 1) if d % 4 in (0, 1) and is_fundamental(d))
