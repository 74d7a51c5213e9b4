"""Exact arithmetic in multiquadratic fields Q(sqrt(m_1), ..., sqrt(m_t)).

An element is a vector of rationals indexed by subsets S of {0..t-1} (as
bitmasks), standing for sum c_S e_S with e_S = prod_{i in S} sqrt(m_i).  The
product rule e_S e_T = (prod_{i in S & T} m_i) e_{S ^ T} is branch-free.
Numerically sqrt(m) is the principal root (i sqrt|m| for m < 0); then
prod_{i in S} sqrt(m_i) = (-1)^floor(k/2) sqrt(prod m_i) with k the number of
negative radicands in S.

Galois automorphisms are sign vectors s in {+1,-1}^t acting by
sqrt(m_i) -> s_i sqrt(m_i).

The construction of unramified quadratic extensions for the 32.041 case
(odd d) lives at the end of the module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import mpmath

from .arith import factorint, hilbert_symbol, squarefree_part

MAX_RADICANDS = 4


class MultiQuadError(ValueError):
    pass


class IndeterminateSquare(MultiQuadError):
    pass


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _sign_key(n: int) -> dict[int, int]:
    """F2 exponent vector of n (prime -> parity), with -1 as the key -1."""
    out = {}
    if n < 0:
        out[-1] = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out[p] = 1
    return out


def _span_solve(radicands, n: int):
    """S with n = c^2 prod_{i in S} m_i, or None."""
    target = _sign_key(n)
    keys = [_sign_key(m) for m in radicands]
    t = len(radicands)
    for S in range(1 << t):
        acc: dict[int, int] = {}
        for i in range(t):
            if S >> i & 1:
                for p in keys[i]:
                    acc[p] = acc.get(p, 0) ^ 1
        acc = {p for p, v in acc.items() if v}
        if acc == set(target):
            return S
    return None


def check_radicands(radicands) -> tuple[int, ...]:
    radicands = tuple(int(m) for m in radicands)
    if len(radicands) > MAX_RADICANDS:
        raise MultiQuadError(f"at most {MAX_RADICANDS} radicands")
    for m in radicands:
        if m in (0, 1) or squarefree_part(m) != m:
            raise MultiQuadError(f"radicand {m} is not a squarefree integer != 0, 1")
    for k in range(1, len(radicands) + 1):
        if _span_solve(radicands[:k - 1], radicands[k - 1]) is not None:
            raise MultiQuadError(f"radicands {radicands} are dependent modulo squares")
    return radicands


@dataclass(frozen=True)
class MultiQuadElement:
    radicands: tuple[int, ...]
    coords: tuple[Fraction, ...]

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dict(cls, radicands, terms: dict[int, object]) -> "MultiQuadElement":
        radicands = tuple(radicands)
        c = [Fraction(0)] * (1 << len(radicands))
        for S, v in terms.items():
            c[S] += _fr(v)
        return cls(radicands, tuple(c))

    @classmethod
    def rational(cls, radicands, q) -> "MultiQuadElement":
        return cls.from_dict(radicands, {0: q})

    @classmethod
    def sqrt_of(cls, radicands, n: int) -> "MultiQuadElement":
        """The principal square root of the integer n, if it lies in the field."""
        S = _span_solve(radicands, n)
        if S is None:
            raise MultiQuadError(f"sqrt({n}) is not in Q(sqrt {radicands})")
        P, k = 1, 0
        for i, m in enumerate(radicands):
            if S >> i & 1:
                P *= m
                k += m < 0
        c2 = Fraction(n, P)
        num, den = math.isqrt(c2.numerator), math.isqrt(c2.denominator)
        c = Fraction(num, den) * (-1) ** (k // 2)
        return cls.from_dict(radicands, {S: c})

    # -- basics -------------------------------------------------------------

    @property
    def t(self) -> int:
        return len(self.radicands)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def _same(self, other) -> "MultiQuadElement":
        if not isinstance(other, MultiQuadElement):
            return MultiQuadElement.rational(self.radicands, other)
        if other.radicands == self.radicands:
            return other
        return embed(other, self.radicands)

    def __add__(self, other):
        o = self._same(other)
        return MultiQuadElement(self.radicands, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return MultiQuadElement(self.radicands, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiQuadElement):
            q = _fr(other)
            return MultiQuadElement(self.radicands, tuple(a * q for a in self.coords))
        o = self._same(other)
        m = self.radicands
        n = len(self.coords)
        out = [Fraction(0)] * n
        for S, a in enumerate(self.coords):
            if not a:
                continue
            for T, b in enumerate(o.coords):
                if not b:
                    continue
                f = 1
                both = S & T
                i = 0
                while both:
                    if both & 1:
                        f *= m[i]
                    both >>= 1
                    i += 1
                out[S ^ T] += a * b * f
        return MultiQuadElement(m, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "MultiQuadElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0")
        if self.t == 0:
            return MultiQuadElement((), (1 / self.coords[0],))
        A, B = split(self)
        m = self.radicands[-1]
        den = A * A - B * B * m
        inv = den.inverse()
        return join(A * inv, -(B * inv), self.radicands)

    def __truediv__(self, other):
        if not isinstance(other, MultiQuadElement):
            q = _fr(other)
            if q == 0:
                raise ZeroDivisionError("division by 0")
            return self * (1 / q)
        return self * self._same(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = MultiQuadElement.rational(self.radicands, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiQuadElement):
            if other.radicands != self.radicands:
                try:
                    other = embed(other, self.radicands)
                except MultiQuadError:
                    return False
            return self.coords == other.coords
        return self.coords == MultiQuadElement.rational(self.radicands, other).coords

    def __hash__(self):
        return hash((self.radicands, self.coords))

    # -- Galois and norms -------------------------------------------------

    def conj(self, signs) -> "MultiQuadElement":
        out = []
        for S, a in enumerate(self.coords):
            s = 1
            for i in range(self.t):
                if S >> i & 1:
                    s *= signs[i]
            out.append(a * s)
        return MultiQuadElement(self.radicands, tuple(out))

    def norm(self) -> Fraction:
        """Norm down to Q (product of all 2^t conjugates)."""
        x = self
        while x.t:
            A, B = split(x)
            x = A * A - B * B * x.radicands[-1]
        return x.coords[0]

    def trace(self) -> Fraction:
        return self.coords[0] * (1 << self.t)

    # -- numerics -----------------------------------------------------------

    def evaluate(self, signs=None, dps: int = 50):
        """Complex value under the embedding with the given sign vector."""
        with mpmath.workdps(dps):
            roots = [mpmath.sqrt(mpmath.mpf(m)) if m > 0 else 1j * mpmath.sqrt(mpmath.mpf(-m)) for m in self.radicands]
            if signs is not None:
                roots = [r * s for r, s in zip(roots, signs)]
            total = mpmath.mpc(0)
            for S, a in enumerate(self.coords):
                if a:
                    term = mpmath.mpf(a.numerator) / a.denominator
                    for i in range(self.t):
                        if S >> i & 1:
                            term *= roots[i]
                    total += term
            return total

    def __repr__(self):
        terms = []
        for S, a in enumerate(self.coords):
            if a:
                name = "*".join(f"sqrt({self.radicands[i]})" for i in range(self.t) if S >> i & 1)
                terms.append(f"{a}" + (f"*{name}" if name else ""))
        return " + ".join(terms) if terms else "0"


def split(x: MultiQuadElement) -> tuple[MultiQuadElement, MultiQuadElement]:
    """x = A + B sqrt(m_t) with A, B over the first t-1 radicands."""
    half = 1 << (x.t - 1)
    r = x.radicands[:-1]
    return MultiQuadElement(r, x.coords[:half]), MultiQuadElement(r, x.coords[half:])


def join(A: MultiQuadElement, B: MultiQuadElement, radicands) -> MultiQuadElement:
    return MultiQuadElement(tuple(radicands), A.coords + B.coords)


def embed(x: MultiQuadElement, radicands) -> MultiQuadElement:
    """x in the field generated by `radicands` (must contain x's field)."""
    radicands = tuple(radicands)
    images = [MultiQuadElement.sqrt_of(radicands, m) for m in x.radicands]
    out = MultiQuadElement.rational(radicands, 0)
    for S, a in enumerate(x.coords):
        if not a:
            continue
        term = MultiQuadElement.rational(radicands, a)
        for i in range(x.t):
            if S >> i & 1:
                # product of principal roots, not the principal root of the product
                term = term * images[i]
        out = out + term
    return out


def field(radicands):
    """Small factory: returns (one, gens) for the field."""
    radicands = check_radicands(radicands)
    one = MultiQuadElement.rational(radicands, 1)
    gens = [MultiQuadElement.from_dict(radicands, {1 << i: 1}) for i in range(len(radicands))]
    return one, gens


# ---------------------------------------------------------------------------
# square roots


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def sqrt_exact(x: MultiQuadElement) -> MultiQuadElement | None:
    """A square root of x in its field, or None; exact.

    Write x = u + v sqrt(m) and a root as a + b sqrt(m).  Then
    a^2 - m b^2 = +-sqrt(N(x)) with N the relative norm, so
    a^2 = (u +- w)/2 and b = v/(2a) (or b^2 = u/m when a = 0).
    """
    if x.t == 0:
        r = _rational_sqrt(x.coords[0])
        return None if r is None else MultiQuadElement((), (r,))
    if x.is_zero():
        return x
    u, v = split(x)
    m = x.radicands[-1]
    N = u * u - v * v * m
    w = sqrt_exact(N)
    if w is None:
        return None
    zero = MultiQuadElement.rational(u.radicands, 0)
    for ww in (w, -w):
        a = sqrt_exact((u + ww) * Fraction(1, 2))
        if a is None:
            continue
        if not a.is_zero():
            b = v / (a * 2)
        else:
            if not v.is_zero():
                continue
            b = sqrt_exact(u * Fraction(1, m))
            if b is None:
                continue
        r = join(a, b, x.radicands)
        if r * r == x:
            return r
    del zero
    return None


def is_square(x: MultiQuadElement) -> MultiQuadElement | None:
    if x.is_zero():
        raise MultiQuadError("is_square(0)")
    return sqrt_exact(x)


def sqrt_numeric(x: MultiQuadElement, bits: int = 256, max_bits: int = 4096, max_den: int | None = None):
    """Square root by floating reconstruction over all embeddings.

    For each choice of signs of the root under the 2^t embeddings the
    coordinates are recovered by the inverse character transform, rounded to
    rationals and checked exactly.  Precision doubles up to max_bits; then the
    exact recursive root decides.  Only for t <= 3 (the sign search is
    2^(2^t - 1) wide).
    """
    t = x.t
    if t > 3:
        raise MultiQuadError("numeric square roots only for t <= 3")
    sigmas = list(product((1, -1), repeat=t))
    den_bound = max_den or max(1, max(a.denominator for a in x.coords)) * (1 << (2 * t + 2))
    while bits <= max_bits:
        dps = int(bits * 0.302) + 10
        with mpmath.workdps(dps):
            vals = [mpmath.sqrt(x.evaluate(s, dps)) for s in sigmas]
            roots_m = [mpmath.sqrt(mpmath.mpf(m)) if m > 0 else 1j * mpmath.sqrt(mpmath.mpf(-m)) for m in x.radicands]
            eS = []
            for S in range(1 << t):
                e = mpmath.mpc(1)
                for i in range(t):
                    if S >> i & 1:
                        e *= roots_m[i]
                eS.append(e)
            for choice in product((1, -1), repeat=len(sigmas) - 1):
                signs = (1,) + choice
                coords = []
                ok = True
                for S in range(1 << t):
                    acc = mpmath.mpc(0)
                    for k, s in enumerate(sigmas):
                        chi = 1
                        for i in range(t):
                            if S >> i & 1:
                                chi *= s[i]
                        acc += chi * signs[k] * vals[k]
                    c = acc / (len(sigmas) * eS[S])
                    if abs(c.imag) > mpmath.mpf(2) ** (-bits // 2):
                        ok = False
                        break
                    coords.append(Fraction(mpmath.nstr(c.real, dps - 5)).limit_denominator(den_bound))
                if not ok:
                    continue
                r = MultiQuadElement(x.radicands, tuple(coords))
                if r * r == x:
                    return r
        bits *= 2
    r = sqrt_exact(x)
    if r is not None:
        raise IndeterminateSquare("reconstruction failed although x is a square")
    return None


# ---------------------------------------------------------------------------
# minimal polynomials


def _dependence(vectors: list[list[Fraction]]) -> list[Fraction] | None:
    """Coefficients of the first linear dependence of the last vector on the earlier ones."""
    rows: list[tuple[list[Fraction], list[Fraction]]] = []  # (reduced vector, combination)
    n = len(vectors)
    for k, v in enumerate(vectors):
        v = list(v)
        comb = [Fraction(0)] * n
        comb[k] = Fraction(1)
        for pivot_vec, pivot_comb in rows:
            piv = next(i for i, a in enumerate(pivot_vec) if a)
            if v[piv]:
                f = v[piv] / pivot_vec[piv]
                v = [a - f * b for a, b in zip(v, pivot_vec)]
                comb = [a - f * b for a, b in zip(comb, pivot_comb)]
        if not any(v):
            return comb[: k + 1]
        rows.append((v, comb))
    return None


def _primitive(coeffs: list[Fraction]) -> list[int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    ints = [a // g for a in ints]
    if ints[0] < 0:
        ints = [-a for a in ints]
    return ints


def min_poly(x: MultiQuadElement, bound: int = 16) -> list[int]:
    """Primitive integral minimal polynomial, highest degree first."""
    if bound > 32:
        raise MultiQuadError("degree bound above 32")
    powers = [MultiQuadElement.rational(x.radicands, 1).coords]
    p = MultiQuadElement.rational(x.radicands, 1)
    for _ in range(bound):
        p = p * x
        powers.append(p.coords)
        dep = _dependence([list(v) for v in powers])
        if dep is not None:
            return _primitive(dep[::-1])
    raise MultiQuadError(f"degree exceeds the bound {bound}")


def min_poly_sqrt(mu: MultiQuadElement, bound: int = 32) -> list[int]:
    """Minimal polynomial of sqrt(mu), computed in K[y]/(y^2 - mu)."""
    if bound > 32:
        raise MultiQuadError("degree bound above 32")
    one = MultiQuadElement.rational(mu.radicands, 1)
    zero = MultiQuadElement.rational(mu.radicands, 0)
    vecs = [list(one.coords) + list(zero.coords)]
    a, b = one, zero  # current power a + b y
    for _ in range(bound):
        a, b = b * mu, a  # (a + b y) y = b mu + a y
        vecs.append(list(a.coords) + list(b.coords))
        dep = _dependence(vecs)
        if dep is not None:
            return _primitive(dep[::-1])
    raise MultiQuadError(f"degree exceeds the bound {bound}")


def is_integral(x: MultiQuadElement) -> bool:
    poly = min_poly(x, 1 << x.t)
    return abs(poly[0]) == 1


# ---------------------------------------------------------------------------
# ternary forms


@dataclass(frozen=True)
class LegendreSolution:
    x: int
    y: int
    z: int


def isotropy_obstruction(a: int, b: int, c: int):
    """The first place where a x^2 - b y^2 = c z^2 has no nontrivial solution, or None."""
    places = {0, 2}
    for n in (a, b, c):
        places |= set(factorint(abs(n)))
    for p in sorted(places):
        if hilbert_symbol(a * c, -b * c, p) != 1:
            return p
    return None


def legendre_solve(a: int, b: int, c: int, parity: str | None = None, limit: int = 20000) -> LegendreSolution:
    """Primitive solution of a x^2 - b y^2 = c z^2, smallest |x|+|y|+|z|.

    parity "y_even" asks for 2 | y and 2 !| xz; "x_even" for 2 | x and
    2 !| y.  Pairwise coprime solutions are searched in growing boxes.
    """
    if a == 0 or b == 0 or c == 0:
        raise MultiQuadError("degenerate ternary form")
    if a == b == c or (a == b and c == 0):
        raise MultiQuadError("malformed input")
    bad = isotropy_obstruction(a, b, c)
    if bad is not None:
        where = "the real place" if bad == 0 else f"p = {bad}"
        raise MultiQuadError(f"no solution: not locally solvable at {where}")
    B = max(2, math.isqrt(abs(b * c)) + 1, math.isqrt(abs(a * c)) + 1)
    while B <= limit:
        best = None
        for x in range(0, B + 1):
            for y in range(0, B + 1):
                if x == 0 and y == 0:
                    continue
                num = a * x * x - b * y * y
                if num % c:
                    continue
                z2 = num // c
                if z2 < 0:
                    continue
                z = math.isqrt(z2)
                if z * z != z2:
                    continue
                if math.gcd(x, y) != 1 or math.gcd(x, z) != 1 or math.gcd(y, z) != 1:
                    continue
                if parity == "y_even" and not (y % 2 == 0 and x % 2 == 1 and z % 2 == 1):
                    continue
                if parity == "x_even" and not (x % 2 == 0 and y % 2 == 1):
                    continue
                key = (x + y + z, x, y, z)
                if best is None or key < best:
                    best = key
        if best is not None:
            return LegendreSolution(best[1], best[2], best[3])
        B *= 2
    raise MultiQuadError("no solution in the search box")


# ---------------------------------------------------------------------------
# sign vectors


SIGN_TYPES = {
    (1, 1, 1): "(2,2,2)",
    (-1, -1, 1): "(2,4)",
    (-1, 1, 1): "D4",
    (-1, -1, -1): "H8",
}


@dataclass(frozen=True)
class SignVector:
    entries: tuple[int, int, int]
    group: str
    alphas: tuple
    autos: tuple

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.entries))


def sign_vector(mu: MultiQuadElement, autos) -> SignVector:
    """S(mu, K/F) for Gal(K/F) = {1, sigma, tau, sigma tau} given as sign vectors."""
    autos = [tuple(s) for s in autos]
    if len(autos) != 3:
        raise MultiQuadError("need the three nontrivial automorphisms")
    entries, alphas = [], []
    for rho in autos:
        q = mu / mu.conj(rho)
        a = sqrt_exact(q)
        if a is None:
            return SignVector((0, 0, 0), "not normal", (), tuple(autos))
        e = a * a.conj(rho)
        if e == 1:
            entries.append(1)
        elif e == -1:
            entries.append(-1)
        else:
            raise MultiQuadError("alpha^(1+rho) is not +-1")
        alphas.append(a)
    key = tuple(sorted(entries))
    group = {tuple(sorted(k)): v for k, v in SIGN_TYPES.items()}.get(key, "?")
    return SignVector(tuple(entries), group, tuple(alphas), tuple(autos))


def galois_over(fixed_masks, t: int):
    """Nontrivial sign vectors fixing e_S for every S in fixed_masks."""
    out = []
    for s in product((1, -1), repeat=t):
        if all(s) and s == (1,) * t:
            continue
        ok = True
        for S in fixed_masks:
            v = 1
            for i in range(t):
                if S >> i & 1:
                    v *= s[i]
            if v != 1:
                ok = False
                break
        if ok:
            out.append(s)
    return out


# ---------------------------------------------------------------------------
# the 32.041 construction for odd d


@dataclass(frozen=True)
class MuConstruction:
    parts: tuple[int, int, int, int]
    sol: dict
    alpha: tuple
    beta: tuple
    mu: MultiQuadElement
    nu: MultiQuadElement
    mu_sign: int
    rule_sign: int
    norm_is_square: bool


def _alpha(radicands, d_i: int, d4: int, s: LegendreSolution) -> MultiQuadElement:
    return MultiQuadElement.sqrt_of(radicands, d_i) * s.x + MultiQuadElement.sqrt_of(radicands, d4) * s.y


def _beta(radicands, dd: int, s: LegendreSolution) -> MultiQuadElement:
    return MultiQuadElement.sqrt_of(radicands, dd) * s.y + s.x


def build_mu(parts) -> MuConstruction:
    """mu = +-alpha_1 alpha_2 beta_3 and nu = +-alpha_2 alpha_3 beta_1 in K = Q(sqrt d_1, ..., sqrt d_4).

    parts (d1, d2, d3, d4) with d1, d2, d3 < 0 < d4, odd, in an ordering
    satisfying the 32.041 symbol pattern.  The sign of mu is chosen so that
    (mu - 1)/4 is integral; the parity rule y1 + y2 + t3 = 2 mod 4 is
    reported alongside as rule_sign.
    """
    d1, d2, d3, d4 = (int(v) for v in parts)
    if not (d1 < 0 and d2 < 0 and d3 < 0 and d4 > 0) or (d1 * d2 * d3 * d4) % 2 == 0:
        raise MultiQuadError("need odd d1, d2, d3 < 0 < d4")
    from .classifier import pattern_032041

    if pattern_032041((d1, d2, d3, d4), 2) is None:
        raise MultiQuadError("symbol conditions of the 32.041 case not met")
    K = check_radicands((d1, d2, d3, d4))
    s2 = legendre_solve(d1, d4, d2, "y_even")
    s3 = legendre_solve(d2, d4, d3, "y_even")
    s4 = legendre_solve(d3, d4, d1, "y_even")
    s5 = legendre_solve(1, d2 * d3, -d4, "x_even")
    s6 = legendre_solve(1, d3 * d1, -d4, "x_even")
    s7 = legendre_solve(1, d1 * d2, -d4, "x_even")
    a1, a2, a3 = _alpha(K, d1, d4, s2), _alpha(K, d2, d4, s3), _alpha(K, d3, d4, s4)
    b1, b2, b3 = _beta(K, d2 * d3, s5), _beta(K, d3 * d1, s6), _beta(K, d1 * d2, s7)
    mu1 = a1 * a2 * b3
    nu1 = a2 * a3 * b1
    mu_sign = _primary_sign(mu1)
    nu_sign = _primary_sign(nu1)
    rule_sign = -1 if (s2.y + s3.y + s7.x) % 4 == 2 else 1
    mu = mu1 * mu_sign
    nu = nu1 * nu_sign
    n = mu.norm()
    root = _rational_sqrt(abs(n))
    return MuConstruction(
        parts=(d1, d2, d3, d4),
        sol={"2": s2, "3": s3, "4": s4, "5": s5, "6": s6, "7": s7},
        alpha=(a1, a2, a3),
        beta=(b1, b2, b3),
        mu=mu,
        nu=nu,
        mu_sign=mu_sign,
        rule_sign=rule_sign,
        norm_is_square=root is not None and n > 0,
    )


def _primary_sign(x: MultiQuadElement) -> int:
    for s in (1, -1):
        if is_integral((x * s - 1) / 4):
            return s
    raise MultiQuadError("neither sign is 1 mod 4")


def auto_fixing(parts, i: int):
    """Gal(K/K_i) for K_i = k(sqrt d_i): sign vectors fixing sqrt(d_i) and sqrt(d)."""
    t = len(parts)
    return galois_over([1 << i, (1 << t) - 1], t)


def lemma_gamma(parts, c: MuConstruction | None = None) -> dict:
    """gamma = +-beta_1 beta_2 beta_3 against d_4 modulo squares in Q(sqrt d_1, sqrt d_2, sqrt d_3)."""
    d1, d2, d3, d4 = parts
    if c is None:
        c = build_mu(parts)
    K0 = (d1, d2, d3)
    g = c.beta[0] * c.beta[1] * c.beta[2]
    g0 = embed_down(g, K0)
    out = {}
    for s in (1, -1):
        out[s] = sqrt_exact(g0 * s * d4) is not None
    return out


def embed_down(x: MultiQuadElement, radicands) -> MultiQuadElement:
    """Rewrite x over a subfield generated by `radicands` (x must lie in it)."""
    radicands = tuple(radicands)
    images = {}
    for S in range(1 << len(radicands)):
        e = MultiQuadElement.rational(x.radicands, 1)
        for i in range(len(radicands)):
            if S >> i & 1:
                e = e * MultiQuadElement.sqrt_of(x.radicands, radicands[i])
        images[S] = e
    # solve x = sum c_S images[S]; each image is a single basis vector up to a scalar
    coords = [Fraction(0)] * (1 << len(radicands))
    rest = x
    for S, e in images.items():
        idx = next(T for T, a in enumerate(e.coords) if a)
        c = rest.coords[idx] / e.coords[idx]
        coords[S] = c
        rest = rest - e * c
    if not rest.is_zero():
        raise MultiQuadError("element does not lie in the subfield")
    return MultiQuadElement(radicands, tuple(coords))


# the octic printed for the (-7, -3, -23, 5) example, highest degree first
REFERENCE_OCTIC = (1, -3, 14, -38, 85, -134, 244, -120, 240)


def same_octic_field(f, h) -> dict:
    """Whether Q[x]/(f) and Q[x]/(h) coincide, with an exact certificate.

    A root of h is expressed as a polynomial c in a root of f; the embedding
    is verified by h(c(x)) = 0 mod f(x).  Equal degrees and irreducibility
    then give equality of the fields.
    """
    from sympy import CRootOf, Poly, QQ, field_isomorphism, symbols

    x = symbols("x")
    F = Poly(list(f), x, domain=QQ)
    H = Poly(list(h), x, domain=QQ)
    out = {"irreducible_f": F.is_irreducible, "irreducible_h": H.is_irreducible, "same_degree": F.degree() == H.degree()}
    if not (out["irreducible_f"] and out["irreducible_h"] and out["same_degree"]):
        out["isomorphic"] = False
        return out
    coeffs = None
    for i in range(F.degree()):
        coeffs = field_isomorphism(CRootOf(H.as_expr(), 0), CRootOf(F.as_expr(), i), fast=True)
        if coeffs is not None:
            break
    if coeffs is None:
        out["isomorphic"] = False
        return out
    c = Poly([QQ(v.p, v.q) if hasattr(v, "p") else QQ(v) for v in coeffs], x, domain=QQ)
    out["embedding"] = [str(v) for v in coeffs]
    out["isomorphic"] = H.compose(c).rem(F).is_zero
    return out
