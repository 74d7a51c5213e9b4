"""Classification of imaginary quadratic fields with 2-class group (2, 2, 2).

A discriminant d < 0 with Cl2(k) = (2, 2, 2) is a product of four prime
discriminants d1 d2 d3 d4, ordered by Type:

    Type 1: d != 4 mod 8, d1, d2, d3 > 0, d4 < 0
    Type 2: d != 4 mod 8, d1, d2, d3 < 0, d4 > 0
    Type 3: d = 4 mod 8,  d1, d2, d3 > 0, d4 = -4
    Type 4: d = 4 mod 8,  d1, d2 < 0, d3 > 0, d4 = -4

with equal-sign parts in ascending |d_i|.  The class-2 quotient G/G3 of the
Galois group of the 2-class field tower is computed from the symbols
[d_i, p_j] and identified against the Hall-Senior reference groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .arith import DiscriminantFactorization, NotFundamentalError, factor_discriminant, is_fundamental, kronecker
from .pcgroup.hallsenior import identify_class2_key
from .pcgroup.pc import class2_quotient, koch_relations
from .qforms import c4_rho, class_group

UNRESOLVED = "unresolved"


class NotTwoTwoTwo(ValueError):
    """Cl2(k) is not elementary of order 8; carries the actual structure."""

    def __init__(self, d: int, two_sylow: tuple[int, ...]):
        self.d = d
        self.two_sylow = two_sylow
        super().__init__(f"not (2,2,2): Cl2 of d = {d} is {tuple(two_sylow)}")


def sym(a: int, b: int) -> int:
    """(a/p) for the prime p of the prime discriminant b."""
    p = 2 if b in (-4, 8, -8) else abs(b)
    return kronecker(a, p)


def bracket(a: int, b: int) -> int:
    """Additive symbol [a, p]: 1 iff (a/p) = -1."""
    return 1 if sym(a, b) == -1 else 0


@dataclass(frozen=True)
class Graph4:
    """Arrow i -> j iff (d_i/p_j) = -1, nodes in Type order."""

    parts: tuple[int, ...]
    arrows: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, parts) -> "Graph4":
        parts = tuple(parts)
        n = len(parts)
        arrows = tuple(
            tuple(0 if i == j else bracket(parts[i], parts[j]) for j in range(n)) for i in range(n)
        )
        return cls(parts, arrows)

    def edges(self) -> list[tuple[int, int]]:
        n = len(self.parts)
        return [(i, j) for i in range(n) for j in range(n) if self.arrows[i][j]]

    def to_dict(self) -> dict:
        return {"parts": list(self.parts), "arrows": [list(r) for r in self.arrows]}


@dataclass(frozen=True)
class KochExponents:
    nu: tuple[tuple[int, ...], ...]  # nu[i][j] = [d_i, p_j], i, j < 3
    delta: tuple[int, ...]           # delta[j] = [d / d_j, p_j]
    mu: tuple[int, ...]              # mu[j] = [d_j, p_4]


@dataclass(frozen=True)
class PatternMatch:
    """A symbol pattern pinning G/G3, with the part ordering it was matched in."""

    label: str
    case_letter: str
    ordering: tuple[int, ...]
    primes: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class ClassificationRecord:
    d: int
    factorization: tuple[int, ...]
    type_num: int
    case_letter: str
    graph: Graph4
    hall_senior: str
    rho: int
    lambda_rank: int
    koch_key: tuple[int, ...]
    pattern: PatternMatch | None = None

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "factorization": list(self.factorization),
            "type": self.type_num,
            "case_letter": self.case_letter,
            "graph": self.graph.to_dict(),
            "hall_senior": self.hall_senior,
            "rho": self.rho,
            "lambda_rank": self.lambda_rank,
            "pattern": None
            if self.pattern is None
            else {
                "label": self.pattern.label,
                "case_letter": self.pattern.case_letter,
                "ordering": list(self.pattern.ordering),
                "primes": dict(self.pattern.primes),
            },
        }


def type_ordering(f: DiscriminantFactorization) -> tuple[int, tuple[int, ...]]:
    """Type number and the parts in Type order."""
    if len(f) != 4:
        raise ValueError(f"{f.d} has {len(f)} prime discriminants, not 4")
    vals = sorted(f.values, key=lambda v: (abs(v), v))
    neg = [v for v in vals if v < 0]
    pos = [v for v in vals if v > 0]
    if f.d % 8 != 4:
        if len(neg) == 1:
            return 1, tuple(pos + neg)
        if len(neg) == 3:
            return 2, tuple(neg + pos)
    else:
        odd_neg = [v for v in neg if v != -4]
        if len(neg) == 1:
            return 3, tuple(pos + [-4])
        if len(neg) == 3:
            return 4, tuple(odd_neg + pos + [-4])
    raise ValueError(f"{f.d} fits no Type (d > 0?)")


def koch_exponents(parts) -> KochExponents:
    """Symbol data for the G/G3 relations; parts in Type order."""
    parts = tuple(parts)
    if len(parts) != 4:
        raise ValueError("need four prime discriminants")
    d = 1
    for v in parts:
        d *= v
    nu = tuple(tuple(0 if i == j else bracket(parts[i], parts[j]) for j in range(3)) for i in range(3))
    delta = tuple(bracket(d // parts[j], parts[j]) for j in range(3))
    mu = tuple(bracket(parts[j], parts[3]) for j in range(3))
    return KochExponents(nu, delta, mu)


def koch_key(parts) -> tuple[int, ...]:
    e = koch_exponents(parts)
    _, key = class2_quotient(koch_relations(e.nu, e.delta, e.mu))
    return key


# ---------------------------------------------------------------------------
# Symbol patterns from the propositions on the order-32 cases.  Each takes the
# Type-ordered parts and returns a PatternMatch or None.


def _neg_perms(parts):
    """Orderings (d1, d2, d3, d4) with d1, d2, d3 < 0 and d4 > 0."""
    neg = [v for v in parts if v < 0]
    pos = [v for v in parts if v > 0]
    if len(neg) != 3 or len(pos) != 1:
        return
    for perm in permutations(neg):
        yield perm + (pos[0],)


def _s(a, b):
    return sym(a, b)


def _order_index(parts, ordered):
    return tuple(parts.index(v) for v in ordered)


def _pqq(parts):
    """Orderings (p, q, q') of the odd primes of d = -4pqq', q = q' = 3 mod 4."""
    if -4 not in parts:
        return
    odd = [v for v in parts if v != -4]
    pos = [v for v in odd if v > 0]
    neg = [v for v in odd if v < 0]
    if len(pos) != 1 or len(neg) != 2:
        return
    p = pos[0]
    for a, b in ((neg[0], neg[1]), (neg[1], neg[0])):
        yield p, -a, -b


def _leg(a, p):
    return kronecker(a, p)


def pattern_032041(parts, type_num):
    if type_num != 2:
        return None
    for d1, d2, d3, d4 in _neg_perms(parts):
        if all(_s(x, d4) == -1 for x in (d1, d2, d3)) and _s(d1, d2) == _s(d2, d3) == _s(d3, d1) == -1:
            return PatternMatch("32.041", "2D", _order_index(parts, (d1, d2, d3, d4)))
    return None


def pattern_032040(parts, type_num):
    for p, q, q2 in _pqq(parts):
        if (
            q % 8 == 3 and q2 % 8 == 7 and p % 8 == 5
            and _leg(q, p) == _leg(q2, p) == -1 and _leg(q2, q) == 1
        ):
            return PatternMatch("32.040", "4B", _order_index(parts, (-q, -q2, p, -4)), {"p": p, "q": q, "q'": q2})
    return None


def pattern_032038(parts, type_num):
    # the example discriminants require d = -4pqq'
    for p, q, q2 in _pqq(parts):
        if (
            q % 8 == 3 and p % 8 == 5
            and _leg(q, p) == 1 and _leg(q2, p) == -1 and _leg(q2, q) == 1
        ):
            # 4G and 4H share their G/G3 row; only q' mod 8 is known to differ
            return PatternMatch("32.038", "4G/4H", _order_index(parts, (-q, -q2, p, -4)), {"p": p, "q": q, "q'": q2})
    return None


def pattern_032037(parts, type_num):
    for d1, d2, d3, d4 in _neg_perms(parts):
        if (
            _s(d1, d4) == _s(d2, d4) == -1
            and _s(d2, d3) == _s(d4, d3) == 1
            and _s(d3, d2) == _s(d2, d1) == _s(d1, d3) == -1
        ):
            letter = "4A" if type_num == 4 else "2C"
            return PatternMatch("32.037", letter, _order_index(parts, (d1, d2, d3, d4)))
    return None


def pattern_032035(parts, type_num):
    for p, q, q2 in _pqq(parts):
        if (
            q % 8 == 3 and q2 % 8 == 7 and p % 8 == 5
            and _leg(q, p) == _leg(q2, p) == _leg(q2, q) == -1
        ):
            return PatternMatch("32.035", "4D", _order_index(parts, (-q, -q2, p, -4)), {"p": p, "q": q, "q'": q2})
    return None


def pattern_032036(parts, type_num):
    for d1, d2, d3, d4 in _neg_perms(parts):
        if (
            _s(d1, d2) == _s(d1, d3) == _s(d4, d1) == _s(d2, d4) == -1
            and _s(d2, d3) == _s(d4, d3) == _s(d2, d1) == 1
        ):
            if type_num == 2:
                letter = "2A"
            elif d3 == -4:
                letter = "4C"
            elif d1 == -4:
                letter = "4K/4L"
            else:
                letter = UNRESOLVED
            return PatternMatch("32.036", letter, _order_index(parts, (d1, d2, d3, d4)))
    return None


def special_032033(parts):
    """d = -4pqq' with p = 1 mod 8, q = 3 mod 4, q' = 3 mod 8, (p/q) = -1, (p/q') = (q/q') = 1."""
    for p, q, q2 in _pqq(parts):
        if (
            p % 8 == 1 and q % 4 == 3 and q2 % 8 == 3
            and _leg(p, q) == -1 and _leg(p, q2) == 1 and _leg(q, q2) == 1
        ):
            return p, q, q2
    return None


def pattern_032033(parts, type_num):
    for d1, d2, d3, d4 in _neg_perms(parts):
        if _s(d1, d2) == _s(d2, d3) == _s(d3, d1) == _s(d1, d4) == -1 and _s(d4, d2) == _s(d4, d3) == 1:
            primes = {}
            if type_num == 2:
                letter = "2B"
            else:
                sp = special_032033(parts)
                if sp is None:
                    letter = UNRESOLVED
                else:
                    p, q, q2 = sp
                    letter = "4E" if q % 8 == 3 else "4F"
                    primes = {"p": p, "q": q, "q'": q2}
            return PatternMatch("32.033", letter, _order_index(parts, (d1, d2, d3, d4)), primes)
    return None


PATTERNS = (
    pattern_032041,
    pattern_032040,
    pattern_032038,
    pattern_032037,
    pattern_032035,
    pattern_032036,
    pattern_032033,
)


def match_patterns(parts, type_num) -> list[PatternMatch]:
    out = []
    for pat in PATTERNS:
        m = pat(tuple(parts), type_num)
        if m is not None:
            out.append(m)
    return out


# ---------------------------------------------------------------------------


def check_two_two_two(d: int) -> DiscriminantFactorization:
    if d >= 0:
        raise ValueError(f"d = {d} must be negative")
    if not is_fundamental(d):
        raise NotFundamentalError(f"{d} is not a fundamental discriminant")
    cg = class_group(d)
    if cg.two_sylow != (2, 2, 2):
        raise NotTwoTwoTwo(d, cg.two_sylow)
    return factor_discriminant(d)


def classify(d: int) -> ClassificationRecord:
    f = check_two_two_two(d)
    type_num, parts = type_ordering(f)
    key = koch_key(parts)
    label = identify_class2_key(key)
    matches = match_patterns(parts, type_num)
    agreeing = [m for m in matches if m.label == label]
    pattern = agreeing[0] if agreeing else None
    letter = pattern.case_letter if pattern else UNRESOLVED
    lam = 3 if sum(1 for v in parts if v > 0) == 3 else 2
    return ClassificationRecord(
        d=d,
        factorization=parts,
        type_num=type_num,
        case_letter=letter,
        graph=Graph4.of(parts),
        hall_senior=label,
        rho=c4_rho(f),
        lambda_rank=lam,
        koch_key=key,
        pattern=pattern,
    )


def is_two_two_two(d: int) -> bool:
    return d < 0 and is_fundamental(d) and class_group(d).two_sylow == (2, 2, 2)
