"""Reference groups for the Hall-Senior labels that occur as G/G3.

Each reference is the class-2 quotient given by one row of the case table
(generators s1, s2, s3 with t_ij = [s_i, s_j]).  Identification of an
arbitrary group is by explicit isomorphism search against these.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .groups import FiniteGroup, GroupError
from .pc import class2_group, class2_quotient, v_vector

OUTSIDE = "outside catalogue"

# case letter -> (presentation of G/G3, Hall-Senior label)
CASE_TABLE: dict[str, tuple[str, str]] = {
    "1A": ("s1^2 = s2^2 = s3^2 = 1", "64.144"),
    "1B": ("s1^2 = s2^2 = 1, s3^2 = t23", "64.144"),
    "1C": ("s1^2 = 1, s2^2 = t12, s3^2 = t13", "64.144"),
    "1D": ("s1^2 = 1, s2^2 = t12, s3^2 = t12 t23", "64.144"),
    "1E": ("s1^2 = s2^2 = t12, s3^2 = 1", "64.147"),
    "1F": ("s1^2 = s2^2 = t12, s3^2 = t12 t13", "64.147"),
    "1G": ("s1^2 = 1, s2^2 = t13 t23, s3^2 = t12 t23", "64.147"),
    "2A": ("s1^2 = s2^2 = 1, s3^2 = t13, t12 t13 t23 = 1", "32.036"),
    "2B": ("s1^2 = 1, s2^2 = t12, s3^2 = t13, t12 t13 t23 = 1", "32.033"),
    "2C": ("s1^2 = s2^2 = t12, s3^2 = t13, t12 t13 t23 = 1", "32.037"),
    "2D": ("s1^2 = t12, s2^2 = t23, s3^2 = t13, t12 t13 t23 = 1", "32.041"),
    "3A": ("s1^2 = t12 t23, s2^2 = t12 t13, s3^2 = 1", "64.147"),
    "3B": ("s1^2 = t12 t13, s2^2 = t12 t23, s3^2 = t13 t23", "64.145"),
    "3C": ("s1^2 = t12 t13, s2^2 = t13, s3^2 = t12", "64.146"),
    "3D": ("s1^2 = t13, s2^2 = t12 t13, s3^2 = 1", "64.144"),
    "3E": ("s1^2 = 1, s2^2 = t12, s3^2 = t13", "64.144"),
    "4A": ("s1^2 = 1, s2^2 = t13 t23, s3^2 = t23, t12 = 1", "32.037"),
    "4B": ("s1^2 = t23, s2^2 = t13, s3^2 = t23, t12 = 1", "32.040"),
    "4C": ("s1^2 = 1, s2^2 = t13 t23, s3^2 = t13, t12 = 1", "32.036"),
    "4D": ("s1^2 = t13, s2^2 = t23, s3^2 = t13, t12 = 1", "32.035"),
    "4E": ("s1^2 = s2^2 = 1, s3^2 = t23, t12 = 1", "32.033"),
    "4F": ("s1^2 = s2^2 = 1, s3^2 = t23, t12 = 1", "32.033"),
    "4G": ("s1^2 = t23, s2^2 = 1, s3^2 = t23, t12 = 1", "32.038"),
    "4H": ("s1^2 = t23, s2^2 = 1, s3^2 = t23, t12 = 1", "32.038"),
    "4I": ("s1^2 = s2^2 = 1, s3^2 = t13, t12 = 1", "32.033"),
    "4J": ("s1^2 = s2^2 = 1, s3^2 = t13, t12 = 1", "32.033"),
    "4K": ("s1^2 = t13, s2^2 = s3^2 = 1, t12 = 1", "32.036"),
    "4L": ("s1^2 = t13, s2^2 = s3^2 = 1, t12 = 1", "32.036"),
}

LABELS = ("32.033", "32.035", "32.036", "32.037", "32.038", "32.040", "32.041", "64.144", "64.145", "64.146", "64.147")

_TOKEN = re.compile(r"s([123])\^2|t(12|13|23)|1")


def _parse_product(text: str) -> int:
    text = text.replace(" ", "")
    v = 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise GroupError(f"cannot parse {text!r} at {pos}")
        if m.group(1):
            v ^= v_vector({"S" + m.group(1): 1})
        elif m.group(2):
            v ^= v_vector({"t" + m.group(2): 1})
        pos = m.end()
    return v


def parse_class2_relations(text: str) -> list[int]:
    """Relations like 's1^2 = s2^2 = t12, t12 t13 t23 = 1' as vectors over V."""
    rels = []
    for clause in text.split(","):
        sides = [_parse_product(s) for s in clause.split("=")]
        for a, b in zip(sides, sides[1:]):
            rels.append(a ^ b)
    return rels


@lru_cache(maxsize=None)
def case_group(case: str) -> FiniteGroup:
    text, _ = CASE_TABLE[case]
    _, key = class2_quotient(parse_class2_relations(text))
    return class2_group(key)


@lru_cache(maxsize=None)
def reference_group(label: str) -> FiniteGroup:
    """The reference instance for a label: the first case-table row carrying it."""
    for case, (_, lab) in CASE_TABLE.items():
        if lab == label:
            return case_group(case)
    raise KeyError(label)


def identify_hall_senior(G: FiniteGroup) -> str:
    """Label of G among the reference groups, or OUTSIDE."""
    if G.n not in (32, 64):
        raise GroupError(f"order {G.n} is not 32 or 64")
    fp = G.fingerprint()
    for label in LABELS:
        R = reference_group(label)
        if R.n != G.n or R.fingerprint() != fp:
            continue
        if G.is_isomorphic(R):
            return label
    return OUTSIDE


@lru_cache(maxsize=None)
def identify_class2_key(key: tuple[int, ...]) -> str:
    """Memoised identification of a class-2 quotient by its relation space."""
    return identify_hall_senior(class2_group(key))
