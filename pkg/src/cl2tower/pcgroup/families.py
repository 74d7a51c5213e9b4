"""The three-generator families of 2-groups and the order 2^9 example.

Relators are transcribed as displayed, with c_ij = [a_i, a_j] and
c_ijk = [c_ij, a_k]; the groups are realised by coset enumeration.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .fp import FpPresentation, enumerate_group
from .groups import FiniteGroup, GroupError

GENS = ["a1", "a2", "a3"]


def c(i: int, j: int) -> str:
    return f"[a{i},a{j}]"


def gamma_relations(family: int, n: int, eps: int = 0) -> list[str]:
    if n < 2:
        raise GroupError("n must be at least 2")
    if family == 38:
        return [
            "a1^4 = a2^4 = a3^2 = 1",
            f"a1^2 = {c(1, 2)}^{2 ** (n - 1)}",
            f"a2^2 = {c(1, 3)}",
            f"{c(2, 3)} = a1^2",
        ]
    if family == 37:
        if eps not in (0, 1):
            raise GroupError("eps must be 0 or 1")
        a3sq = f"{c(1, 3)} a2^2" if eps else c(1, 3)
        return [
            f"a1^4 = a2^4 = a3^4 = {c(1, 2)}^{2 ** n} = 1",
            f"a1^2 = {c(1, 3)}",
            f"a3^2 = {a3sq}",
            f"a2^2 = {c(1, 2)}^{2 ** (n - 1)} = {c(2, 3)}",
        ]
    if family == 35:
        return [
            f"a1^4 = a2^{2 ** (n + 1)} = a3^4 = 1",
            f"a1^2 = {c(1, 3)}",
            f"a2^2 = {c(1, 2)}",
            f"a3^2 = {c(1, 3)} {c(1, 2)}^{2 ** (n - 1)}",
            f"{c(2, 3)} = 1",
        ]
    raise GroupError(f"unknown family {family}")


def gamma_presentation(family: int, n: int, eps: int = 0) -> FpPresentation:
    return FpPresentation.parse(GENS, gamma_relations(family, n, eps))


@lru_cache(maxsize=None)
def gamma_family(family: int, n: int, eps: int = 0) -> FiniteGroup:
    return enumerate_group(gamma_presentation(family, n, eps))


def counterexample_relations() -> list[str]:
    rels = [
        f"a1^2 = a2^2 = {c(1, 2)}^16 = {c(1, 3)}^16 = 1",
        f"a3^2 = {c(1, 2)}^2 {c(1, 3)}^2",
    ]
    pairs = [(1, 2), (1, 3), (2, 3)]
    for (i, j), (k, l), m in product(pairs, pairs, (1, 2, 3)):
        rels.append(f"[{c(i, j)}, [{c(k, l)}, a{m}]]")
    return rels


def counterexample_alternative_relations() -> list[str]:
    """A nearby reading (a3^2 = c13, c23 = c12^2 c13^2) that does close at order 2^9."""
    lit = counterexample_relations()
    return [lit[0], f"a3^2 = {c(1, 3)}", f"{c(2, 3)} = {c(1, 2)}^2 {c(1, 3)}^2"] + lit[2:]


def class2_truncation(relations: list[str]) -> list[str]:
    """Append [a_i, a_j, a_k] = 1 for all i, j, k, presenting G/G3."""
    extra = [f"[{c(i, j)}, a{k}]" for i, j in ((1, 2), (1, 3), (2, 3)) for k in (1, 2, 3)]
    return list(relations) + extra


@lru_cache(maxsize=None)
def counterexample_group() -> FiniteGroup:
    """The order 2^9 example as transcribed; raises BoundExceeded if it does not close."""
    return enumerate_group(FpPresentation.parse(GENS, counterexample_relations()))


@lru_cache(maxsize=None)
def counterexample_quotient() -> FiniteGroup:
    """G/G3 for the transcribed example."""
    return enumerate_group(FpPresentation.parse(GENS, class2_truncation(counterexample_relations())))


@lru_cache(maxsize=None)
def counterexample_alternative() -> FiniteGroup:
    # Felsch needs far more than the cap here; HLT with lookahead closes quickly
    return enumerate_group(FpPresentation.parse(GENS, counterexample_alternative_relations()), strategy="hlt")
