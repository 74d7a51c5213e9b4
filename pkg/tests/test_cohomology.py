import pytest

from cl2tower.cohomology import OrderCapExceeded, h2_dim, h2_dim_bruteforce, multiplier_rank
from cl2tower.pcgroup.fp import FpPresentation, enumerate_group
from cl2tower.pcgroup.groups import abelian_group, cyclic_group
from cl2tower.pcgroup.hallsenior import reference_group


def _q8():
    return enumerate_group(FpPresentation.parse(["a", "b"], ["a^4", "a^2 = b^2", "b^-1 a b = a^-1"]))


def _d4():
    return enumerate_group(FpPresentation.parse(["a", "b"], ["a^4", "b^2", "b a b = a^-1"]))


SMALL = {
    "C2": lambda: cyclic_group(2),
    "C4": lambda: cyclic_group(4),
    "C2xC2": lambda: abelian_group((2, 2)),
    "C2xC4": lambda: abelian_group((2, 4)),
    "C2^3": lambda: abelian_group((2, 2, 2)),
    "C4xC4": lambda: abelian_group((4, 4)),
    "C2^4": lambda: abelian_group((2, 2, 2, 2)),
    "Q8": _q8,
    "D4": _d4,
}

# rank of the Schur multiplier
MULT = {"C2": 0, "C4": 0, "C2xC2": 1, "C2xC4": 1, "C2^3": 3, "C4xC4": 1, "C2^4": 6, "Q8": 0, "D4": 1}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_multiplier_ranks_small(name):
    assert multiplier_rank(SMALL[name]()) == MULT[name]


@pytest.mark.parametrize("name", sorted(SMALL))
def test_cocycle_method_against_bruteforce(name):
    G = SMALL[name]()
    assert h2_dim(G) == h2_dim_bruteforce(G)


def test_abelian_formula():
    # M(prod C_{n_i}) has rank C(r, 2) for r cyclic 2-power factors
    for inv in [(2, 2, 4), (2, 4, 8), (4, 4, 4)]:
        assert multiplier_rank(abelian_group(inv)) == 3


@pytest.mark.parametrize(
    "label,rank",
    [("32.040", 1), ("32.041", 1), ("32.035", 2), ("32.037", 2), ("32.038", 2), ("32.036", 3), ("32.033", 4)],
)
def test_reference_multiplier_ranks(label, rank):
    assert multiplier_rank(reference_group(label)) == rank


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        h2_dim(abelian_group((2, 2, 2, 2, 2, 2, 2, 2)))
    with pytest.raises(OrderCapExceeded):
        h2_dim_bruteforce(abelian_group((2, 2, 2, 2, 2)))
