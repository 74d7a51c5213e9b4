import pytest

from cl2tower.pcgroup.families import (
    class2_truncation,
    counterexample_alternative,
    counterexample_quotient,
    counterexample_relations,
    gamma_family,
)
from cl2tower.pcgroup.fp import BoundExceeded, FpPresentation, ParseError, enumerate_group
from cl2tower.pcgroup.groups import GroupError, abelian_group, cyclic_group, direct_product
from cl2tower.pcgroup.hallsenior import CASE_TABLE, LABELS, case_group, identify_hall_senior, reference_group


def quotient_label(G):
    return identify_hall_senior(G.quotient(G.lcs_term(3))[0])


def test_small_presentations():
    Q8 = enumerate_group(FpPresentation.parse(["a", "b"], ["a^4", "a^2 = b^2", "b^-1 a b = a^-1"]))
    D4 = enumerate_group(FpPresentation.parse(["a", "b"], ["a^4", "b^2", "b a b = a^-1"]))
    assert Q8.n == 8 and D4.n == 8
    assert not Q8.is_isomorphic(D4)
    assert sorted(Q8.element_orders.tolist()).count(2) == 1
    assert sorted(D4.element_orders.tolist()).count(2) == 5
    assert Q8.abelianization() == (2, 2)


def test_enumeration_strategies_agree():
    P = FpPresentation.parse(["a", "b"], ["a^8", "b^2", "b a b = a^3"])
    assert enumerate_group(P, strategy="felsch").n == enumerate_group(P, strategy="hlt").n == 16


def test_parse_error():
    with pytest.raises(ParseError):
        FpPresentation.parse(["a"], ["a^^2"])


def test_abelian_groups():
    A = abelian_group((2, 4))
    assert A.n == 8 and A.is_abelian() and A.abelianization() == (2, 4)
    B = direct_product(cyclic_group(2), cyclic_group(2))
    assert B.abelian_invariants() == (2, 2)


@pytest.mark.parametrize("label", LABELS)
def test_reference_groups(label):
    G = reference_group(label)
    assert G.n == int(label.split(".")[0])
    assert G.abelianization() == (2, 2, 2)
    assert G.lcs_term(3).size == 1  # class 2
    assert identify_hall_senior(G) == label


def test_case_table_rows_match_labels():
    for case, (_, label) in CASE_TABLE.items():
        assert identify_hall_senior(case_group(case)) == label


def test_order32_labels_distinct():
    groups = [reference_group(L) for L in LABELS if L.startswith("32")]
    for i, G in enumerate(groups):
        for H in groups[i + 1 :]:
            assert not G.is_isomorphic(H)


@pytest.mark.parametrize("fam,eps,label", [(38, 0, "32.038"), (37, 0, "32.037"), (37, 1, "32.037"), (35, 0, "32.035")])
@pytest.mark.parametrize("n", [2, 3])
def test_gamma_families(fam, eps, label, n):
    G = gamma_family(fam, n, eps)
    assert G.n == 2 ** (n + 4)
    assert G.subgroup_abelianization(G.derived_subgroup()) == (2, 2**n)
    assert quotient_label(G) == label
    # G' abelian: length-2 tower groups
    Gp = G.induced(G.derived_subgroup())[0]
    assert Gp.is_abelian()


def test_gamma_needs_n_at_least_2():
    with pytest.raises(GroupError):
        gamma_family(38, 1)


def test_counterexample_quotient_and_alternative():
    Q = counterexample_quotient()
    assert Q.n == 64 and identify_hall_senior(Q) == "64.144"
    A = counterexample_alternative()
    assert A.n == 512
    assert quotient_label(A) == "32.036"
    assert [int(len(H)) for H in A.lower_central_series()] == [512, 64, 16, 4, 2, 1]


def test_truncation_adds_class2_relators():
    rels = counterexample_relations()
    assert len(class2_truncation(rels)) == len(rels) + 9


def test_bound_exceeded_reported():
    P = FpPresentation.parse(["a", "b"], ["a^64", "b^64", "a b = b a"])
    with pytest.raises(BoundExceeded):
        enumerate_group(P, cap=512)
