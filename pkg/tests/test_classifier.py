import math

import pytest

from cl2tower.arith import NotFundamentalError, kronecker
from cl2tower.classifier import (
    UNRESOLVED,
    NotTwoTwoTwo,
    classify,
    is_two_two_two,
    match_patterns,
)
from cl2tower.pcgroup.hallsenior import CASE_TABLE
from cl2tower.qforms import class_group

SURVEY_LO = -30000


@pytest.fixture(scope="module")
def small_survey(full_survey):
    return [r for r in full_survey[0] if r.d > SURVEY_LO]


@pytest.mark.parametrize(
    "d,label,letter",
    [
        (-420, "32.040", "4B"),
        (-660, "32.038", "4G/4H"),
        (-840, "32.041", "2D"),
        (-1155, "32.037", "2C"),
        (-1320, "32.036", "2A"),
        (-1380, "32.035", "4D"),
        (-1428, "32.037", "4A"),
        (-1540, "32.036", "4K/4L"),
    ],
)
def test_examples(d, label, letter):
    r = classify(d)
    assert (r.hall_senior, r.case_letter) == (label, letter)
    assert math.prod(r.factorization) == d


def test_rejections():
    with pytest.raises(NotTwoTwoTwo):
        classify(-15)
    with pytest.raises(NotFundamentalError):
        classify(-10)
    with pytest.raises(ValueError):
        classify(60)
    assert not is_two_two_two(-84) and is_two_two_two(-660)


def test_type_ordering(small_survey):
    for r in small_survey:
        p = r.factorization
        if r.type_num == 1:
            assert p[0] > 0 and p[1] > 0 and p[2] > 0 and p[3] < 0 and r.d % 8 != 4
        elif r.type_num == 2:
            assert p[0] < 0 and p[1] < 0 and p[2] < 0 and p[3] > 0 and r.d % 8 != 4
        elif r.type_num == 3:
            assert p[3] == -4 and min(p[:3]) > 0
        else:
            assert p[3] == -4 and p[0] < 0 and p[1] < 0 and p[2] > 0


def test_order_by_type(small_survey):
    # three positive parts give a 2-generator-deficient tower group of order 64
    for r in small_survey:
        big = r.type_num in (1, 3)
        assert r.hall_senior.startswith("64.") == big
        assert r.lambda_rank == (3 if big else 2)


def test_case_letters_agree_with_koch_label(small_survey):
    for r in small_survey:
        if r.case_letter == UNRESOLVED:
            continue
        for letter in r.case_letter.split("/"):
            assert CASE_TABLE[letter][1] == r.hall_senior
            assert letter[0] == str(r.type_num)


def test_patterns_never_contradict_koch(small_survey):
    # a matching pattern whose label differs from the Koch label would be a bug
    for r in small_survey:
        for m in match_patterns(r.factorization, r.type_num):
            assert m.label == r.hall_senior, (r.d, m.label)


def test_all_order32_labels_resolved(small_survey):
    labels = {"32.040", "32.041", "32.035", "32.037", "32.038"}
    for r in small_survey:
        if r.hall_senior in labels:
            assert r.case_letter != UNRESOLVED


def test_graph_arrows(small_survey):
    for r in small_survey[:100]:
        g = r.graph
        for i, j in g.edges():
            q = abs(r.factorization[j])
            q = 2 if q in (4, 8) else q
            assert kronecker(r.factorization[i], q) == -1


def test_two_sylow_is_two_two_two(small_survey):
    for r in small_survey[:50]:
        assert class_group(r.d).two_sylow == (2, 2, 2)


def test_to_dict_roundtrip_keys():
    d = classify(-660).to_dict()
    assert set(d) == {"d", "factorization", "type", "case_letter", "graph", "hall_senior", "rho", "lambda_rank", "pattern"}
    assert d["pattern"]["label"] == "32.038"
