import math
import random

import pytest

from cl2tower.arith import fundamental_discriminants, is_prime, kronecker
from cl2tower.classifier import classify
from cl2tower.qforms import fundamental_unit
from cl2tower.towers import (
    LENGTH_OPEN,
    LENGTH_TWO,
    TABLE1,
    FormulaError,
    FormulaInput,
    OutOfScope,
    ambiguous_rank_of,
    formula_input,
    gamma_group_for,
    genus_field_h2,
    h2_from_formula,
    local_norm_unit,
    m_field_check,
    r2_max,
    tower_report,
    type1_divisibility_check,
    unit_index_complex,
    unit_index_real_multiquad,
    unit_nonresidue_check,
    v_exponent,
)

LO = -20000


@pytest.fixture(scope="module")
def recs(full_survey):
    return [r for r in full_survey[0] if r.d > LO]


def _label(recs, label):
    return [r for r in recs if r.hall_senior == label]


def test_v_exponent():
    assert [v_exponent(m, True) for m in (1, 2, 3)] == [0, 2, 9]
    assert [v_exponent(m, False) for m in (1, 2, 3)] == [0, 1, 5]
    assert v_exponent(4, True) == 28 and v_exponent(4, False) == 16


def test_class_number_formula_examples():
    # Q(sqrt 2, sqrt 3): h = 1 with q = 4
    assert h2_from_formula(formula_input((2, 3), 4)) == 1
    # Q(i, sqrt 5), the Hilbert class field of Q(sqrt -5): h = 1 with q = 1
    assert h2_from_formula(formula_input((-1, 5), 1)) == 1
    with pytest.raises(FormulaError):
        h2_from_formula(FormulaInput(m=2, real=True, h2s=(1, 1), q=1))
    with pytest.raises(FormulaError):
        h2_from_formula(FormulaInput(m=3, real=True, h2s=(1,) * 7, q=1))


@pytest.mark.parametrize("K,q", [((2, 3), 4), ((2, 5), 2), ((3, 5), 2), ((2, 7), 4), ((5, 13), 2)])
def test_unit_index_two_routes(K, q):
    assert unit_index_real_multiquad(K).q == q
    assert unit_index_real_multiquad(K, method="numeric").q == q


def test_unit_index_octic():
    assert unit_index_real_multiquad((2, 3, 5)).q == 64


def test_unit_index_complex_rejects_zeta8():
    with pytest.raises(ValueError):
        unit_index_complex((-1, 2), 1)


@pytest.mark.parametrize("D0,m,rank", [(-4, 3, 0), (-4, 5, 0), (-4, -3, 0), (-4, 2, 0), (-4, 231, 2)])
def test_ambiguous_rank_examples(D0, m, rank):
    assert ambiguous_rank_of(D0, m).rank == rank


def test_ambiguous_rank_refuses_even_class_number():
    with pytest.raises(ValueError):
        ambiguous_rank_of(-5, 3)


def test_local_norm_product_formula():
    rng = random.Random(11)
    ms = [3 * 7, 3 * 11 * 19, -7 * 23, 2 * 3 * 7, 5 * 13]
    for D0 in (-4, -3, -7, 5, 8, 12, 13):
        m = rng.choice(ms)
        data = ambiguous_rank_of(D0, m)
        prod = math.prod(1 if local_norm_unit(data.D0, m, pl) else -1 for pl in data.places)
        assert prod == 1
        assert data.rank == data.t - 1 - int(math.log2(data.index_EH))


def test_unit_nonresidue_random_pairs():
    rng = random.Random(5)
    ds = [d for d in fundamental_discriminants(5, 500) if fundamental_unit(d).norm == -1]
    ps = [p for p in range(3, 10**4) if p % 4 == 3 and is_prime(p)]
    n = 0
    while n < 200:
        d, p = rng.choice(ds), rng.choice(ps)
        if kronecker(d, p) != -1:
            continue
        n += 1
        assert unit_nonresidue_check(d, p), (d, p)


def test_unit_nonresidue_small_and_errors():
    assert unit_nonresidue_check(5, 3) and unit_nonresidue_check(5, 7)
    with pytest.raises(ValueError):
        unit_nonresidue_check(5, 11)  # 11 splits
    with pytest.raises(ValueError):
        unit_nonresidue_check(12, 7)  # norm +1


def test_type1_divisibility(recs):
    t1 = [r for r in recs if r.type_num == 1]
    assert t1
    for r in t1:
        c = type1_divisibility_check(r.d)
        assert c["three_part_div4"] and c["two_part_div2"] and c["prod_bound_ok"] and c["divisible_by_32"], r.d


def test_type1_divisibility_with_unit_index():
    c = type1_divisibility_check(-3315, with_unit_index=True)
    assert c["q_K"] == 16 and c["h2_L"] == 256 and c["h2_L_divisible"]


def test_m_field(recs):
    rows = [r for r in _label(recs, "32.036") if r.case_letter == "4K/4L"][:4]
    assert rows[0].d == -1540
    for r in rows:
        c = m_field_check(r)
        assert c["subfield_table_ok"]
        assert c["m_stmt"] == c["m_table"] - 1
        assert c["h2_M"] == c["h2_M_expected"] and c["h2_K"] == c["h2_K_expected"]


@pytest.mark.parametrize(
    "d,label,structure,group",
    [(-660, "32.038", (2, 4), "Gamma_2^(38)"), (-1155, "32.037", (2, 4), "Gamma_2,1^(37)"), (-1380, "32.035", (2, 4), "Gamma_2^(35)"), (-420, "32.040", (2, 2), None)],
)
def test_tower_report_examples(d, label, structure, group):
    rep = tower_report(classify(d))
    assert rep.hall_senior == label and rep.cl2_k1_structure == structure and rep.group == group
    assert rep.tower_length == LENGTH_TWO and rep.rank_cl2_k1 == 2


def test_tower_report_032033_and_out_of_scope():
    rep = tower_report(classify(-3135))
    assert rep.hall_senior == "32.033"
    assert rep.tower_length == LENGTH_OPEN and rep.rank_cl2_k1 == 3 and rep.cl2_k1_structure is None
    with pytest.raises(OutOfScope):
        tower_report(classify(-3315))


def test_gamma_group_matches_report(recs):
    for label in ("32.038", "32.037", "32.035"):
        for r in _label(recs, label)[:3]:
            rep = tower_report(r)
            G = gamma_group_for(rep)
            assert G.subgroup_abelianization(G.derived_subgroup()) == rep.cl2_k1_structure


def test_genus_field_consistency(recs):
    # h2 of the genus field (Q = 2) equals |Cl2(k^1)| for the length-2 labels
    for label in ("32.038", "32.037", "32.035", "32.040", "32.041"):
        for r in _label(recs, label)[:3]:
            assert genus_field_h2(r.d, 2) == tower_report(r).cl2_k1_order, r.d


@pytest.mark.parametrize("label,expected", [("32.033", 4), ("32.035", 3), ("32.036", 3), ("32.037", 3), ("32.038", 3), ("32.040", 2), ("32.041", 2)])
def test_r2_computed(recs, label, expected):
    for r in _label(recs, label)[:4]:
        assert r2_max(r) == (expected, True)


def test_table1_r2_rows_for_rho_zero_labels():
    # the two rho = 0 rows record R2 = 3; both computation routes give 2
    assert TABLE1["32.040"]["R2"] == 3 and TABLE1["32.041"]["R2"] == 3
