"""Acceptance criteria 1-10.

Each test prints one PASS/FAIL line (also collected into the terminal
summary) and then asserts the same condition.  Run directly with
`python tests/test_acceptance.py` to get only the ten lines.
"""

import io
import json
import time
from contextlib import redirect_stdout


from cl2tower.arith import factor_discriminant, is_fundamental, is_prime, kronecker, legendre_euler
from cl2tower.classifier import classify
from cl2tower.cli import main
from cl2tower.cohomology import multiplier_rank
from cl2tower.multiquad import (
    REFERENCE_OCTIC,
    MultiQuadElement,
    auto_fixing,
    build_mu,
    min_poly_sqrt,
    same_octic_field,
    sign_vector,
)
from cl2tower.pcgroup.families import counterexample_group, gamma_family
from cl2tower.pcgroup.fp import BoundExceeded
from cl2tower.pcgroup.hallsenior import identify_hall_senior, reference_group
from cl2tower.qforms import FormClassGroup, c4_rho, four_rank, h2, redei_four_rank, sylow2_by_images, sylow2_by_orders
from cl2tower.towers import LENGTH_OPEN, ambiguous_rank_of, m_field_check, tower_report

RESULTS = {}


def record(k: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line)


def _cli_json(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, json.loads(buf.getvalue())


def _quotient_label(G):
    return identify_hall_senior(G.quotient(G.lcs_term(3))[0])


# ---------------------------------------------------------------------------


def test_criterion_01_032038_examples():
    details, ok = [], True
    for d in (-660, -1092):
        t = time.perf_counter()
        code, out = _cli_json(["tower", "-d", str(d), "--json"])
        dt = time.perf_counter() - t
        good = code == 0 and out["hall_senior"] == "32.038" and out["cl2_k1"] == [2, 4] and out["tower_length"] == 2 and dt < 1
        ok &= good
        details.append(f"d={d} label={out['hall_senior']} Cl2(k1)={out['cl2_k1']} length={out['tower_length']} {dt:.2f}s")
    record(1, ok, "; ".join(details))
    assert ok


def test_criterion_02_032037_table():
    expected = {-1155: 4, -1428: 4, -3003: 4, -3444: 8}
    details, ok = [], True
    for d, h in expected.items():
        t = time.perf_counter()
        rec = classify(d)
        rep = tower_report(rec)
        d1, d2, d3, d4 = (rec.factorization[i] for i in rec.pattern.ordering)
        got = h2(d3 * d4)
        eps = rep.parameters["eps"]
        dt = time.perf_counter() - t
        good = rep.hall_senior == "32.037" and got == h and eps == (0 if d % 8 == 4 else 1) and 2 ** rep.parameters["n"] == h and dt < 1
        ok &= good
        details.append(f"d={d} h2(d3d4)={got} eps={eps} {dt:.2f}s")
    record(2, ok, "; ".join(details))
    assert ok


def test_criterion_03_032036_table():
    expected = {-1540: (3, 2), -7332: (3, 2), -8372: (4, 3), -10212: (3, 2)}
    details, ok = [], True
    for d, (m, n) in expected.items():
        t = time.perf_counter()
        rec = classify(d)
        rep = tower_report(rec)
        chk = m_field_check(rec, with_genus_field=False)
        dt = time.perf_counter() - t
        got = (rep.parameters["m"], rep.parameters["n"])
        # the table uses 2^m = h2(d1 d2 d3); the class number statement uses 2^(m+1)
        formula_ok = chk["h2_M"] == 2 ** (chk["m_stmt"] + chk["n"] + 1)
        good = rep.hall_senior == "32.036" and got == (m, n) and formula_ok and dt < 2
        ok &= good
        details.append(
            f"d={d} (m,n)={got} expected {(m, n)} h2(M)={chk['h2_M']}"
            f"=2^({chk['m_stmt']}+{chk['n']}+1):{formula_ok} {dt:.2f}s"
        )
    record(3, ok, "; ".join(details))
    assert ok


def test_criterion_04_032033_table():
    expected = {
        -6132: ("4F", (2, 2, 2)),
        -8148: ("4F", (2, 2, 2)),
        -11748: ("4E", (3, 2, 2)),
        -12036: ("4E", (2, 2, 2)),
        -14916: ("4E", (2, 2, 3)),
        -26292: ("4F", (3, 2, 3)),
        -40836: ("4E", (3, 3, 3)),
    }
    details, ok = [], True
    for d, (case, lmn) in expected.items():
        t = time.perf_counter()
        rec = classify(d)
        rep = tower_report(rec)
        dt = time.perf_counter() - t
        P = rep.parameters
        got = (P.get("l"), P.get("m"), P.get("n"))
        good = (
            rep.hall_senior == "32.033"
            and rec.case_letter == case
            and got == lmn
            and rep.rank_cl2_k1 == 3
            and rep.tower_length == LENGTH_OPEN
            and dt < 2
        )
        ok &= good
        details.append(f"d={d} {rec.case_letter} lmn={got}")
    record(4, ok, "; ".join(details))
    assert ok


def test_criterion_05_table1(full_survey):
    expected_mult = {"32.040": 1, "32.041": 1, "32.035": 2, "32.037": 2, "32.038": 2, "32.036": 3, "32.033": 4}
    expected_rho = {"32.040": 0, "32.041": 0, "32.035": 1, "32.037": 1, "32.038": 1, "32.036": 2, "32.033": 3}
    t = time.perf_counter()
    mult = {L: multiplier_rank(reference_group(L)) for L in expected_mult}
    rhos = {}
    for r in full_survey[0]:
        if r.hall_senior in expected_rho:
            rhos.setdefault(r.hall_senior, set()).add(c4_rho(factor_discriminant(r.d)))
    dt = time.perf_counter() - t
    ok = mult == expected_mult and all(rhos.get(L) == {v} for L, v in expected_rho.items()) and dt < 10
    rho_txt = ", ".join(f"{L}:{sorted(rhos.get(L, ()))}" for L in expected_rho)
    record(5, ok, f"multiplier ranks {mult}; rho per label {rho_txt}; {dt:.2f}s (survey itself {full_survey[1]:.1f}s)")
    assert ok


def test_criterion_06_group_suite():
    t = time.perf_counter()
    ok, details = True, []
    for fam, eps_list, label in ((38, (0,), "32.038"), (37, (0, 1), "32.037"), (35, (0,), "32.035")):
        for eps in eps_list:
            for n in (2, 3, 4):
                G = gamma_family(fam, n, eps)
                Gp = G.derived_subgroup()
                good = G.subgroup_abelianization(Gp) == (2, 2**n) and _quotient_label(G) == label and G.n == 2 ** (n + 4)
                ok &= good
                if not good:
                    details.append(f"family {fam} eps={eps} n={n} failed")
    details.append("Gamma families n=2,3,4: " + ("ok" if ok else "mismatch"))
    try:
        G = counterexample_group()
        second = len(G.induced(G.derived_subgroup())[0].derived_subgroup())
        q = _quotient_label(G)
        good = G.n == 512 and second > 1 and q == "32.036"
        details.append(f"order-2^9 presentation: order {G.n}, |G''| = {second}, G/G3 = {q}")
    except BoundExceeded as e:
        good = False
        details.append(f"order-2^9 presentation: coset enumeration exceeded its bound ({e})")
    ok &= good
    dt = time.perf_counter() - t
    ok &= dt < 60
    details.append(f"{dt:.1f}s")
    record(6, ok, "; ".join(details))
    assert ok


def test_criterion_07_mu_example():
    t = time.perf_counter()
    parts = (-7, -3, -23, 5)
    c = build_mu(parts)
    K = c.mu.radicands
    s = lambda n: MultiQuadElement.sqrt_of(K, n)  # noqa: E731
    a1 = s(5) * 2 + s(-7)
    a2 = s(5) * 2 + s(-3)
    b3 = s(21) + 4
    mu_ok = c.alpha[0] == a1 and c.alpha[1] == a2 and c.beta[2] == b3 and c.mu == -(a1 * a2 * b3)
    g1 = sign_vector(c.mu, auto_fixing(parts, 0)).group
    g2 = sign_vector(c.mu, auto_fixing(parts, 1)).group
    f = min_poly_sqrt(c.mu)
    coeff_ok = list(f) == list(REFERENCE_OCTIC)
    dt = time.perf_counter() - t
    ok = mu_ok and g1 == "H8" and g2 == "D4" and coeff_ok and dt < 5
    iso = same_octic_field(f, REFERENCE_OCTIC)["isomorphic"] if not coeff_ok else True
    record(
        7,
        ok,
        f"mu = -a1 a2 b3: {mu_ok}; K1 {g1}, K2 {g2}; min_poly(sqrt mu) = {f}; "
        f"coefficients equal: {coeff_ok}; same field as the reference octic: {iso}; {dt:.2f}s",
    )
    assert ok


def test_criterion_08_dichotomy(full_survey):
    recs = full_survey[0]
    bad = []
    for r in recs:
        pos = sum(1 for v in r.factorization if v > 0)
        order = int(r.hall_senior.split(".")[0])
        if not ((order == 32 and pos == 1) or (order == 64 and pos == 3)):
            bad.append(r.d)
    ok = not bad and len(recs) > 0
    record(8, ok, f"{len(recs)} fields, {len(bad)} exceptions")
    assert ok


def test_criterion_09_oracles():
    t = time.perf_counter()
    bad_cl, n_cl = 0, 0
    for a in range(3, 50001):
        for d in (-a, a):
            if is_fundamental(d):
                G = FormClassGroup(d)
                n_cl += 1
                bad_cl += sylow2_by_images(G) != sylow2_by_orders(G)
    bad_r, n_r = 0, 0
    for a in range(3, 20001):
        if is_fundamental(-a):
            n_r += 1
            bad_r += redei_four_rank(-a) != four_rank(-a)
    bad_k, n_k = 0, 0
    for p in range(3, 2001, 2):
        if is_prime(p):
            for x in range(p):
                n_k += 1
                bad_k += kronecker(x, p) != legendre_euler(x, p)
    dt = time.perf_counter() - t
    ok = bad_cl == 0 and bad_r == 0 and bad_k == 0 and dt < 300
    record(
        9,
        ok,
        f"2-Sylow structure {n_cl - bad_cl}/{n_cl}; Redei 4-rank {n_r - bad_r}/{n_r}; "
        f"Kronecker vs Euler {n_k - bad_k}/{n_k}; {dt:.1f}s",
    )
    assert ok


def test_criterion_10_ambiguous_ranks(survey_by_label):
    f38 = survey_by_label["32.038"][:20]
    ok = len(f38) == 20
    n_a = n_b = 0
    for r in f38:
        pr = r.pattern.primes
        p, q, q2 = pr["p"], pr["q"], pr["q'"]
        via_minus_q2 = ambiguous_rank_of(-q2, p * q)
        via_i = ambiguous_rank_of(-1, p * q * q2)  # k(sqrt -1) over Q(i)
        if q2 % 8 == 3:
            n_a += 1
            ok &= via_minus_q2.t == 3 and via_minus_q2.index_EH == 1
        else:
            n_b += 1
            ok &= via_minus_q2.t == 4 and via_minus_q2.index_EH == 2
        ok &= via_minus_q2.rank == 2 and via_i.rank == 2
    f33 = survey_by_label["32.033"][:10]
    ok &= len(f33) == 10
    ranks33 = []
    for r in f33:
        p = [v for v in r.factorization if v > 0][0]
        a = ambiguous_rank_of(p, r.d)
        ranks33.append(a.rank)
        ok &= a.rank == 4
    record(10, ok, f"32.038: {len(f38)} fields (case a {n_a}, case b {n_b}) rank 2; 32.033: k(sqrt d4) ranks {ranks33}")
    assert ok


if __name__ == "__main__":
    import sys

    sys.path.insert(0, str(__import__("pathlib").Path(__file__).parent))
    from conftest import SURVEY_MIN
    from cl2tower.tables import survey_range

    t = time.perf_counter()
    recs = survey_range(SURVEY_MIN, -3)
    survey = (recs, time.perf_counter() - t)
    by_label = {}
    for r in recs:
        by_label.setdefault(r.hall_senior, []).append(r)
    tests = [
        (test_criterion_01_032038_examples, ()),
        (test_criterion_02_032037_table, ()),
        (test_criterion_03_032036_table, ()),
        (test_criterion_04_032033_table, ()),
        (test_criterion_05_table1, (survey,)),
        (test_criterion_06_group_suite, ()),
        (test_criterion_07_mu_example, ()),
        (test_criterion_08_dichotomy, (survey,)),
        (test_criterion_09_oracles, ()),
        (test_criterion_10_ambiguous_ranks, (by_label,)),
    ]
    buf = io.StringIO()
    for fn, args in tests:
        with redirect_stdout(buf):
            try:
                fn(*args)
            except AssertionError:
                pass
    for k in sorted(RESULTS):
        print(RESULTS[k])
