"""The ten acceptance criteria, one test each.  Every test prints a single
PASS/FAIL line with the measured quantities, whatever the outcome."""

import time

import pytest

from specialsets.constructions import find_nonclassical_params, s_alpha_beta, veronesean
from specialsets.field import field_for_q
from specialsets.group import is_classical, stabilizer_PQS
from specialsets.hermitian import P_POINT, Q_POINT, space_for_q
from specialsets.invariants import segre
from specialsets.search import SearchConfig, search_special_sets, solutions_json
from specialsets.verify import (
    check_degplane,
    check_elliptic,
    check_main1,
    check_main2,
    check_special_set,
    exhaustive_triple_counts,
    perspective_formula,
    special_set_consistency,
)


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {n:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def test_01_perspective_triple_count(verdict):
    t = time.perf_counter()
    got = exhaustive_triple_counts(space_for_q(3))["perspective"]
    dt = time.perf_counter() - t
    want = perspective_formula(3)
    verdict(1, got == want == 544320 and dt <= 300,
            f"perspective triples on H(3,9) = {got}, formula {want}, {dt:.1f}s")


def test_02_stabilizer_size(verdict):
    sizes = {q: len(stabilizer_PQS(field_for_q(q))) for q in (3, 5, 7)}
    verdict(2, sizes == {3: 48, 5: 72, 7: 96}, f"|D| = {sizes}")


def test_03_x_solution_count(verdict):
    counts = {}
    for q in (3, 5, 7, 9):
        F = field_for_q(q)
        counts[q] = len(F.elements(lambda x: F.trace(x) == F.mul(2, F.norm(x))))
    verdict(3, all(counts[q] == q + 1 for q in counts), f"solution counts {counts}")


def test_04_special_set_characterizations_agree(verdict):
    t = time.perf_counter()
    r = special_set_consistency(3, seed=0, random_sets=200)
    dt = time.perf_counter() - t
    c = r.counts
    verdict(4, r.passed and c["agree"] == c["sized_sets"] and dt <= 600,
            f"{c['agree']}/{c['sized_sets']} sets agree ({c['special']} special), {dt:.1f}s")


def test_05_degplane_oracle(verdict):
    r = check_degplane(3)
    c = r.counts
    verdict(5, r.passed and r.coverage == "exhaustive" and c["disagreements"] == 0,
            f"{c['triples']} noncollinear triples, {c['disagreements']} disagreements")


def test_06_main1_q3(verdict):
    t = time.perf_counter()
    r = check_main1(3)
    dt = time.perf_counter() - t
    c = r.counts
    ok = r.passed and c["max_pool"] <= 10 and c["classical"] == c["equality_noncollinear"] and dt <= 1800
    verdict(6, ok, f"{c['q3_candidates']} admissible Q3, max |S| = {c['max_pool']}, "
                   f"{c['classical']}/{c['equality_noncollinear']} maximal completions classical")


def test_07_main2_chain(verdict):
    r3, r5 = check_main2(3), check_main2(5)
    c3, c5 = r3.counts, r5.counts
    ok = (r3.passed and r5.passed and c3["pairs"] == 81
          and c3["witnesses_found"] == c3["admissible"] - c3["trace_zero"]
          and c5["witnesses_found"] == c5["admissible"] - c5["trace_zero"]
          and c3["condition_iv"] == c3["trace_zero"] == c3["classical"])
    verdict(7, ok, f"q=3: {c3['admissible']} admissible, {c3['trace_zero']} trace-zero = classical = (iv), "
                   f"{c3['witnesses_found']} witnesses; q=5: {c5['admissible']} admissible, "
                   f"{c5['witnesses_found']} witnesses")


def test_08_nonclassical_remark(verdict):
    parts, ok = [], True
    for q in (3, 5, 7):
        hs = space_for_q(q)
        F = hs.F
        params = find_nonclassical_params(F)
        S = s_alpha_beta(F, params)
        persp = all(hs.h(Q_POINT, R) and segre(hs, P_POINT, Q_POINT, R).in_subfield
                    for R in S if R not in (P_POINT, Q_POINT))
        r = check_special_set(hs, S)
        witness = next((w for w in r.witnesses if w["kind"] == "degenerate_triple"), None)
        reproduced = witness is not None and segre(hs, *witness["points"]).trace_zero
        cls = is_classical(hs, S)
        ok &= persp and not r.passed and reproduced and not cls
        parts.append(f"q={q} alpha={params.alpha} beta={params.beta} PQR-perspective={persp} "
                     f"special={r.passed} classical={cls}")
    verdict(8, ok, "; ".join(parts))


def test_09_elliptic(verdict):
    r3, r5, r7 = check_elliptic(3), check_elliptic(5), check_elliptic(7)
    obstruction = next((w for w in r5.witnesses if w["kind"] == "collinear_pair"), None)
    ok = (r3.passed and r7.passed and r3.counts["classical"] == 1 and r7.counts["classical"] == 1
          and r5.passed and obstruction is not None and obstruction["points"][0] == (1, 1, 2, 0)
          and space_for_q(5).h((1, 1, 2, 0), Q_POINT) == 0)
    verdict(9, ok, f"q=3 classical={r3.counts.get('classical')}, q=7 classical={r7.counts.get('classical')}, "
                   f"q=5 obstruction {obstruction and obstruction['points']}")


def test_10_search(verdict):
    F = field_for_q(3)
    t = time.perf_counter()
    sets, r = search_special_sets(SearchConfig(q=3))
    dt = time.perf_counter() - t
    again, _ = search_special_sets(SearchConfig(q=3))
    identical = solutions_json(F, sets) == solutions_json(F, again)
    found_v = veronesean(F) in sets
    ok = r.passed and r.counts["nonclassical"] == 0 and found_v and identical and dt <= 3600
    verdict(10, ok, f"{len(sets)} special sets through P,Q, all classical={r.counts['nonclassical'] == 0}, "
                    f"Veronesean found={found_v}, rerun identical={identical}, {dt:.1f}s")
