import json
import random

import pytest

from specialsets.constructions import (
    SAlphaBetaParams,
    elliptic_quadric,
    find_nonclassical_params,
    s_alpha_beta,
    veronesean,
)
from specialsets.field import field_for_q
from specialsets.hermitian import P_POINT, Q_POINT, space_for_q
from specialsets.invariants import segre
from specialsets.projective import PointSet
from specialsets.verify import (
    STATEMENTS,
    Report,
    check_ct_lemma,
    check_flinear_equivalence,
    check_special_set,
    degenerate_triple_witness,
    run_statement,
)


def test_report_requires_witness_on_fail():
    with pytest.raises(ValueError):
        Report("x", 3, "fail")
    with pytest.raises(ValueError):
        Report("x", 3, "maybe")
    r = Report("x", 3, "pass", counts={"a": 1})
    assert json.loads(r.to_json())["counts"] == {"a": 1}


def test_special_set_on_veronesean(H3):
    r = check_special_set(H3, veronesean(H3.F))
    assert r.passed
    assert r.counts["outside_points"] == 270 and r.counts["triples"] == 120
    assert r.counts["characterizations_agree"] == 1


def test_special_set_nonclassical_fails_with_witness(H3):
    S = s_alpha_beta(H3.F, find_nonclassical_params(H3.F))
    r = check_special_set(H3, S)
    assert not r.passed
    w = r.witnesses[0]
    assert w["kind"] == "degenerate_triple"
    assert segre(H3, *w["points"]).trace_zero  # reproducible through the base predicate


def test_special_set_wrong_size(H3):
    r = check_special_set(H3, elliptic_quadric(H3.F))
    assert not r.passed and r.witnesses[0]["kind"] == "size"


def test_special_set_off_surface(H3):
    r = check_special_set(H3, [P_POINT, (1, 0, 0, 1)])
    assert r.witnesses[0]["kind"] == "not_on_surface"


def test_ct_lemma_examples(H3):
    F = H3.F
    for a, b in [(0, 0), (1, 0), (4, 7), (3, 2)]:
        r = check_ct_lemma(H3, a, b)
        assert r.passed
        assert r.counts["c_1"] == F.trace(F.add(a, b))


def test_flinear_zero_function(H3):
    r = check_flinear_equivalence(H3, [0] * 9)
    assert r.passed and r.counts["linear"] == 1 and r.counts["all_coplanar"] == 1


def test_flinear_requires_f0_zero(H3):
    with pytest.raises(ValueError):
        check_flinear_equivalence(H3, [1] * 9)


def test_flinear_p_power_q9():
    hs = space_for_q(9)
    F = hs.F
    r = check_flinear_equivalence(hs, [F.frob_p(t, 1) for t in range(F.order)], "forward")
    assert r.passed
    assert r.counts["linear"] == 0 and r.counts["all_coplanar"] == 0
    assert any(w["kind"] == "non_coplanar_subline" for w in r.witnesses)


def test_degenerate_triple_witness_reproducible(H3):
    F = H3.F
    params = find_nonclassical_params(F)
    t = degenerate_triple_witness(H3, params)
    assert F.in_subfield(t[1]) and F.in_subfield(t[2])
    from specialsets.constructions import r_point

    assert segre(H3, *(r_point(F, params, x) for x in t)).trace_zero


QUICK = ["x_solutions", "lemma:stabPQS", "lemma:classical", "lemma:elliptic", "remark:nonclassical",
         "lemma:inperspective", "lemma:transitive", "cor:justonepoint", "lemma:PR1R2",
         "lemma:trace_R1R2R3", "lemma:ct", "lemma:bijection", "lemma:flinear", "main1", "main2",
         "counts", "special_set_consistency", "lemma:degplane", "search:special_set"]


@pytest.mark.parametrize("sid", QUICK)
def test_statement_passes_q3(sid):
    r = run_statement(sid, 3)
    assert r.passed, r.to_json()


@pytest.mark.parametrize("sid", ["main1", "main2", "lemma:elliptic", "remark:nonclassical", "counts",
                                 "lemma:PR1R2", "lemma:trace_R1R2R3", "lemma:inperspective"])
def test_statement_passes_q5(sid):
    assert run_statement(sid, 5).passed


def test_coplanar_remark_q7():
    r = run_statement("remark:coplanar", 7)
    assert r.passed and r.counts["pool"] >= 49


def test_registry_is_complete():
    assert set(QUICK) | {"remark:coplanar"} == set(STATEMENTS)
    with pytest.raises(KeyError):
        run_statement("nope", 3)
