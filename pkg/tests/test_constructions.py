import itertools

import numpy as np
import pytest

from specialsets.constructions import (
    SAlphaBetaParams,
    admissible_x,
    apply_field_automorphism,
    c_value,
    coplanar_family,
    elliptic_quadric,
    elliptic_quadric_with_p,
    f_map,
    find_nonclassical_params,
    quadratic_form_anisotropic,
    s_alpha_beta,
    set_from_function,
    standard_form,
    veronesean,
)
from specialsets.field import FieldError, field_for_q
from specialsets.group import is_classical
from specialsets.hermitian import P_POINT, Q_POINT, S_POINT, space_for_q
from specialsets.invariants import in_perspective, triple_table

I = 3


def _pairwise_noncollinear(hs, S):
    G = hs.hmatrix(S.array(), S.array())
    np.fill_diagonal(G, 1)
    return (G != 0).all()


def test_veronesean(H3):
    V = veronesean(H3.F)
    assert len(V) == 10 and P_POINT in V and Q_POINT in V
    assert all(H3.is_isotropic(X) for X in V)


@pytest.mark.parametrize("q", [3, 5])
def test_standard_forms_noncollinear(q):
    hs = space_for_q(q)
    F = hs.F
    assert _pairwise_noncollinear(hs, veronesean(F))
    for x in admissible_x(F):
        S = standard_form(F, x)
        assert len(S) == q * q + 1 and S_POINT in S
        assert _pairwise_noncollinear(hs, S)


def test_standard_form_x0_swaps_middle(F9):
    swapped = {(X[0], X[2], X[1], X[3]) for X in veronesean(F9)}
    assert standard_form(F9, 0).as_set() == swapped


def test_standard_form_rejects_bad_x(F9):
    with pytest.raises(FieldError):
        standard_form(F9, I)


def test_standard_form_2_plus_i_classical(H3):
    F = H3.F
    assert is_classical(H3, standard_form(F, F.add(2, I)))


def test_elliptic_quadric(H3):
    F = H3.F
    E = elliptic_quadric(F)
    assert len(E) == 9 and Q_POINT in E
    assert all(H3.is_isotropic(X) for X in E)
    F5 = field_for_q(5)
    E5 = elliptic_quadric(F5)
    assert (1, 1, 2, 0) in E5
    assert space_for_q(5).h((1, 1, 2, 0), Q_POINT) == 0
    assert len(elliptic_quadric_with_p(F)) == 10


@pytest.mark.parametrize("q", [3, 5])
def test_s_alpha_beta_isotropic_and_sized(q):
    hs = space_for_q(q)
    F = hs.F
    for a in range(F.order):
        for b in range(0, F.order, 3 if q > 3 else 1):
            S = s_alpha_beta(F, SAlphaBetaParams.make(F, a, b))
            assert len(S) == q * q + 1 and Q_POINT in S
            assert all(hs.is_isotropic(X) for X in S)


def test_trace_zero_alpha_gives_classical(H3):
    F = H3.F
    for a in F.elements(lambda x: F.trace(x) == 0):
        for b in range(9):
            if all(c_value(F, a, b, t) for t in range(1, 9)):
                assert is_classical(H3, s_alpha_beta(F, SAlphaBetaParams.make(F, a, b)))


def test_f_map_linear(F9):
    params = SAlphaBetaParams.make(F9, 4, 7)
    assert f_map(F9, params, 0) == 0
    for t1, t2 in itertools.product(range(9), repeat=2):
        assert f_map(F9, params, F9.add(t1, t2)) == F9.add(f_map(F9, params, t1), f_map(F9, params, t2))
    for lam in F9.subfield():
        for t in range(9):
            assert f_map(F9, params, F9.mul(lam, t)) == F9.mul(lam, f_map(F9, params, t))


def test_params_validation(F9):
    with pytest.raises(FieldError):
        SAlphaBetaParams.make(F9, 1, 0, omega=1)


def test_anisotropy_criterion_matches_direct_scan():
    for q in (3, 5):
        F = field_for_q(q)
        w = F.trace_zero_unit
        sub = F.subfield()
        for c0, c1, d0, d1 in itertools.product(sub, repeat=4):
            a, b = F.add(c0, F.mul(c1, w)), F.add(d0, F.mul(d1, w))
            direct = all(c_value(F, a, b, t) for t in range(1, F.order))
            assert quadratic_form_anisotropic(F, c0, d0, d1) == direct


@pytest.mark.parametrize("q", [3, 5, 7])
def test_find_nonclassical_params(q):
    hs = space_for_q(q)
    F = hs.F
    params = find_nonclassical_params(F)
    S = s_alpha_beta(F, params)
    assert F.trace(params.alpha) != 0
    assert all(in_perspective(hs, P_POINT, Q_POINT, R) for R in S if R not in (P_POINT, Q_POINT))
    _, noncol, _, tz = triple_table(hs, S.array())
    assert (noncol & tz).any()
    assert not is_classical(hs, S)


def test_set_from_function_matches_family(F9):
    params = SAlphaBetaParams.make(F9, 4, 7)
    assert set_from_function(F9, lambda t: f_map(F9, params, t)) == s_alpha_beta(F9, params)


def test_coplanar_family_q7():
    hs = space_for_q(7)
    F = hs.F
    fam = coplanar_family(F)
    assert len(fam) == 343
    for pt, a, lam in fam[::17]:
        assert hs.is_isotropic(pt)
        assert F.add(pt[1], pt[2]) == lam


def test_field_automorphism_fixes_veronesean(F9):
    V = veronesean(F9)
    assert apply_field_automorphism(F9, V, 1) == V
