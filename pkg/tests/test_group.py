import itertools
import random

import pytest

from specialsets.constructions import (
    elliptic_quadric_with_p,
    find_nonclassical_params,
    s_alpha_beta,
    veronesean,
)
from specialsets.field import field_for_q
from specialsets.group import (
    Collineation,
    CollineationError,
    NotPerspectiveError,
    classical_witness,
    frobenius,
    identity,
    involution_m1,
    involution_m2,
    is_classical,
    map_pair_to_standard,
    map_triple_to_standard,
    orbit_of_veronesean_under,
    pointwise_stabilizer_PQS,
    stabilizer_order,
    stabilizer_PQS,
    standard_forms,
)
from specialsets.hermitian import P_POINT, Q_POINT, S_POINT, space_for_q
from specialsets.invariants import segre

PQS = (P_POINT, Q_POINT, S_POINT)


@pytest.mark.parametrize("q,size", [(3, 48), (5, 72), (7, 96)])
def test_stabilizer_size(q, size):
    F = field_for_q(q)
    D = stabilizer_PQS(F)
    assert len(D) == size == stabilizer_order(q)
    assert len(pointwise_stabilizer_PQS(F)) == (q + 1) * F.n
    for g in D:
        assert {g(X) for X in PQS} == set(PQS)


def test_stabilizer_preserves_surface(H3):
    rng = random.Random(7)
    for g in stabilizer_PQS(H3.F):
        g.form_scalar()
        for X in rng.sample(H3.surface.points, 50):
            assert H3.is_isotropic(g(X))


def test_involutions(F9):
    m1, m2 = involution_m1(F9), involution_m2(F9)
    assert (m1(P_POINT), m1(Q_POINT), m1(S_POINT)) == (Q_POINT, P_POINT, S_POINT)
    assert (m2(P_POINT), m2(S_POINT), m2(Q_POINT)) == (S_POINT, Q_POINT, P_POINT)


def test_composition_and_inverse(H3):
    F = H3.F
    D = stabilizer_PQS(F)
    rng = random.Random(1)
    for _ in range(40):
        g, h = rng.sample(D, 2)
        X = rng.choice(H3.surface.points)
        assert g.then(h)(X) == h(g(X))
        assert g.inverse()(g(X)) == X
    assert frobenius(F, 2) == identity(F)


def test_rejects_non_unitary(F9):
    with pytest.raises(CollineationError):
        Collineation(F9, [[1, 0, 0, 0], [0, 4, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])  # N(1+i) = 2


def test_json_roundtrip(F9):
    g = stabilizer_PQS(F9)[17]
    assert Collineation.from_json(F9, g.to_json()) == g
    assert len(g.to_json()["matrix"]) == 16


def test_invariants_preserved_on_veronesean(H3):
    V = veronesean(H3.F)
    rng = random.Random(3)
    gs = rng.sample(stabilizer_PQS(H3.F), 5)
    for g in gs:
        for A, B, C in itertools.combinations(V, 3):
            s, t = segre(H3, A, B, C), segre(H3, g(A), g(B), g(C))
            assert (s.in_subfield, s.trace_zero) == (t.in_subfield, t.trace_zero)


def test_pair_map_examples(H3):
    g = map_pair_to_standard(H3, P_POINT, Q_POINT)
    assert (g(P_POINT), g(Q_POINT)) == (P_POINT, Q_POINT)
    g = map_pair_to_standard(H3, Q_POINT, P_POINT)
    assert (g(Q_POINT), g(P_POINT)) == (P_POINT, Q_POINT)
    with pytest.raises(CollineationError):
        map_pair_to_standard(H3, P_POINT, (0, 1, H3.omega, 0))


def test_pair_map_random_q5(H5):
    rng = random.Random(5)
    done = 0
    while done < 100:
        A, B = rng.sample(H5.surface.points, 2)
        if H5.h(A, B) == 0:
            continue
        g = map_pair_to_standard(H5, A, B)
        assert (g(A), g(B)) == (P_POINT, Q_POINT) and g.frob_power == 0
        done += 1


def test_triple_map(H3):
    g = map_triple_to_standard(H3, *PQS)
    assert tuple(g(X) for X in PQS) == PQS
    V = veronesean(H3.F)
    for A, B, C in itertools.combinations(V, 3):
        g = map_triple_to_standard(H3, A, B, C)
        assert (g(A), g(B), g(C)) == PQS


def test_triple_map_rejects_nonperspective(H3):
    S = s_alpha_beta(H3.F, find_nonclassical_params(H3.F))
    tri = next(t for t in itertools.combinations(S, 3)
               if all(H3.h(a, b) for a, b in itertools.combinations(t, 2))
               and not segre(H3, *t).in_subfield)
    with pytest.raises(NotPerspectiveError):
        map_triple_to_standard(H3, *tri)


def test_classicality(H3):
    F = H3.F
    assert is_classical(H3, veronesean(F))
    assert is_classical(H3, elliptic_quadric_with_p(F))
    assert not is_classical(H3, s_alpha_beta(F, find_nonclassical_params(F)))
    w = classical_witness(H3, elliptic_quadric_with_p(F))
    assert w["collineation"].apply_all(elliptic_quadric_with_p(F)).as_set() in standard_forms(F)
    with pytest.raises(ValueError):
        is_classical(H3, list(veronesean(F))[:5])


def test_classical_images_recognised(H3):
    F = H3.F
    V = veronesean(F)
    rng = random.Random(11)
    for _ in range(10):
        A, B = rng.sample(H3.surface.points, 2)
        if H3.h(A, B) == 0:
            continue
        g = map_pair_to_standard(H3, A, B).inverse().then(frobenius(F, 1))
        assert is_classical(H3, g.apply_all(V))


def test_veronesean_orbit_under_D_is_standard_forms(F9):
    assert orbit_of_veronesean_under(F9, stabilizer_PQS(F9)) == set(standard_forms(F9))
