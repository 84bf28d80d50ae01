import itertools
import random

import pytest

from specialsets.constructions import elliptic_quadric
from specialsets.field import field_for_q
from specialsets.projective import (
    PointSet,
    ProjectiveError,
    all_points,
    baer_subline,
    in_subgeometry,
    line_points,
    normalize,
    rank,
)

I, TWO_I = 3, 6
P, Q, S = (0, 0, 0, 1), (1, 0, 0, 0), (1, 1, 1, 1)


def test_normalize_examples(F9):
    F5 = field_for_q(5)
    assert normalize(F5, (0, 0, 0, 3)) == P
    assert normalize(F9, (2, 2, 2, 2)) == S
    assert normalize(F9, (0, I, TWO_I, 1)) == (0, 1, 2, TWO_I)
    with pytest.raises(ProjectiveError):
        normalize(F9, (0, 0, 0, 0))


def test_normalize_scaling_invariant_exhaustive(F9):
    rng = random.Random(1)
    for _ in range(200):
        v = [rng.randrange(9) for _ in range(4)]
        if not any(v):
            continue
        n = normalize(F9, v)
        assert normalize(F9, n) == n
        for c in range(1, 9):
            assert normalize(F9, [F9.mul(c, x) for x in v]) == n


def test_rank_examples(F9):
    assert rank(F9, [P, Q, S, (1, I, TWO_I, 1)]) == 4
    assert rank(F9, [P, P]) == 1
    combo = normalize(F9, [F9.add(F9.mul(2, a), F9.mul(I, b)) for a, b in zip(S, P)])
    pts = [P, Q, S, combo]
    assert rank(F9, pts) == 3
    for perm in itertools.permutations(pts):
        assert rank(F9, list(perm)) == 3


def test_baer_subline_on_standard_line(F9):
    w = F9.omega
    A, B = (0, 1, w, 0), (0, 1, w, 1)
    sub = baer_subline(F9, P, A, B)
    assert sub == PointSet([P] + [(0, 1, w, lam) for lam in F9.subfield()])
    assert len(sub) == 4
    assert baer_subline(F9, P, B, A) == sub


def test_baer_subline_random_lines():
    F = field_for_q(5)
    rng = random.Random(2)
    for _ in range(30):
        X, Y = [normalize(F, [rng.randrange(1, 25) for _ in range(4)]) for _ in range(2)]
        if rank(F, [X, Y]) < 2:
            continue
        line = line_points(F, X, Y)
        A, B = rng.sample([Z for Z in line if Z != X], 2)
        sub = baer_subline(F, X, A, B)
        assert len(sub) == 6 and {X, A, B} <= sub.as_set()
        assert baer_subline(F, X, B, A) == sub


def test_baer_subline_errors(F9):
    with pytest.raises(ProjectiveError):
        baer_subline(F9, P, Q, S)
    with pytest.raises(ProjectiveError):
        baer_subline(F9, P, P, Q)


def test_subgeometry(F9):
    assert in_subgeometry(F9, elliptic_quadric(F9))
    assert not in_subgeometry(F9, [(0, 1, F9.omega, 0)])
    assert in_subgeometry(F9, [P])
    assert in_subgeometry(F9, [(I, I, 0, TWO_I)])
    assert not in_subgeometry(F9, [(1, I, I, I)])


def test_all_points_count_and_order(F9):
    pts = all_points(F9)
    assert len(pts) == (9 ** 4 - 1) // 8
    rows = [tuple(r) for r in pts.tolist()]
    assert rows == sorted(rows)
    assert all(normalize(F9, r) == r for r in rows[:50])


def test_pointset_behaviour(F9):
    A = PointSet([S, P, Q])
    assert list(A) == [P, Q, S]
    assert A == PointSet([Q, S, P]) and hash(A) == hash(PointSet([Q, S, P]))
    assert Q in A and A.index(S) == 2
    with pytest.raises(ProjectiveError):
        PointSet([P, P])
    assert PointSet.from_json(F9, A.to_json(F9)) == A
