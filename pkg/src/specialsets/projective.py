"""Points, ranks, Baer sublines and subgeometries in PG(3, q^2).

A point is a plain 4-tuple of field labels in normalised form (first nonzero
coordinate equal to 1), so point equality is tuple equality and the canonical
order is tuple order.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np

from .field import GF

Point = tuple  # (x0, x1, x2, x3) of labels


class ProjectiveError(ValueError):
    pass


def normalize(F: GF, raw: Sequence[int]) -> Point:
    for c in raw:
        if c:
            s = F.inv(c)
            return tuple(F.mul(x, s) for x in raw)
    raise ProjectiveError("the zero vector is not a projective point")


def scale(F: GF, v: Sequence[int], s: int) -> tuple:
    return tuple(F.mul(x, s) for x in v)


def vadd(F: GF, u: Sequence[int], v: Sequence[int]) -> tuple:
    return tuple(F.add(a, b) for a, b in zip(u, v))


def row_reduce(F: GF, rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Reduced row echelon form over the field (exact)."""
    m = [list(r) for r in rows]
    if not m:
        return m
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = F.inv(m[r][c])
        m[r] = [F.mul(x, s) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = F.neg(m[i][c])
                m[i] = [F.add(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return m[:r]


def rank(F: GF, points: Sequence[Sequence[int]]) -> int:
    return len(row_reduce(F, points))


def span_coefficients(F: GF, basis: Sequence[Sequence[int]], v: Sequence[int]):
    """Coefficients expressing v in terms of the rows of ``basis``, or None."""
    k = len(basis)
    # columns of the augmented system  basis^T | v
    rows = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(len(v))]
    red = row_reduce(F, rows)
    coeffs = [0] * k
    for row in red:
        lead = next(i for i, x in enumerate(row) if x)
        if lead == k:
            return None
        coeffs[lead] = row[k]
    return coeffs


def det(F: GF, m: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in m]
    n = len(m)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = F.neg(d)
        d = F.mul(d, m[c][c])
        s = F.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = F.neg(F.mul(m[i][c], s))
                m[i] = [F.add(x, F.mul(f, y)) for x, y in zip(m[i], m[c])]
    return d


def line_points(F: GF, A: Point, B: Point) -> list[Point]:
    """All q^2 + 1 points on the line AB, sorted."""
    pts = {normalize(F, A)}
    for mu in range(F.order):
        pts.add(normalize(F, vadd(F, B, scale(F, A, mu))))
    return sorted(pts)


def baer_subline(F: GF, P: Point, A: Point, B: Point) -> "PointSet":
    """The Baer subline through P, A, B: P together with A + lambda*alpha*P.

    alpha is fixed by writing B = A + alpha*P for suitable representatives;
    lambda runs over the subfield GF(q).
    """
    P, A, B = (normalize(F, X) for X in (P, A, B))
    if len({P, A, B}) < 3:
        raise ProjectiveError("Baer subline needs three distinct points")
    if rank(F, [P, A, B]) != 2:
        raise ProjectiveError("points are not collinear")
    mu, nu = span_coefficients(F, [A, P], B)
    alpha = F.div(nu, mu)
    pts = [P] + [normalize(F, vadd(F, A, scale(F, P, F.mul(lam, alpha)))) for lam in F.subfield()]
    return PointSet(pts)


def in_subgeometry(F: GF, points: Iterable[Point]) -> bool:
    """True iff every point has a representative over GF(q).

    A GF(q)-rational point stays rational after normalising, so it suffices to
    look at the normalised coordinates.
    """
    return all(F.in_subfield(c) for X in points for c in normalize(F, X))


class PointSet:
    """An ordered, duplicate-free collection of normalised points.

    Sorted canonically unless ``ordered=True``.  ``mask(ambient)`` gives the
    membership bitset relative to an enumerated ambient point list.
    """

    def __init__(self, points: Iterable[Point], ordered: bool = False):
        pts = [tuple(int(c) for c in X) for X in points]
        if len(set(pts)) != len(pts):
            raise ProjectiveError("duplicate points in point set")
        self.points = tuple(pts if ordered else sorted(pts))
        self._members = frozenset(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __contains__(self, X):
        return tuple(X) in self._members

    def __eq__(self, other):
        if isinstance(other, PointSet):
            return self._members == other._members
        return NotImplemented

    def __hash__(self):
        return hash(self._members)

    def __repr__(self):
        return f"PointSet({len(self)} points)"

    def as_set(self) -> frozenset:
        return self._members

    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(-1, 4)

    def mask(self, ambient: "PointSet") -> int:
        bits = 0
        for X in self.points:
            bits |= 1 << ambient.index(X)
        return bits

    def index(self, X) -> int:
        try:
            lookup = self._lookup
        except AttributeError:
            lookup = self._lookup = {X: i for i, X in enumerate(self.points)}
        return lookup[tuple(X)]

    def to_json(self, F: GF) -> list:
        return [[F.coeffs(c) for c in X] for X in self.points]

    @classmethod
    def from_json(cls, F: GF, data, ordered: bool = False) -> "PointSet":
        if isinstance(data, str):
            data = json.loads(data)
        return cls((normalize(F, [F.from_coeffs(c) for c in X]) for X in data), ordered=ordered)


def all_points(F: GF) -> np.ndarray:
    """All points of PG(3, q^2) in canonical order, as an (N, 4) label array."""
    Q = F.order
    blocks = []
    for lead in (3, 2, 1, 0):
        free = 3 - lead
        if free:
            grid = np.indices((Q,) * free).reshape(free, -1).T
        else:
            grid = np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((len(grid), 4), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = grid
        blocks.append(block)
    return np.concatenate(blocks)
