"""The Hermitian surface H(3, q^2) for the form

    h(X, Y) = X0 Y3^q + X3 Y0^q - X1 Y1^q - X2 Y2^q

with Gram matrix antidiag(1, -1, -1, 1) in the corner/middle pattern.
"""

from __future__ import annotations

import functools
from typing import Mapping, Sequence

import numpy as np

from .field import GF, field_for_q
from .projective import Point, PointSet, all_points, line_points, normalize, rank

P_POINT: Point = (0, 0, 0, 1)
Q_POINT: Point = (1, 0, 0, 0)
S_POINT: Point = (1, 1, 1, 1)


class NotIsotropicError(ValueError):
    pass


class CorrespondenceError(ValueError):
    """A line point with zero or several collinear partners in the set."""

    def __init__(self, message: str, witness: Point, partners: Sequence[Point] = ()):
        super().__init__(message)
        self.witness = witness
        self.partners = tuple(partners)


class HermitianSpace:
    def __init__(self, F: GF):
        self.F = F
        self.q = F.q
        n1 = F.neg(1)
        self.gram = ((0, 0, 0, 1), (0, n1, 0, 0), (0, 0, n1, 0), (1, 0, 0, 0))

    def __repr__(self):
        return f"H(3,{self.q}^2)"

    # -- the form ------------------------------------------------------------

    def h(self, X: Sequence[int], Y: Sequence[int]) -> int:
        F = self.F
        fr = F._frob
        return F.sub(
            F.add(F.mul(X[0], fr[Y[3]]), F.mul(X[3], fr[Y[0]])),
            F.add(F.mul(X[1], fr[Y[1]]), F.mul(X[2], fr[Y[2]])),
        )

    def is_isotropic(self, X: Sequence[int]) -> bool:
        return self.h(X, X) == 0

    def collinear(self, X: Point, Y: Point) -> bool:
        for Z in (X, Y):
            if not self.is_isotropic(Z):
                raise NotIsotropicError(f"{Z} is not on {self!r}")
        return self.h(X, Y) == 0

    def hmatrix(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """h(X_i, Y_j) for label arrays of shape (n, 4) and (m, 4)."""
        F = self.F
        X = np.asarray(X)
        Y = np.asarray(Y)
        Yc = F.FROB[Y]
        a = F.vmul(X[:, None, 0], Yc[None, :, 3])
        b = F.vmul(X[:, None, 3], Yc[None, :, 0])
        c = F.vmul(X[:, None, 1], Yc[None, :, 1])
        d = F.vmul(X[:, None, 2], Yc[None, :, 2])
        return F.vsub(F.vadd(a, b), F.vadd(c, d))

    def hdiag(self, X: np.ndarray) -> np.ndarray:
        F = self.F
        X = np.asarray(X)
        t = F.TRACE[F.vmul(X[:, 0], F.FROB[X[:, 3]])]
        return F.vsub(t, F.vadd(F.NORM[X[:, 1]], F.NORM[X[:, 2]]))

    # -- enumeration ----------------------------------------------------------

    @functools.cached_property
    def surface_array(self) -> np.ndarray:
        pts = all_points(self.F)
        return pts[self.hdiag(pts) == 0]

    @functools.cached_property
    def surface(self) -> PointSet:
        return PointSet(map(tuple, self.surface_array.tolist()), ordered=True)

    def enumerate_surface(self) -> PointSet:
        return self.surface

    @functools.cached_property
    def surface_gram(self) -> np.ndarray:
        """Cached h-values between all pairs of surface points."""
        X = self.surface_array
        return self.hmatrix(X, X)

    def perp_points(self, X: Point) -> list[Point]:
        """Surface points collinear with X (X included)."""
        row = self.hmatrix(np.array([X]), self.surface_array)[0]
        return [self.surface[i] for i in np.flatnonzero(row == 0)]

    def ti_lines_through(self, X: Point) -> list[PointSet]:
        X = normalize(self.F, X)
        if not self.is_isotropic(X):
            raise NotIsotropicError(f"{X} is not on {self!r}")
        seen = set()
        lines = []
        for Y in self.perp_points(X):
            if Y == X or Y in seen:
                continue
            line = PointSet(line_points(self.F, X, Y))
            seen.update(line)
            lines.append(line)
        return lines

    # -- the standard totally isotropic line and F_ell --------------------------

    @property
    def omega(self) -> int:
        return self.F.omega

    def standard_line(self) -> PointSet:
        """The line through P and (0, 1, omega, 0), omega^(q+1) = -1."""
        return PointSet(line_points(self.F, P_POINT, (0, 1, self.omega, 0)))

    def line_point(self, t: int) -> Point:
        """(0, 1, omega, 2 t^q): the point of the standard line with parameter t."""
        F = self.F
        return (0, 1, self.omega, F.mul(2, F.frob(t)))

    def line_parameter(self, Y: Point) -> int:
        F = self.F
        Y = normalize(F, Y)
        # Y = (0, 1, omega, u) with u = 2 t^q
        return F.frob(F.div(Y[3], 2))

    def f_ell_map(self, S, P: Point = P_POINT, ell=None) -> dict:
        """The correspondence from the line ell to S sending each line point
        to its unique collinear partner in S minus P, and P to itself."""
        F = self.F
        if ell is None:
            ell = self.standard_line()
        pts = [normalize(F, X) for X in S]
        P = normalize(F, P)
        if P not in pts:
            raise ValueError("P must belong to the set")
        ell = [normalize(F, Y) for Y in ell]
        if P not in ell:
            raise ValueError("P must lie on the line")
        if rank(F, ell) != 2 or any(self.h(Y, Z) for Y in ell[:3] for Z in ell[:3]):
            raise ValueError("the line is not totally isotropic")
        others = np.array([X for X in pts if X != P])
        mapping = {P: P}
        for Y in ell:
            if Y == P:
                continue
            row = self.hmatrix(np.array([Y]), others)[0]
            hits = [tuple(others[i].tolist()) for i in np.flatnonzero(row == 0)]
            if len(hits) != 1:
                raise CorrespondenceError(
                    f"line point {Y} is collinear with {len(hits)} points of the set", Y, hits
                )
            mapping[Y] = hits[0]
        seen: dict[Point, Point] = {}
        for Y, X in mapping.items():
            if X in seen:
                raise CorrespondenceError("correspondence is not injective", X, (seen[X], Y))
            seen[X] = Y
        return mapping


@functools.lru_cache(maxsize=None)
def space_for_q(q: int) -> HermitianSpace:
    return HermitianSpace(field_for_q(q))


def surface_size(q: int) -> int:
    return (q * q + 1) * (q ** 3 + 1)
