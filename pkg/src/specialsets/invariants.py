"""Segre invariant of noncollinear triples and the predicates built on it.

The raw product h(A,B) h(B,C) h(C,A) depends on the chosen representatives
(up to a GF(q)* factor) and on the order of the points (up to Frobenius).
Only the two flags ``in_subfield`` and ``trace_zero`` are well defined, and
all decisions go through them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .field import GF
from .hermitian import HermitianSpace
from .projective import Point, det, normalize, rank


class CollinearError(ValueError):
    pass


@dataclass(frozen=True)
class SegreValue:
    value: int
    in_subfield: bool
    trace_zero: bool


def segre(hs: HermitianSpace, A: Point, B: Point, C: Point) -> SegreValue:
    F = hs.F
    A, B, C = (normalize(F, X) for X in (A, B, C))
    ab, bc, ca = hs.h(A, B), hs.h(B, C), hs.h(C, A)
    if not (ab and bc and ca):
        raise CollinearError(f"triple {A}, {B}, {C} has a collinear pair")
    for X in (A, B, C):
        if not hs.is_isotropic(X):
            raise CollinearError(f"{X} is not on the surface")
    v = F.mul(F.mul(ab, bc), ca)
    return SegreValue(v, F.in_subfield(v), F.trace(v) == 0)


def in_perspective(hs: HermitianSpace, A: Point, B: Point, C: Point) -> bool:
    return segre(hs, A, B, C).in_subfield


def degenerate_plane(hs: HermitianSpace, A: Point, B: Point, C: Point) -> bool:
    return segre(hs, A, B, C).trace_zero


# ---------------------------------------------------------------------------
# geometric oracle: a plane is degenerate iff its pole lies on it
# ---------------------------------------------------------------------------

def _form_rows(F: GF, X):
    # rows of X*U: (X3, -X1, -X2, X0)
    X = np.asarray(X)
    return np.stack([X[..., 3], F.NEG[X[..., 1]], F.NEG[X[..., 2]], X[..., 0]], axis=-1)


def plane_pole(hs: HermitianSpace, A: Point, B: Point, C: Point) -> Point:
    """The point z with h(A,z) = h(B,z) = h(C,z) = 0, for independent A, B, C."""
    F = hs.F
    if rank(F, [A, B, C]) != 3:
        raise ValueError("points do not span a plane")
    M = _form_rows(F, np.array([A, B, C])).tolist()
    w = []
    for j in range(4):
        minor = det(F, [[r[c] for c in range(4) if c != j] for r in M])
        w.append(minor if j % 2 == 0 else F.neg(minor))
    return normalize(F, [F.frob(x) for x in w])


def plane_is_degenerate(hs: HermitianSpace, A: Point, B: Point, C: Point) -> bool:
    """Rank-based oracle, independent of the Segre invariant.

    Three points on one secant line span no plane at all; they count as
    degenerate (they fail to span a nondegenerate plane).
    """
    if rank(hs.F, [A, B, C]) < 3:
        return True
    z = plane_pole(hs, A, B, C)
    return rank(hs.F, [A, B, C, z]) == 3


_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def pole_degenerate_grid(hs: HermitianSpace, A: Point, Bs: np.ndarray, Cs: np.ndarray):
    """Vectorised pole test for the planes <A, B_j, C_k>.

    Returns ``(spans, degenerate)`` boolean arrays of shape (len(Bs), len(Cs));
    triples that span no plane are reported degenerate.
    The pole z = frob(w) where w spans the kernel of the rows X*U; since
    h(z, z) = h(w, w), degeneracy is isotropy of w.
    """
    F = hs.F
    a = _form_rows(F, np.asarray(A))
    b = _form_rows(F, Bs)[:, None, :]
    c = _form_rows(F, Cs)[None, :, :]
    minors = {}
    for k, l in _PAIRS:
        minors[k, l] = F.vsub(F.vmul(b[..., k], c[..., l]), F.vmul(b[..., l], c[..., k]))
    w = []
    for j in range(4):
        r, s, t = [x for x in range(4) if x != j]
        m = F.vadd(F.vsub(F.vmul(a[r], minors[s, t]), F.vmul(a[s], minors[r, t])), F.vmul(a[t], minors[r, s]))
        w.append(m if j % 2 == 0 else F.NEG[m])
    w = np.stack(w, axis=-1)
    spans = (w != 0).any(axis=-1)
    hw = F.vsub(F.TRACE[F.vmul(w[..., 0], F.FROB[w[..., 3]])], F.vadd(F.NORM[w[..., 1]], F.NORM[w[..., 2]]))
    return spans, ~spans | (hw == 0)


# ---------------------------------------------------------------------------
# bulk flags for every triple of a point set
# ---------------------------------------------------------------------------

def triple_table(hs: HermitianSpace, pts: np.ndarray):
    """Flags for all triples i < j < k of ``pts``.

    Returns ``(idx, noncollinear, in_subfield, trace_zero)``; ``idx`` has
    shape (T, 3).  Flags are only meaningful where ``noncollinear``.
    """
    F = hs.F
    pts = np.asarray(pts)
    n = len(pts)
    if n < 3:
        empty = np.zeros(0, dtype=bool)
        return np.zeros((0, 3), dtype=np.int64), empty, empty, empty
    G = hs.hmatrix(pts, pts)
    idx = np.array(list(combinations(range(n), 3)), dtype=np.int64)
    i, j, k = idx.T
    ab, bc, ca = G[i, j], G[j, k], G[k, i]
    v = F.vmul(F.vmul(ab, bc), ca)
    noncol = (ab != 0) & (bc != 0) & (ca != 0)
    return idx, noncol, F.IN_SUB[v], F.TRACE[v] == 0


# ---------------------------------------------------------------------------
# closed forms on the S_{alpha,beta} family
# ---------------------------------------------------------------------------

def segre_PR1R2(F: GF, alpha: int, beta: int, t1: int, t2: int) -> int:
    """[P, R1, R2] = Tr(alpha)(N(t1) - 2 t1 t2^q + N(t2)) + Tr((t1 - t2)^2 beta^q)."""
    if t1 == t2:
        raise ValueError("t1 and t2 must differ")
    ta = F.trace(alpha)
    mid = F.sub(F.add(F.norm(t1), F.norm(t2)), F.mul(2, F.mul(t1, F.frob(t2))))
    d = F.sub(t1, t2)
    return F.add(F.mul(ta, mid), F.trace(F.mul(F.mul(d, d), F.frob(beta))))


def trace_R1R2R3(F: GF, alpha: int, beta: int, t1: int, t2: int, t3: int) -> int:
    """Closed form for Tr[R1, R2, R3] when t2, t3 lie in GF(q)."""
    if not (F.in_subfield(t2) and F.in_subfield(t3)):
        raise ValueError("t2 and t3 must lie in the subfield")
    if len({t1, t2, t3}) < 3:
        raise ValueError("t1, t2, t3 must be distinct")
    ta = F.trace(alpha)
    bq = F.frob(beta)
    n1 = F.norm(t1)

    def factor(first, t):
        # (N(t1) - 2*first + t^2) Tr(alpha) + Tr(beta^q (t1 - t)^2)
        d = F.sub(t1, t)
        core = F.add(F.sub(n1, F.mul(2, first)), F.mul(t, t))
        return F.add(F.mul(core, ta), F.trace(F.mul(bq, F.mul(d, d))))

    x2 = factor(F.mul(t2, F.frob(t1)), t2)
    x3 = factor(F.mul(t1, t3), t3)
    d23 = F.sub(t2, t3)
    lead = F.mul(F.mul(d23, d23), F.trace(F.add(alpha, beta)))
    return F.mul(lead, F.trace(F.mul(x2, x3)))
