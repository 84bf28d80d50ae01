"""Semilinear collineations of H(3, q^2), the setwise stabiliser of {P, Q, S},
constructive transitivity on noncollinear pairs and perspective triples, and
the classicality test.

A collineation ``(M, k)`` acts on row vectors by X -> (X^(p^k)) M, i.e. the
field automorphism is applied coordinatewise first, then the matrix.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

import numpy as np

from .constructions import admissible_x, standard_form, veronesean
from .field import GF
from .hermitian import P_POINT, Q_POINT, S_POINT, HermitianSpace
from .invariants import triple_table
from .projective import Point, PointSet, normalize, row_reduce, span_coefficients

Matrix = tuple  # 4 rows of 4 labels


class CollineationError(ValueError):
    pass


def matmul(F: GF, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(F.sum(F.mul(a, b) for a, b in zip(row, col)) for col in cols) for row in A)


def vecmat(F: GF, v: Sequence[int], M: Sequence[Sequence[int]]) -> tuple:
    return tuple(F.sum(F.mul(v[i], M[i][j]) for i in range(len(v))) for j in range(len(M[0])))


def matinv(F: GF, M: Sequence[Sequence[int]]) -> Matrix:
    n = len(M)
    aug = [list(M[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    red = row_reduce(F, aug)
    if len(red) < n or any(red[i][i] != 1 for i in range(n)):
        raise CollineationError("matrix is singular")
    return tuple(tuple(r[n:]) for r in red)


def conj_transpose(F: GF, M) -> Matrix:
    return tuple(tuple(F.frob(M[j][i]) for j in range(len(M))) for i in range(len(M[0])))


def _normalized_matrix(F: GF, M) -> Matrix:
    flat = [c for row in M for c in row]
    s = F.inv(next(c for c in flat if c))
    return tuple(tuple(F.mul(c, s) for c in row) for row in M)


class Collineation:
    def __init__(self, F: GF, matrix, frob_power: int = 0, check: bool = True):
        self.F = F
        self.matrix: Matrix = tuple(tuple(int(c) for c in row) for row in matrix)
        self.frob_power = frob_power % F.n
        if check:
            self.form_scalar()

    def form_scalar(self) -> int:
        """lambda with M U M^(q T) = lambda U; raises if there is none."""
        F = self.F
        U = gram(F)
        G = matmul(F, matmul(F, self.matrix, U), conj_transpose(F, self.matrix))
        lam = G[0][3]
        if lam == 0 or any(G[i][j] != F.mul(lam, U[i][j]) for i in range(4) for j in range(4)):
            raise CollineationError("matrix does not preserve the Hermitian form up to a scalar")
        return lam

    def apply(self, X: Sequence[int]) -> Point:
        F = self.F
        v = [F.frob_p(c, self.frob_power) for c in X] if self.frob_power else X
        return normalize(F, vecmat(F, v, self.matrix))

    __call__ = apply

    def apply_all(self, pts: Iterable[Point]) -> PointSet:
        return PointSet(self.apply(X) for X in pts)

    def then(self, other: "Collineation") -> "Collineation":
        """Apply self first, then other."""
        F = self.F
        twisted = tuple(tuple(F.frob_p(c, other.frob_power) for c in row) for row in self.matrix)
        return Collineation(F, matmul(F, twisted, other.matrix), self.frob_power + other.frob_power, check=False)

    def inverse(self) -> "Collineation":
        F = self.F
        k = (-self.frob_power) % F.n
        inv = matinv(F, self.matrix)
        # X -> X^phi M inverts to Y -> (Y M^-1)^(phi^-1) = Y^(phi^-1) (M^-1)^(phi^-1)
        twisted = tuple(tuple(F.frob_p(c, k) for c in row) for row in inv)
        return Collineation(F, twisted, k, check=False)

    def key(self):
        return (_normalized_matrix(self.F, self.matrix), self.frob_power)

    def __eq__(self, other):
        return isinstance(other, Collineation) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Collineation({self.matrix}, frob_power={self.frob_power})"

    def to_json(self) -> dict:
        F = self.F
        return {"matrix": [F.coeffs(c) for row in self.matrix for c in row], "frob_power": self.frob_power}

    @classmethod
    def from_json(cls, F: GF, data: dict) -> "Collineation":
        flat = [F.from_coeffs(c) for c in data["matrix"]]
        return cls(F, [flat[4 * i:4 * i + 4] for i in range(4)], int(data["frob_power"]))


@functools.lru_cache(maxsize=None)
def gram(F: GF) -> Matrix:
    n1 = F.neg(1)
    return ((0, 0, 0, 1), (0, n1, 0, 0), (0, 0, n1, 0), (1, 0, 0, 0))


def identity(F: GF) -> Collineation:
    return Collineation(F, [[int(i == j) for j in range(4)] for i in range(4)])


def frobenius(F: GF, k: int = 1) -> Collineation:
    return Collineation(F, identity(F).matrix, k)


def involution_m1(F: GF) -> Collineation:
    """Swaps P and Q, fixes S."""
    return Collineation(F, [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]])


def involution_m2(F: GF) -> Collineation:
    """Acts on {P, Q, S} as the cycle P -> S -> Q -> P."""
    n1 = F.neg(1)
    return Collineation(F, [[0, 0, 0, 1], [0, 0, n1, n1], [0, n1, 0, n1], [1, 1, 1, 1]])


def middle_block(F: GF, x: int) -> Collineation:
    """diag(1, [[x, 1-x], [1-x, x]], 1); fixes P, Q, S when x + x^q = 2x^(q+1)."""
    y = F.sub(1, x)
    return Collineation(F, [[1, 0, 0, 0], [0, x, y, 0], [0, y, x, 0], [0, 0, 0, 1]])


def closure(generators: Sequence[Collineation]) -> list[Collineation]:
    seen = {g.key(): g for g in generators}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for a in frontier:
            for g in generators:
                c = a.then(g)
                k = c.key()
                if k not in seen:
                    seen[k] = c
                    nxt.append(c)
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def pointwise_stabilizer_PQS(F: GF) -> list[Collineation]:
    out = {}
    for x in admissible_x(F):
        for k in range(F.n):
            g = middle_block(F, x).then(frobenius(F, k))
            out[g.key()] = g
    return [out[k] for k in sorted(out)]


def stabilizer_PQS(F: GF) -> list[Collineation]:
    """The setwise stabiliser of {P, Q, S}, closed under composition."""
    gens = pointwise_stabilizer_PQS(F) + [involution_m1(F), involution_m2(F)]
    return closure(gens)


def stabilizer_order(q: int) -> int:
    from .field import prime_power

    _, f = prime_power(q)
    return 12 * (q + 1) * f


# ---------------------------------------------------------------------------
# constructive transitivity
# ---------------------------------------------------------------------------

def _perp_basis(hs: HermitianSpace, A, B) -> list[list[int]]:
    F = hs.F
    funcs = []
    for X in (A, B):
        fx = [F.frob(c) for c in X]
        funcs.append([fx[3], F.neg(fx[1]), F.neg(fx[2]), fx[0]])
    red = row_reduce(F, funcs)
    pivots = [next(i for i, c in enumerate(r) if c) for r in red]
    free = [c for c in range(4) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * 4
        v[fcol] = 1
        for r, pc in zip(red, pivots):
            v[pc] = F.neg(r[fcol])
        basis.append(v)
    return basis


def _scale_to_minus_one(hs: HermitianSpace, w) -> tuple:
    F = hs.F
    s = F.solve_norm(F.neg(F.inv(hs.h(w, w))))
    return tuple(F.mul(c, s) for c in w)


def map_pair_to_standard(hs: HermitianSpace, A: Point, B: Point) -> Collineation:
    """A linear collineation g with g(A) = P and g(B) = Q."""
    F = hs.F
    A, B = normalize(F, A), normalize(F, B)
    for X in (A, B):
        if not hs.is_isotropic(X):
            raise CollineationError(f"{X} is not on the surface")
    hba = hs.h(B, A)
    if hba == 0:
        raise CollineationError("points are collinear")
    r3 = A
    r0 = tuple(F.mul(c, F.inv(hba)) for c in B)
    k1, k2 = _perp_basis(hs, A, B)
    w1 = None
    for cand in [k1, k2] + [[F.add(a, F.mul(c, b)) for a, b in zip(k1, k2)] for c in range(1, F.order)]:
        if hs.h(cand, cand):
            w1 = cand
            break
    r1 = _scale_to_minus_one(hs, w1)
    v = k2 if span_coefficients(F, [w1], k2) is None else k1
    coef = F.div(hs.h(v, r1), hs.h(r1, r1))
    v = [F.sub(a, F.mul(coef, b)) for a, b in zip(v, r1)]
    r2 = _scale_to_minus_one(hs, v)
    N = (r0, r1, r2, r3)
    return Collineation(F, matinv(F, N))


class NotPerspectiveError(CollineationError):
    pass


def map_triple_to_standard(hs: HermitianSpace, A: Point, B: Point, C: Point) -> Collineation:
    """A linear collineation g with g(A) = P, g(B) = Q, g(C) = S = (1,1,1,1)."""
    F = hs.F
    g1 = map_pair_to_standard(hs, A, B)
    Cp = g1.apply(C)
    if not hs.is_isotropic(Cp) or Cp[0] == 0 or Cp[3] == 0:
        raise CollineationError("third point is collinear with one of the others")
    _, a, b, c = Cp
    if not F.in_subfield(c):
        raise NotPerspectiveError("triple is not in perspective")
    lam = F.inv(c)
    s = F.solve_norm(lam)
    si = F.inv(s)
    v, vp = (a, b), (F.neg(F.frob(b)), F.frob(a))
    w, wp = (si, si), (F.neg(F.frob(si)), F.frob(si))
    K0 = matmul(F, matinv(F, (v, vp)), (w, wp))
    K = [[F.mul(s, x) for x in row] for row in K0]
    M2 = [[1, 0, 0, 0], [0, K[0][0], K[0][1], 0], [0, K[1][0], K[1][1], 0], [0, 0, 0, F.inv(c)]]
    return g1.then(Collineation(F, M2))


# ---------------------------------------------------------------------------
# classicality
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def standard_forms(F: GF) -> dict:
    """frozenset -> (x, k) for every standard-form set and field-automorphism image."""
    from .constructions import apply_field_automorphism

    out = {}
    for x in admissible_x(F):
        base = standard_form(F, x)
        for k in range(F.n):
            out.setdefault(apply_field_automorphism(F, base, k).as_set(), (x, k))
    return out


def first_perspective_triple(hs: HermitianSpace, S) -> tuple | None:
    pts = np.array(sorted(tuple(X) for X in S)).reshape(-1, 4)
    idx, noncol, insub, _ = triple_table(hs, pts)
    hits = np.flatnonzero(noncol & insub)
    if len(hits) == 0:
        return None
    i, j, k = idx[hits[0]]
    return tuple(tuple(int(c) for c in pts[r]) for r in (i, j, k))


def classical_witness(hs: HermitianSpace, S) -> dict | None:
    """A collineation g with g(S) a standard-form set, or None.

    One perspective triple of S is moved to (P, Q, S); a set through P, Q, S
    is classical exactly when it is one of the q + 1 standard forms.
    """
    F = hs.F
    S = PointSet(S)
    if len(S) != F.q ** 2 + 1:
        raise ValueError(f"expected {F.q ** 2 + 1} points, got {len(S)}")
    triple = first_perspective_triple(hs, S)
    if triple is None:
        raise ValueError("set contains no perspective triple")
    g = map_triple_to_standard(hs, *triple)
    image = g.apply_all(S).as_set()
    hit = standard_forms(F).get(image)
    if hit is None:
        return None
    return {"collineation": g, "triple": triple, "x": hit[0], "frob_power": hit[1]}


def is_classical(hs: HermitianSpace, S) -> bool:
    return classical_witness(hs, S) is not None


def orbit_of_veronesean_under(F: GF, group: Iterable[Collineation]) -> set:
    V = veronesean(F)
    return {g.apply_all(V).as_set() for g in group}
