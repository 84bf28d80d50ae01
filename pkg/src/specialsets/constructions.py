"""Explicit point-set families on H(3, q^2)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .field import GF, FieldError
from .hermitian import P_POINT
from .projective import Point, PointSet, normalize


def veronesean(F: GF) -> PointSet:
    """{(1, x, x^q, x^(q+1)) : x in GF(q^2)} together with P = (0, 0, 0, 1).

    x runs over the whole of GF(q^2); that is what gives q^2 + 1 points.
    """
    pts = [(1, x, F.frob(x), F.norm(x)) for x in range(F.order)]
    return PointSet(pts + [P_POINT])


def admissible_x(F: GF) -> list[int]:
    """The q + 1 solutions of x + x^q = 2 x^(q+1)."""
    return [x for x in range(F.order) if F.trace(x) == F.mul(2, F.norm(x))]


def standard_form(F: GF, x: int) -> PointSet:
    if F.trace(x) != F.mul(2, F.norm(x)):
        raise FieldError(f"x = {F.format(x)} does not satisfy x + x^q = 2x^(q+1)")
    one_minus_x = F.sub(1, x)
    pts = [P_POINT]
    for a in range(F.order):
        aq = F.frob(a)
        pts.append((
            1,
            F.add(F.mul(one_minus_x, aq), F.mul(x, a)),
            F.add(F.mul(x, aq), F.mul(one_minus_x, a)),
            F.norm(a),
        ))
    return PointSet(pts)


def elliptic_quadric(F: GF) -> PointSet:
    """{(1, a, b, (a^2 + b^2)/2) : a, b in GF(q)}; q^2 points, P not included."""
    half = F.inv(2)
    sub = F.subfield()
    return PointSet(
        (1, a, b, F.mul(half, F.add(F.mul(a, a), F.mul(b, b)))) for a in sub for b in sub
    )


def elliptic_quadric_with_p(F: GF) -> PointSet:
    return PointSet(list(elliptic_quadric(F)) + [P_POINT])


# ---------------------------------------------------------------------------
# the S_{alpha,beta} family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SAlphaBetaParams:
    alpha: int
    beta: int
    omega: int

    def validate(self, F: GF) -> "SAlphaBetaParams":
        if F.norm(self.omega) != F.neg(1):
            raise FieldError("omega must have norm -1")
        return self

    @classmethod
    def make(cls, F: GF, alpha: int, beta: int, omega: int | None = None) -> "SAlphaBetaParams":
        return cls(alpha, beta, F.omega if omega is None else omega).validate(F)


def f_map(F: GF, params: SAlphaBetaParams, t: int) -> int:
    """f(t) = alpha t + beta t^q."""
    return F.add(F.mul(params.alpha, t), F.mul(params.beta, F.frob(t)))


def c_value(F: GF, alpha: int, beta: int, t: int) -> int:
    """Last coordinate N(t) Tr(alpha) + Tr(t^2 beta^q)."""
    return F.add(F.mul(F.norm(t), F.trace(alpha)), F.trace(F.mul(F.mul(t, t), F.frob(beta))))


def f_point(F: GF, ft: int, t: int, c: int, omega: int) -> Point:
    """(1, f(t) + t, (f(t) - t) omega, c)."""
    return (1, F.add(ft, t), F.mul(F.sub(ft, t), omega), c)


def r_point(F: GF, params: SAlphaBetaParams, t: int) -> Point:
    return f_point(F, f_map(F, params, t), t, c_value(F, params.alpha, params.beta, t), params.omega)


def s_alpha_beta(F: GF, params: SAlphaBetaParams) -> PointSet:
    params.validate(F)
    return PointSet([P_POINT] + [r_point(F, params, t) for t in range(F.order)])


def set_from_function(F: GF, f: Sequence[int] | Callable[[int], int], omega: int | None = None) -> PointSet:
    """P together with (1, f(t)+t, (f(t)-t) omega, Tr(f(t) t^q)) for all t."""
    omega = F.omega if omega is None else omega
    table = [f(t) for t in range(F.order)] if callable(f) else list(f)
    pts = [P_POINT]
    for t, ft in enumerate(table):
        pts.append(f_point(F, ft, t, F.trace(F.mul(ft, F.frob(t))), omega))
    return PointSet(pts)


def quadratic_form_anisotropic(F: GF, c0: int, d0: int, d1: int) -> bool:
    """Whether c_t = 0 only at t = 0, for alpha = c0 + c1 w and beta = d0 + d1 w.

    With t = t0 + t1 w (Tr(w) = 0, n = N(w)) one gets
    c_t / 2 = (c0 + d0) t0^2 + 2 n d1 t0 t1 + n (c0 - d0) t1^2,
    which has no nontrivial zero iff n^2 d1^2 - n (c0^2 - d0^2) is a non-square.
    """
    n = F.norm(F.trace_zero_unit)
    disc = F.sub(F.mul(F.mul(d1, d1), F.mul(n, n)), F.mul(n, F.sub(F.mul(c0, c0), F.mul(d0, d0))))
    return not F.is_square_in_subfield(disc)


def find_nonclassical_params(F: GF) -> SAlphaBetaParams:
    """First (alpha, beta) with Tr(alpha) != 0 and c_t != 0 for every t != 0.

    Scans (c0, c1, d0, d1) in label order using the anisotropy criterion and
    confirms each candidate by direct evaluation of c_t.
    """
    w = F.trace_zero_unit
    sub = F.subfield()
    for c0 in sub:
        if c0 == 0:
            continue
        for c1 in sub:
            for d0 in sub:
                for d1 in sub:
                    if not quadratic_form_anisotropic(F, c0, d0, d1):
                        continue
                    alpha = F.add(c0, F.mul(c1, w))
                    beta = F.add(d0, F.mul(d1, w))
                    if F.trace(alpha) and all(c_value(F, alpha, beta, t) for t in range(1, F.order)):
                        return SAlphaBetaParams.make(F, alpha, beta)
    raise FieldError(f"no non-classical (alpha, beta) found over {F!r}")


def coplanar_family(F: GF) -> list[tuple[Point, int, int]]:
    """The q^3 points (1, a, lam - a, (2N(a) - lam Tr(a) + lam^2)/2), lam in GF(q).

    Returned as (point, a, lam) triples.  All of them have GF(q)-valued
    invariants with P, Q and S.
    """
    half = F.inv(2)
    out = []
    for lam in F.subfield():
        for a in range(F.order):
            c = F.mul(half, F.add(F.sub(F.mul(2, F.norm(a)), F.mul(lam, F.trace(a))), F.mul(lam, lam)))
            out.append(((1, a, F.sub(lam, a), c), a, lam))
    return out


def apply_field_automorphism(F: GF, pts, k: int) -> PointSet:
    return PointSet(normalize(F, [F.frob_p(c, k) for c in X]) for X in pts)
