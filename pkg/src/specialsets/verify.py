"""Executable checks, one per statement, each producing a :class:`Report`.

Witnesses hold raw field labels.  A label is the base-p integer whose digits
are the coefficient vector of the element, so the ``field`` block in the JSON
output (p, e, defining polynomial) is enough to decode every witness.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations
from typing import Callable, Sequence

import numpy as np

from .constructions import (
    SAlphaBetaParams,
    admissible_x,
    apply_field_automorphism,
    c_value,
    coplanar_family,
    elliptic_quadric,
    elliptic_quadric_with_p,
    f_map,
    find_nonclassical_params,
    r_point,
    s_alpha_beta,
    set_from_function,
    standard_form,
    veronesean,
)
from .field import GF, FieldError, field_for_q
from .group import (
    NotPerspectiveError,
    classical_witness,
    is_classical,
    map_pair_to_standard,
    map_triple_to_standard,
    orbit_of_veronesean_under,
    pointwise_stabilizer_PQS,
    stabilizer_order,
    stabilizer_PQS,
    standard_forms,
)
from .hermitian import (
    P_POINT,
    Q_POINT,
    S_POINT,
    CorrespondenceError,
    HermitianSpace,
    space_for_q,
    surface_size,
)
from .invariants import (
    pole_degenerate_grid,
    segre,
    segre_PR1R2,
    trace_R1R2R3,
    triple_table,
)
from .projective import Point, PointSet, det, normalize, rank

VERDICTS = ("pass", "fail")


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, PointSet)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


@dataclass(frozen=True)
class Report:
    statement_id: str
    q: int
    verdict: str
    witnesses: tuple = ()
    counts: dict = dc_field(default_factory=dict)
    coverage: str = "exhaustive"
    field: GF | None = dc_field(default=None, compare=False, repr=False)
    notes: tuple = ()

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}")
        object.__setattr__(self, "witnesses", tuple(self.witnesses))
        object.__setattr__(self, "notes", tuple(self.notes))
        if self.verdict == "fail" and not self.witnesses:
            raise ValueError("a failing report needs at least one witness")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        out = {
            "statement_id": self.statement_id,
            "q": self.q,
            "verdict": self.verdict,
            "coverage": self.coverage,
            "counts": _plain(self.counts),
            "witnesses": _plain(list(self.witnesses)),
        }
        if self.field is not None:
            out["field"] = self.field.params.to_json()
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def _report(sid, q, failures, witnesses=(), counts=None, coverage="exhaustive", F=None, notes=()):
    """Fail iff ``failures`` is nonempty; failures come first among witnesses."""
    wit = list(failures) + list(witnesses)
    return Report(sid, q, "fail" if failures else "pass", wit, counts or {}, coverage, F, notes)


# ---------------------------------------------------------------------------
# special sets
# ---------------------------------------------------------------------------

def check_special_set(hs: HermitianSpace, S, statement_id: str = "special_set") -> Report:
    """Both characterizations of a special set, run independently."""
    F = hs.F
    q = F.q
    pts = PointSet(normalize(F, X) for X in S)
    n = len(pts)
    size_ok = n == q * q + 1
    failures, info = [], []
    off = [X for X in pts if not hs.is_isotropic(X)]
    if off:
        return _report(statement_id, q, [{"kind": "not_on_surface", "point": off[0]}],
                       counts={"size": n}, F=F)
    if not size_ok:
        failures.append({"kind": "size", "size": n, "expected": q * q + 1})

    arr = pts.array()
    surf = hs.surface_array
    in_set = np.zeros(len(surf), dtype=bool)
    for X in pts:
        in_set[hs.surface.index(X)] = True
    outside = surf[~in_set]
    cnt = (hs.hmatrix(outside, arr) == 0).sum(axis=1) if n else np.zeros(len(outside), int)
    bad_out = np.flatnonzero((cnt != 0) & (cnt != 2))
    outside_ok = len(bad_out) == 0

    idx, noncol, _, tz = triple_table(hs, arr)
    bad_tri = np.flatnonzero(~noncol | tz)
    triples_ok = len(bad_tri) == 0

    G = hs.hmatrix(arr, arr) if n else np.zeros((0, 0), int)
    collinear_pairs = int(((G == 0).sum() - n) // 2) if n else 0
    agree = outside_ok == triples_ok

    if len(bad_tri):
        i, j, k = idx[bad_tri[0]]
        tri = {"kind": "degenerate_triple", "points": [pts[i], pts[j], pts[k]],
               "collinear_pair": bool(not noncol[bad_tri[0]])}
        (failures if size_ok else info).append(tri)
    if len(bad_out):
        b = bad_out[0]
        X = tuple(int(c) for c in outside[b])
        wit = {"kind": "outside_point", "point": X, "collinear_count": int(cnt[b])}
        (failures if size_ok else info).append(wit)
    if size_ok and not agree:
        failures.append({"kind": "characterizations_disagree",
                         "outside_ok": outside_ok, "triples_ok": triples_ok})
    counts = {
        "size": n,
        "outside_points": int(len(outside)),
        "outside_bad": int(len(bad_out)),
        "triples": int(len(idx)),
        "degenerate_triples": int(len(bad_tri)),
        "collinear_pairs": collinear_pairs,
        "outside_characterization": int(outside_ok),
        "triple_characterization": int(triples_ok),
        "characterizations_agree": int(agree),
    }
    return _report(statement_id, q, failures, info, counts, F=F)


# ---------------------------------------------------------------------------
# F_ell and linearity of f
# ---------------------------------------------------------------------------

def _f_table(F: GF, f) -> list[int]:
    if isinstance(f, SAlphaBetaParams):
        return [f_map(F, f, t) for t in range(F.order)]
    if callable(f):
        return [f(t) for t in range(F.order)]
    table = list(f)
    if len(table) != F.order:
        raise ValueError(f"f-table needs {F.order} entries")
    return table


def _linearity_failure(F: GF, table) -> dict | None:
    for a in range(F.order):
        for b in range(a, F.order):
            if table[F.add(a, b)] != F.add(table[a], table[b]):
                return {"kind": "not_additive", "a": a, "b": b}
    for lam in F.subfield():
        for a in range(F.order):
            if table[F.mul(lam, a)] != F.mul(lam, table[a]):
                return {"kind": "not_homogeneous", "scalar": lam, "a": a}
    return None


def _sublines_through_infinity(F: GF):
    """Affine GF(q)-lines {u0 + lam d} of GF(q^2); with P these are the Baer
    sublines of the standard line through P, in the u = 2 t^q coordinate."""
    sub = F.subfield()
    seen, out = set(), []
    for d in range(1, F.order):
        for u0 in range(F.order):
            pts = frozenset(F.add(u0, F.mul(lam, d)) for lam in sub)
            if pts not in seen:
                seen.add(pts)
                out.append(sorted(pts))
    return out


def check_flinear_equivalence(hs: HermitianSpace, f, direction: str = "both",
                              omega: int | None = None) -> Report:
    """Coplanarity of the images of Baer sublines through P against
    GF(q)-linearity of f, for the set P + {(1, f+t, (f-t)w, Tr(f t^q))}."""
    if direction not in ("forward", "converse", "both"):
        raise ValueError("direction must be forward, converse or both")
    F = hs.F
    table = _f_table(F, f)
    if table[0] != 0:
        raise ValueError("f(0) must be 0")
    omega = F.omega if omega is None else omega
    S = set_from_function(F, table, omega)
    image = {t: (1, F.add(table[t], t), F.mul(F.sub(table[t], t), omega),
                 F.trace(F.mul(table[t], F.frob(t)))) for t in range(F.order)}
    half = F.inv(2)

    sublines = _sublines_through_infinity(F)
    non_coplanar = None
    n_coplanar = 0
    for us in sublines:
        ts = [F.frob(F.mul(u, half)) for u in us]
        if rank(F, [P_POINT] + [image[t] for t in ts]) <= 3:
            n_coplanar += 1
        elif non_coplanar is None:
            non_coplanar = {"kind": "non_coplanar_subline", "parameters": ts,
                            "points": [image[t] for t in ts]}
    all_coplanar = non_coplanar is None
    lin_fail = _linearity_failure(F, table)
    linear = lin_fail is None

    failures, info = [], []
    if direction in ("forward", "both") and all_coplanar and not linear:
        failures.append(lin_fail)
    if direction in ("converse", "both") and linear and not all_coplanar:
        failures.append(non_coplanar)
    if non_coplanar is not None and not failures:
        info.append(non_coplanar)
    if lin_fail is not None and not failures:
        info.append(lin_fail)

    try:
        hs.f_ell_map(S)
        bijective = True
    except CorrespondenceError:
        bijective = False
    counts = {"sublines": len(sublines), "coplanar_sublines": n_coplanar,
              "all_coplanar": int(all_coplanar), "linear": int(linear),
              "correspondence_bijective": int(bijective)}
    return _report(f"lemma:flinear:{direction}", F.q, failures, info, counts, F=F)


def check_ct_lemma(hs: HermitianSpace, alpha: int, beta: int, omega: int | None = None) -> Report:
    """For R = (1, f(t)+t, (f(t)-t)w, c): PQR in perspective iff c = c_t != 0."""
    F = hs.F
    omega = F.omega if omega is None else omega
    params = SAlphaBetaParams.make(F, alpha, beta, omega)
    failures = []
    rejected = isotropic = persp = 0
    all_persp = True
    for t in range(1, F.order):
        ft = f_map(F, params, t)
        ct = c_value(F, alpha, beta, t)
        target = F.mul(2, F.trace(F.mul(ft, F.frob(t))))
        persp_here = False
        for c in range(F.order):
            R = (1, F.add(ft, t), F.mul(F.sub(ft, t), omega), c)
            if F.trace(c) != target:
                if hs.is_isotropic(R):
                    failures.append({"kind": "isotropic_with_wrong_trace", "t": t, "c": c})
                rejected += 1
                continue
            if not hs.is_isotropic(R):
                failures.append({"kind": "not_isotropic", "t": t, "c": c})
                continue
            isotropic += 1
            lhs = hs.h(Q_POINT, R) != 0 and segre(hs, P_POINT, Q_POINT, R).in_subfield
            rhs = c == ct and c != 0
            if lhs != rhs:
                failures.append({"kind": "biconditional", "t": t, "c": c, "perspective": lhs})
            persp += int(lhs)
            persp_here |= lhs
        all_persp &= persp_here
    tr_ab = F.trace(F.add(alpha, beta))
    if all_persp and tr_ab == 0:
        failures.append({"kind": "trace_alpha_plus_beta_zero", "alpha": alpha, "beta": beta})
    counts = {"isotropic_candidates": isotropic, "rejected_non_isotropic": rejected,
              "perspective": persp, "all_perspective": int(all_persp),
              "trace_alpha_plus_beta": tr_ab, "c_1": c_value(F, alpha, beta, 1)}
    return _report("lemma:ct", F.q, failures[:1], (), counts, F=F)


# ---------------------------------------------------------------------------
# the S_{alpha,beta} family
# ---------------------------------------------------------------------------

def _all_params(F: GF):
    for a in range(F.order):
        for b in range(F.order):
            yield SAlphaBetaParams.make(F, a, b)


def family_admissible(F: GF, alpha: int, beta: int) -> bool:
    """c_t != 0 for all t != 0, i.e. P Q R_t in perspective for every t != 0."""
    return all(c_value(F, alpha, beta, t) for t in range(1, F.order))


def _segre_value_raw(hs, A, B, C) -> int:
    F = hs.F
    return F.mul(F.mul(hs.h(A, B), hs.h(B, C)), hs.h(C, A))


def degenerate_triple_witness(hs: HermitianSpace, params: SAlphaBetaParams):
    """First (t1, t2, t3), t1 in GF(q^2), t2 < t3 in GF(q), with Tr[R1,R2,R3] = 0
    and R1, R2, R3 pairwise noncollinear."""
    F = hs.F
    sub = F.subfield()
    R = {t: r_point(F, params, t) for t in range(F.order)}
    for t1 in range(F.order):
        for t2, t3 in combinations(sub, 2):
            if t1 in (t2, t3):
                continue
            A, B, C = R[t1], R[t2], R[t3]
            if hs.h(A, B) and hs.h(B, C) and hs.h(C, A) and F.trace(_segre_value_raw(hs, A, B, C)) == 0:
                return (t1, t2, t3)
    return None


def check_main2(q: int, include_nonadmissible: bool = True) -> Report:
    hs = space_for_q(q)
    F = hs.F
    failures = []
    counts = dict(pairs=0, admissible=0, trace_zero=0, classical=0, condition_iv=0,
                  witnesses_found=0, witness_t1_outside_subfield=0,
                  nonadmissible_special=0, closed_form_mismatch=0,
                  trace_zero_nonperspective_through_p=0)
    sample = []
    for params in _all_params(F):
        counts["pairs"] += 1
        a, b = params.alpha, params.beta
        S = s_alpha_beta(F, params)
        if not family_admissible(F, a, b):
            if include_nonadmissible and check_special_set(hs, S).passed:
                counts["nonadmissible_special"] += 1
            continue
        counts["admissible"] += 1
        tz = F.trace(a) == 0
        cond_iv = check_special_set(hs, S).passed
        cls = is_classical(hs, S)
        counts["trace_zero"] += tz
        counts["classical"] += cls
        counts["condition_iv"] += cond_iv
        if not (tz == cond_iv == cls):
            failures.append({"kind": "equivalence_broken", "alpha": a, "beta": b,
                             "trace_zero": tz, "condition_iv": cond_iv, "classical": cls})
        if tz:
            arr = np.array(sorted(S))
            Pi = int(np.flatnonzero((arr == P_POINT).all(axis=1))[0])
            idx, noncol, insub, _ = triple_table(hs, arr)
            on_p = (idx == Pi).any(axis=1)
            counts["trace_zero_nonperspective_through_p"] += int((on_p & ~(noncol & insub)).sum())
            continue
        wit = degenerate_triple_witness(hs, params)
        if wit is None:
            failures.append({"kind": "no_degenerate_triple", "alpha": a, "beta": b})
            continue
        counts["witnesses_found"] += 1
        counts["witness_t1_outside_subfield"] += int(not F.in_subfield(wit[0]))
        closed = trace_R1R2R3(F, a, b, *wit)
        if closed != 0:
            counts["closed_form_mismatch"] += 1
        if len(sample) < 3:
            sample.append({"kind": "degenerate_triple", "alpha": a, "beta": b, "t": list(wit),
                           "points": [r_point(F, params, t) for t in wit]})
    if counts["trace_zero_nonperspective_through_p"]:
        failures.append({"kind": "trace_zero_nonperspective_through_p",
                         "count": counts["trace_zero_nonperspective_through_p"]})
    return _report("main2", q, failures, sample, counts, F=F)


# ---------------------------------------------------------------------------
# main1: three perspective edges through P
# ---------------------------------------------------------------------------

def check_main1(q: int) -> Report:
    from .search import SearchConfig, search_main1_sets

    return search_main1_sets(SearchConfig(q=q, mode="main1_constrained"))


# ---------------------------------------------------------------------------
# counts and the stabilizer
# ---------------------------------------------------------------------------

def perspective_formula(q: int) -> int:
    return q ** 6 * (q ** 3 + 1) * (q ** 4 - 1) * (q - 1) // 6


def collineation_group_order(q: int) -> int:
    from .field import prime_power

    _, f = prime_power(q)
    return 2 * q ** 6 * (q ** 3 + 1) * (q ** 4 - 1) * (q * q - 1) * f


def exhaustive_triple_counts(hs: HermitianSpace) -> dict:
    """Unordered noncollinear / perspective / degenerate triples of the surface."""
    F = hs.F
    G = hs.surface_gram
    n = len(G)
    tri = np.triu(np.ones((n, n), dtype=bool), k=1)
    noncol = persp = degen = 0
    for i in range(n):
        gi = G[i]
        rows = slice(i + 1, n)
        sub = G[rows, rows]
        v = F.vmul(F.vmul(gi[rows][:, None], sub), G[rows, i][None, :])
        ok = tri[: n - i - 1, : n - i - 1] & (gi[rows][:, None] != 0) & (sub != 0) & (G[rows, i][None, :] != 0)
        noncol += int(ok.sum())
        persp += int((ok & F.IN_SUB[v]).sum())
        degen += int((ok & (F.TRACE[v] == 0)).sum())
    return {"noncollinear": noncol, "perspective": persp, "degenerate": degen}


def perspective_partners_of_PQ(hs: HermitianSpace) -> int:
    """#R with P, Q, R pairwise noncollinear and in perspective."""
    F = hs.F
    X = hs.surface_array
    hp = hs.hmatrix(X, np.array([P_POINT]))[:, 0]
    hq = hs.hmatrix(np.array([Q_POINT]), X)[0]
    v = F.vmul(F.vmul(hs.h(P_POINT, Q_POINT), hq), hp)
    return int(((hp != 0) & (hq != 0) & F.IN_SUB[v]).sum())


def check_counts(q: int) -> Report:
    hs = space_for_q(q)
    F = hs.F
    failures = []
    expected = perspective_formula(q)
    H = surface_size(q)
    m = perspective_partners_of_PQ(hs)
    via_transitivity = H * q ** 5 * m // 6
    counts = {"formula": expected, "surface": H, "partners_of_PQ": m,
              "perspective_via_pair_transitivity": via_transitivity}
    if q == 3:
        ex = exhaustive_triple_counts(hs)
        counts.update({f"exhaustive_{k}": v for k, v in ex.items()})
        got, coverage = ex["perspective"], "exhaustive"
    else:
        got, coverage = via_transitivity, "exhaustive-up-to-pair-transitivity"
    if got != expected:
        failures.append({"kind": "perspective_count", "got": got, "expected": expected})
    if via_transitivity != expected:
        failures.append({"kind": "pair_transitivity_count", "got": via_transitivity})

    D = stabilizer_PQS(F)
    counts["stabilizer"] = len(D)
    counts["stabilizer_formula"] = stabilizer_order(q)
    if len(D) != stabilizer_order(q):
        failures.append({"kind": "stabilizer_size", "got": len(D), "expected": stabilizer_order(q)})
    counts["group_order"] = collineation_group_order(q)
    if expected * len(D) != collineation_group_order(q):
        failures.append({"kind": "orbit_counting", "product": expected * len(D)})

    V = veronesean(F)
    _, noncol, insub, _ = triple_table(hs, V.array())
    counts["veronesean_triples"] = int(noncol.sum())
    counts["veronesean_perspective"] = int((noncol & insub).sum())
    if counts["veronesean_perspective"] != len(list(combinations(range(len(V)), 3))):
        failures.append({"kind": "veronesean_triple_not_perspective"})
    return _report("counts", q, failures, (), counts, coverage, F)


def check_x_solutions(q: int) -> Report:
    F = field_for_q(q)
    xs = admissible_x(F)
    fail = [] if len(xs) == q + 1 else [{"kind": "count", "got": len(xs), "solutions": xs}]
    return _report("x_solutions", q, fail, (), {"solutions": len(xs), "expected": q + 1}, F=F)


def check_stabilizer(q: int, seed: int = 0) -> Report:
    hs = space_for_q(q)
    F = hs.F
    rng = random.Random(seed)
    failures = []
    D = stabilizer_PQS(F)
    C = pointwise_stabilizer_PQS(F)
    base = (P_POINT, Q_POINT, S_POINT)
    perms = set()
    surf = hs.surface.points
    for g in D:
        img = tuple(g.apply(X) for X in base)
        if set(img) != set(base):
            failures.append({"kind": "moves_PQS", "frob_power": g.frob_power, "image": img})
            break
        perms.add(tuple(base.index(Y) for Y in img))
        for X in rng.sample(surf, min(50, len(surf))):
            if not hs.is_isotropic(g.apply(X)):
                failures.append({"kind": "leaves_surface", "point": X})
                break
    counts = {"stabilizer": len(D), "expected": stabilizer_order(q), "pointwise": len(C),
              "induced_permutations": len(perms)}
    if len(D) != stabilizer_order(q):
        failures.append({"kind": "size", "got": len(D)})
    if len(perms) != 6:
        failures.append({"kind": "not_all_permutations", "permutations": sorted(perms)})
    return _report("lemma:stabPQS", q, failures[:1], (), counts, "sampled-points", F)


def check_transitive(q: int, seed: int = 0, samples: int = 100) -> Report:
    hs = space_for_q(q)
    F = hs.F
    rng = random.Random(seed)
    surf = hs.surface.points
    failures = []
    pairs = triples = 0
    while pairs < samples:
        A, B = rng.sample(surf, 2)
        if hs.h(A, B) == 0:
            continue
        g = map_pair_to_standard(hs, A, B)
        pairs += 1
        if (g.apply(A), g.apply(B)) != (P_POINT, Q_POINT):
            failures.append({"kind": "pair_map", "points": [A, B]})
    non_persp_rejected = 0
    while triples < samples:
        A, B, C = rng.sample(surf, 3)
        if not (hs.h(A, B) and hs.h(B, C) and hs.h(C, A)):
            continue
        if not segre(hs, A, B, C).in_subfield:
            try:
                map_triple_to_standard(hs, A, B, C)
                failures.append({"kind": "nonperspective_accepted", "points": [A, B, C]})
            except NotPerspectiveError:
                non_persp_rejected += 1
            continue
        g = map_triple_to_standard(hs, A, B, C)
        triples += 1
        if tuple(g.apply(X) for X in (A, B, C)) != (P_POINT, Q_POINT, S_POINT):
            failures.append({"kind": "triple_map", "points": [A, B, C]})
    V = veronesean(F)
    v_triples = 0
    for A, B, C in combinations(V, 3):
        g = map_triple_to_standard(hs, A, B, C)
        v_triples += 1
        if tuple(g.apply(X) for X in (A, B, C)) != (P_POINT, Q_POINT, S_POINT):
            failures.append({"kind": "triple_map", "points": [A, B, C]})
    counts = {"pairs": pairs, "triples": triples, "veronesean_triples": v_triples,
              "nonperspective_rejected": non_persp_rejected,
              "perspective_formula": perspective_formula(q), "stabilizer": stabilizer_order(q),
              "group_order": collineation_group_order(q),
              "orbit_identity": int(perspective_formula(q) * stabilizer_order(q)
                                    == collineation_group_order(q))}
    if not counts["orbit_identity"]:
        failures.append({"kind": "orbit_identity"})
    return _report("lemma:transitive", q, failures[:1], (), counts, "sampled", F)


def check_classical_lemma(q: int) -> Report:
    F = field_for_q(q)
    orbit = orbit_of_veronesean_under(F, stabilizer_PQS(F))
    forms = set(standard_forms(F))
    failures = []
    if orbit != forms:
        extra = sorted(orbit ^ forms, key=sorted)[0]
        failures.append({"kind": "orbit_mismatch", "points": sorted(extra)})
    counts = {"orbit_size": len(orbit), "standard_forms": len(forms),
              "admissible_x": len(admissible_x(F))}
    return _report("lemma:classical", q, failures, (), counts, F=F)


# ---------------------------------------------------------------------------
# invariants: degeneracy, perspective, closed forms
# ---------------------------------------------------------------------------

def check_degplane(q: int, seed: int = 0, rows: int | None = None) -> Report:
    """Trace-zero flag against the pole-on-plane oracle on noncollinear triples.

    At q = 3 every triple is visited; otherwise ``rows`` seeded first points
    are paired with all later surface points.
    """
    hs = space_for_q(q)
    F = hs.F
    X = hs.surface_array
    G = hs.surface_gram
    n = len(X)
    if rows is None:
        rows = n if q == 3 else 8
    firsts = range(n) if rows >= n else sorted(random.Random(seed).sample(range(n), rows))
    checked = disagree = degenerate = flat = 0
    witness = None
    for i in firsts:
        rest = X[i + 1:]
        gi = G[i, i + 1:]
        sub = G[i + 1:, i + 1:]
        v = F.vmul(F.vmul(gi[:, None], sub), G[i + 1:, i][None, :])
        m = len(rest)
        upper = np.triu(np.ones((m, m), dtype=bool), k=1)
        ok = upper & (gi[:, None] != 0) & (sub != 0) & (gi[None, :] != 0)
        spans, deg = pole_degenerate_grid(hs, X[i], rest, rest)
        flag = F.TRACE[v] == 0
        bad = ok & (flag != deg)
        checked += int(ok.sum())
        degenerate += int((ok & flag).sum())
        flat += int((ok & ~spans).sum())
        if bad.any():
            disagree += int(bad.sum())
            if witness is None:
                j, k = np.argwhere(bad)[0]
                witness = {"kind": "oracle_disagreement",
                           "points": [tuple(map(int, X[i])), tuple(map(int, rest[j])), tuple(map(int, rest[k]))]}
    counts = {"triples": checked, "degenerate": degenerate, "disagreements": disagree,
              "collinear_point_triples": flat}
    coverage = "exhaustive" if rows >= n else f"sampled-rows:{rows}"
    return _report("lemma:degplane", q, [witness] if witness else [], (), counts, coverage, F)


def _dual_plane(F: GF, a, b, c) -> tuple:
    """Coordinates of the plane through three independent vectors."""
    out = []
    for j in range(4):
        minor = det(F, [[r[k] for k in range(4) if k != j] for r in (a, b, c)])
        out.append(minor if j % 2 == 0 else F.neg(minor))
    return tuple(out)


def planes_share_a_line(hs: HermitianSpace, A: Point, B: Point, C: Point) -> bool:
    """Whether the planes <A^perp cap B^perp, C> etc. (cyclically) have a common line."""
    from .group import _perp_basis

    F = hs.F
    planes = []
    for X, Y, Z in ((A, B, C), (B, C, A), (C, A, B)):
        k1, k2 = _perp_basis(hs, X, Y)
        planes.append(_dual_plane(F, k1, k2, Z))
    return rank(F, planes) <= 2


def check_inperspective(q: int, seed: int = 0, samples: int = 500) -> Report:
    """Segre-in-GF(q) against the three-planes-through-a-line definition.

    Exhaustive over R with P, Q, R pairwise noncollinear (every triple is
    equivalent to one of these), plus seeded random triples.
    """
    hs = space_for_q(q)
    F = hs.F
    surf = hs.surface.points
    failures = []
    n = agree = persp = 0

    flat = 0

    def one(A, B, C):
        nonlocal n, agree, persp, flat
        a = segre(hs, A, B, C).in_subfield
        if rank(F, [A, B, C]) < 3:
            # three points of one secant line: the three planes all contain
            # the polar line, so the plane test says nothing
            flat += 1
            if a and not failures:
                failures.append({"kind": "flat_triple_perspective", "points": [A, B, C]})
            return
        b = planes_share_a_line(hs, A, B, C)
        n += 1
        persp += a
        if a == b:
            agree += 1
        elif not failures:
            failures.append({"kind": "definition_mismatch", "points": [A, B, C], "segre_in_subfield": a})

    for R in surf:
        if hs.h(P_POINT, R) and hs.h(Q_POINT, R):
            one(P_POINT, Q_POINT, R)
    rng = random.Random(seed)
    k = 0
    while k < samples:
        A, B, C = rng.sample(surf, 3)
        if hs.h(A, B) and hs.h(B, C) and hs.h(C, A):
            one(A, B, C)
            k += 1
    return _report("lemma:inperspective", q, failures, (), {"triples": n, "agree": agree, "perspective": persp,
                                                      "secant_line_triples": flat},
                   "exhaustive-through-PQ+sampled", F)


def check_PR1R2(q: int) -> Report:
    """Closed form for [P, R1, R2] against the definition, all (alpha, beta, t1, t2)."""
    hs = space_for_q(q)
    F = hs.F
    failures = []
    n = exact = conj = criterion = 0
    for params in _all_params(F):
        a, b = params.alpha, params.beta
        R = [r_point(F, params, t) for t in range(F.order)]
        for t1, t2 in permutations(range(F.order), 2):
            raw = F.mul(F.mul(hs.h(P_POINT, R[t1]), hs.h(R[t1], R[t2])), hs.h(R[t2], P_POINT))
            closed = segre_PR1R2(F, a, b, t1, t2)
            n += 1
            exact += raw == closed
            conj += F.frob(raw) == closed
            predicted = F.trace(a) == 0 or F.in_subfield(F.mul(t1, F.frob(t2)))
            if predicted != F.in_subfield(closed):
                criterion += 1
                if not failures:
                    failures.append({"kind": "subfield_criterion", "alpha": a, "beta": b, "t": [t1, t2]})
            if raw != closed and F.frob(raw) != closed and not failures:
                failures.append({"kind": "closed_form_mismatch", "alpha": a, "beta": b,
                                 "t": [t1, t2], "value": raw, "closed_form": closed})
    return _report("lemma:PR1R2", q, failures, (), {"cases": n, "exact": exact, "conjugate": conj,
                                                   "criterion_mismatch": criterion}, F=F)


def check_trace_R1R2R3(q: int) -> Report:
    """Vanishing of the closed form against Tr[R1,R2,R3], t2, t3 in GF(q)."""
    hs = space_for_q(q)
    F = hs.F
    sub = F.subfield()
    failures = []
    n = zero = proportional = 0
    for params in _all_params(F):
        a, b = params.alpha, params.beta
        R = {t: r_point(F, params, t) for t in range(F.order)}
        for t1 in range(F.order):
            for t2, t3 in permutations(sub, 2):
                if t1 in (t2, t3):
                    continue
                tr = F.trace(_segre_value_raw(hs, R[t1], R[t2], R[t3]))
                closed = trace_R1R2R3(F, a, b, t1, t2, t3)
                n += 1
                zero += tr == 0
                if (tr == 0) != (closed == 0):
                    if not failures:
                        failures.append({"kind": "vanishing_mismatch", "alpha": a, "beta": b,
                                         "t": [t1, t2, t3], "trace": tr, "closed_form": closed})
                elif tr == closed:
                    proportional += 1
    return _report("lemma:trace_R1R2R3", q, failures, (),
                   {"cases": n, "trace_zero": zero, "exact_equal": proportional}, F=F)


def check_justonepoint(q: int, seed: int = 0, samples: int = 2000) -> Report:
    """[P,R1,R2][P,R2,R3][P,R3,R1] is a GF(q)* multiple of [R1,R2,R3]."""
    hs = space_for_q(q)
    F = hs.F
    rng = random.Random(seed)
    cands = [R for R in hs.surface.points if hs.h(P_POINT, R)]
    failures = []
    k = implied = 0
    while k < samples:
        R1, R2, R3 = rng.sample(cands, 3)
        if not (hs.h(R1, R2) and hs.h(R2, R3) and hs.h(R3, R1)):
            continue
        k += 1
        left = F.prod(_segre_value_raw(hs, P_POINT, X, Y) for X, Y in ((R1, R2), (R2, R3), (R3, R1)))
        right = _segre_value_raw(hs, R1, R2, R3)
        if not F.in_subfield(F.div(left, right)):
            failures.append({"kind": "ratio_outside_subfield", "points": [R1, R2, R3]})
            break
        edges = [F.in_subfield(_segre_value_raw(hs, P_POINT, X, Y)) for X, Y in ((R1, R2), (R2, R3), (R3, R1))]
        if all(edges):
            implied += 1
            if not F.in_subfield(right):
                failures.append({"kind": "perspective_not_inherited", "points": [R1, R2, R3]})
                break
    return _report("cor:justonepoint", q, failures, (), {"triples": k, "all_edges_perspective": implied},
                   "sampled", F)


# ---------------------------------------------------------------------------
# the correspondence F_ell
# ---------------------------------------------------------------------------

def recover_f(hs: HermitianSpace, mapping: dict, omega: int | None = None) -> dict:
    """t -> f(t) read off from F_ell images (1, f+t, (f-t)w, c)."""
    F = hs.F
    omega = F.omega if omega is None else omega
    half = F.inv(2)
    out = {}
    for Y, R in mapping.items():
        if Y == P_POINT:
            continue
        y2 = F.div(R[2], omega)
        f = F.mul(half, F.add(R[1], y2))
        t = F.mul(half, F.sub(R[1], y2))
        out[t] = f
        if t != hs.line_parameter(Y):
            raise ValueError(f"image of {Y} has parameter {t}, expected {hs.line_parameter(Y)}")
    return out


def check_bijection(q: int) -> Report:
    """F_ell is a bijection on every admissible S_{alpha,beta} and on the Veronesean,
    and the recovered f has f(0) = 0 and matches alpha t + beta t^q."""
    hs = space_for_q(q)
    F = hs.F
    failures = []
    counts = dict(sets=0, bijective=0, f_zero=0, f_matches=0)
    targets = [("veronesean", veronesean(F), None)]
    for params in _all_params(F):
        if family_admissible(F, params.alpha, params.beta):
            targets.append(((params.alpha, params.beta), s_alpha_beta(F, params), params))
    for name, S, params in targets:
        counts["sets"] += 1
        try:
            mp = hs.f_ell_map(S)
        except CorrespondenceError as exc:
            failures.append({"kind": "correspondence", "set": name, "point": exc.witness})
            continue
        counts["bijective"] += 1
        if params is None:
            zero_image = mp[hs.line_point(0)]
            counts["f_zero"] += zero_image == Q_POINT
            continue
        f = recover_f(hs, mp, params.omega)
        counts["f_zero"] += f.get(0) == 0
        if all(f[t] == f_map(F, params, t) for t in range(F.order)):
            counts["f_matches"] += 1
        else:
            failures.append({"kind": "f_mismatch", "set": name})
    if counts["f_zero"] != counts["sets"]:
        failures.append({"kind": "f_zero", "count": counts["f_zero"]})
    return _report("lemma:bijection", q, failures[:1], (), counts, F=F)


def check_ct_all(q: int) -> Report:
    hs = space_for_q(q)
    F = hs.F
    total = {"pairs": 0, "passed": 0, "all_perspective": 0}
    for params in _all_params(F):
        r = check_ct_lemma(hs, params.alpha, params.beta, params.omega)
        total["pairs"] += 1
        total["passed"] += r.passed
        total["all_perspective"] += r.counts["all_perspective"]
        if not r.passed:
            return _report("lemma:ct", q, [dict(r.witnesses[0], alpha=params.alpha, beta=params.beta)],
                           (), total, F=F)
    return _report("lemma:ct", q, [], (), total, F=F)


def check_flinear_all(q: int, seed: int = 0) -> Report:
    """Converse over every (alpha, beta); forward on seeded non-linear tables
    and, when q is not prime, on t -> t^p."""
    hs = space_for_q(q)
    F = hs.F
    counts = dict(linear_tables=0, converse_pass=0, nonlinear_tables=0, nonlinear_detected=0)
    for params in _all_params(F):
        r = check_flinear_equivalence(hs, params, "converse")
        counts["linear_tables"] += 1
        counts["converse_pass"] += r.passed
        if not r.passed:
            return _report("lemma:flinear", q, [r.witnesses[0]], (), counts, F=F)
    rng = random.Random(seed)
    tables = []
    if F.e > 1:
        tables.append([F.frob_p(t, 1) for t in range(F.order)])
    for _ in range(5):
        tables.append([0] + [rng.randrange(F.order) for _ in range(F.order - 1)])
    info = []
    for tb in tables:
        r = check_flinear_equivalence(hs, tb, "forward")
        counts["nonlinear_tables"] += 1
        if not r.passed:
            return _report("lemma:flinear", q, [r.witnesses[0]], (), counts, F=F)
        if not r.counts["all_coplanar"]:
            counts["nonlinear_detected"] += 1
            if not info:
                info = [w for w in r.witnesses if w["kind"] == "non_coplanar_subline"][:1]
    return _report("lemma:flinear", q, [], info, counts, "exhaustive+seeded", F)


# ---------------------------------------------------------------------------
# elliptic quadric and the two remarks
# ---------------------------------------------------------------------------

def check_elliptic(q: int) -> Report:
    hs = space_for_q(q)
    F = hs.F
    EP = elliptic_quadric_with_p(F)
    failures, info = [], []
    counts = {"size": len(EP), "q_mod_4": q % 4}
    if q % 4 == 3:
        half = F.inv(2)
        roots = [x for x in range(F.order) if F.add(F.sub(F.mul(x, x), x), half) == 0]
        good = [x for x in roots if F.trace(x) == 1 and F.mul(2, F.norm(x)) == 1]
        counts["roots"] = len(roots)
        if not good:
            failures.append({"kind": "no_parameter_x", "roots": roots})
        else:
            x = good[0]
            images = {(F.trace(F.mul(a, x)), F.trace(F.mul(F.frob(a), x))) for a in range(F.order)}
            counts["psi_image"] = len(images)
            if len(images) != q * q:
                failures.append({"kind": "psi_not_surjective", "x": x, "image_size": len(images)})
            if standard_form(F, x) != EP:
                failures.append({"kind": "not_standard_form", "x": x})
            info.append({"kind": "parameter_x", "x": x})
        cls = is_classical(hs, EP)
        counts["classical"] = int(cls)
        if not cls:
            failures.append({"kind": "not_classical", "points": list(EP)})
    else:
        sub = F.subfield()
        hit = next(((a, b) for a in sub for b in sub if (a or b) and F.add(F.mul(a, a), F.mul(b, b)) == 0), None)
        if hit is None:
            failures.append({"kind": "no_obstruction", "size": len(EP)})
        else:
            R = (1, hit[0], hit[1], 0)
            ok = R in EP and hs.h(R, Q_POINT) == 0
            counts["obstruction_collinear_with_Q"] = int(ok)
            info.append({"kind": "collinear_pair", "points": [R, Q_POINT]})
            if not ok:
                failures.append({"kind": "obstruction_invalid", "point": R})
        counts["special"] = int(check_special_set(hs, EP).passed)
    return _report("lemma:elliptic", q, failures, info, counts, F=F)


def check_nonclassical_remark(q: int) -> Report:
    hs = space_for_q(q)
    F = hs.F
    params = find_nonclassical_params(F)
    S = s_alpha_beta(F, params)
    failures, info = [], [{"kind": "parameters", "alpha": params.alpha, "beta": params.beta,
                           "omega": params.omega}]
    nonpersp = [R for R in S if R not in (P_POINT, Q_POINT)
                and not (hs.h(Q_POINT, R) and segre(hs, P_POINT, Q_POINT, R).in_subfield)]
    if nonpersp:
        failures.append({"kind": "PQR_not_perspective", "point": nonpersp[0]})
    special = check_special_set(hs, S)
    deg = [w for w in special.witnesses if w["kind"] == "degenerate_triple"]
    if special.passed or not deg:
        failures.append({"kind": "unexpectedly_special", "alpha": params.alpha, "beta": params.beta})
    else:
        info.append(deg[0])
    cls = is_classical(hs, S)
    if cls:
        failures.append({"kind": "classical", "alpha": params.alpha, "beta": params.beta})
    counts = {"size": len(S), "perspective_PQR": len(S) - 2 - len(nonpersp),
              "degenerate_triples": special.counts["degenerate_triples"], "classical": int(cls)}
    return _report("remark:nonclassical", q, failures, info, counts, F=F)


def check_coplanar_remark(q: int) -> Report:
    """Coplanar fourth point (1,2,2,4): the perspective pool can exceed the
    noncoplanar bound by a factor of order q."""
    from .search import _perspective_mask

    hs = space_for_q(q)
    F = hs.F
    X = hs.surface_array
    Q3 = (1, F.const(2), F.const(2), F.const(4))
    failures = []
    if not hs.is_isotropic(Q3) or rank(F, [P_POINT, Q_POINT, S_POINT, Q3]) != 3:
        failures.append({"kind": "bad_fourth_point", "point": Q3})
        return _report("remark:coplanar", q, failures, F=F)
    m = np.ones(len(X), dtype=bool)
    for Qi in (Q_POINT, S_POINT, Q3):
        m &= _perspective_mask(hs, X, P_POINT, Qi)
    pool = {tuple(map(int, r)) for r in X[m]} - {P_POINT, Q_POINT, S_POINT, Q3}
    fam = {pt for pt, _, _ in coplanar_family(F)}
    bound = q * q * (q - 6)
    counts = {"pool": len(pool), "lower_bound": bound, "family_in_pool": len(pool & fam),
              "family": len(fam)}
    if len(pool) < bound:
        failures.append({"kind": "pool_below_bound", "size": len(pool), "point": Q3})
    return _report("remark:coplanar", q, failures, (), counts, F=F)


def special_set_consistency(q: int = 3, seed: int = 0, random_sets: int = 200) -> Report:
    """The two characterizations agree on the test corpus of sets."""
    hs = space_for_q(q)
    F = hs.F
    corpus = [("veronesean", veronesean(F)), ("elliptic+P", elliptic_quadric_with_p(F)),
              ("elliptic", elliptic_quadric(F))]
    for k in range(1, F.n):
        corpus.append((f"elliptic+P^frob{k}", apply_field_automorphism(F, elliptic_quadric_with_p(F), k)))
    for x in admissible_x(F):
        corpus.append((f"standard_form:{x}", standard_form(F, x)))
    for params in _all_params(F):
        corpus.append((f"S:{params.alpha},{params.beta}", s_alpha_beta(F, params)))
    rng = random.Random(seed)
    surf = hs.surface.points
    for i in range(random_sets):
        corpus.append((f"random:{i}", PointSet(rng.sample(surf, q * q + 1))))
    failures = []
    counts = dict(sets=0, sized_sets=0, agree=0, special=0)
    for name, S in corpus:
        r = check_special_set(hs, S)
        counts["sets"] += 1
        if len(S) != q * q + 1:
            continue
        counts["sized_sets"] += 1
        counts["agree"] += r.counts["characterizations_agree"]
        counts["special"] += r.passed
        if not r.counts["characterizations_agree"] and not failures:
            failures.append({"kind": "disagreement", "set": name, "points": list(S)})
    return _report("special_set_consistency", q, failures, (), counts, f"exhaustive+seeded:{seed}", F)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _search_statement(q: int, seed: int = 0) -> Report:
    from .search import SearchConfig, search_special_sets

    return search_special_sets(SearchConfig(q=q))[1]


STATEMENTS: dict[str, Callable[..., Report]] = {
    "lemma:degplane": lambda q, seed=0: check_degplane(q, seed),
    "lemma:inperspective": lambda q, seed=0: check_inperspective(q, seed),
    "lemma:stabPQS": lambda q, seed=0: check_stabilizer(q, seed),
    "lemma:transitive": lambda q, seed=0: check_transitive(q, seed),
    "lemma:classical": lambda q, seed=0: check_classical_lemma(q),
    "lemma:elliptic": lambda q, seed=0: check_elliptic(q),
    "lemma:bijection": lambda q, seed=0: check_bijection(q),
    "lemma:flinear": lambda q, seed=0: check_flinear_all(q, seed),
    "lemma:ct": lambda q, seed=0: check_ct_all(q),
    "lemma:PR1R2": lambda q, seed=0: check_PR1R2(q),
    "lemma:trace_R1R2R3": lambda q, seed=0: check_trace_R1R2R3(q),
    "cor:justonepoint": lambda q, seed=0: check_justonepoint(q, seed),
    "main1": lambda q, seed=0: check_main1(q),
    "main2": lambda q, seed=0: check_main2(q),
    "counts": lambda q, seed=0: check_counts(q),
    "x_solutions": lambda q, seed=0: check_x_solutions(q),
    "remark:nonclassical": lambda q, seed=0: check_nonclassical_remark(q),
    "remark:coplanar": lambda q, seed=0: check_coplanar_remark(q),
    "special_set_consistency": lambda q, seed=0: special_set_consistency(q, seed),
    "search:special_set": _search_statement,
}


def run_statement(statement_id: str, q: int, seed: int = 0) -> Report:
    try:
        fn = STATEMENTS[statement_id]
    except KeyError:
        raise KeyError(f"unknown statement {statement_id!r}; known: {', '.join(sorted(STATEMENTS))}") from None
    return fn(q, seed)
