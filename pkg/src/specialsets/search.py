"""Backtracking search for special sets, and the constrained-pool engine for
sets with perspective triangles on three fixed edges.

Special-set search fixes the noncollinear pair (P, Q) (the collineation group
is transitive on such pairs) and grows the set in increasing surface order.
Candidates are Python-int bitsets over the enumerated surface; for each pair
(x, z) a precomputed mask holds every w that is noncollinear with both and
spans a nondegenerate plane with them, so adding a point costs one AND per
point already chosen.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .field import FieldError, field_for_q, prime_power
from .group import is_classical
from .hermitian import P_POINT, Q_POINT, S_POINT, HermitianSpace, space_for_q
from .projective import PointSet, rank

MODES = ("special_set", "main1_constrained")


@dataclass
class SearchConfig:
    q: int = 3
    mode: str = "special_set"
    symmetry_breaking: bool = True
    max_solutions: int | None = None
    thread_count: int = 1
    checkpoint_path: str | None = None
    checkpoint_every: int = 50_000
    prune: bool = True
    max_depth: int | None = None

    def validate(self) -> "SearchConfig":
        p, _ = prime_power(self.q)
        if p == 2:
            raise FieldError("q must be odd")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.q > 7:
            raise ValueError("exhaustive search modes support q <= 7")
        if self.thread_count < 1:
            raise ValueError("thread_count must be positive")
        if self.thread_count > 1 and self.checkpoint_path:
            raise ValueError("checkpointing is only supported single-threaded")
        return self


# ---------------------------------------------------------------------------
# compatibility masks
# ---------------------------------------------------------------------------

class _Masks:
    """good[x][z]: bitset of w with h(x,w), h(z,w) != 0 and Tr[x,z,w] != 0."""

    def __init__(self, hs: HermitianSpace):
        self.hs = hs
        self.F = hs.F
        self.G = hs.surface_gram
        self.n = len(self.G)
        self._rows: dict[int, list[int]] = {}

    def row(self, x: int) -> list[int]:
        r = self._rows.get(x)
        if r is None:
            F, G = self.F, self.G
            gx = G[x]
            v = F.vmul(F.vmul(gx[:, None], G), G[:, x][None, :])
            ok = (gx[:, None] != 0) & (G != 0) & (gx[None, :] != 0) & (F.TRACE[v] != 0)
            packed = np.packbits(ok, axis=1, bitorder="little")
            r = [int.from_bytes(b.tobytes(), "little") for b in packed]
            self._rows[x] = r
        return r

    def ok_triple(self, x: int, y: int, z: int) -> bool:
        F, G = self.F, self.G
        if not (G[x, y] and G[y, z] and G[z, x]):
            return False
        v = F.mul(F.mul(int(G[x, y]), int(G[y, z])), int(G[z, x]))
        return F.trace(v) != 0


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _DFS:
    def __init__(self, masks: _Masks, target: int, max_solutions=None, progress=None,
                 checkpoint=None, checkpoint_every=50_000, resume_path=None):
        self.m = masks
        self.target = target
        self.max_solutions = max_solutions
        self.solutions: list[tuple[int, ...]] = []
        self.nodes = 0
        self.progress = progress
        self.checkpoint = checkpoint
        self.checkpoint_every = checkpoint_every
        self.resume = list(resume_path or [])
        self.base_len = 0
        self.done = False

    def run(self, chosen: list[int], cand: int):
        self.base_len = len(chosen)
        self._extend(chosen, cand, resuming=bool(self.resume))

    def _extend(self, chosen, cand, resuming):
        if self.done:
            return
        self.nodes += 1
        if self.checkpoint and self.nodes % self.checkpoint_every == 0:
            self.checkpoint(self, chosen[self.base_len:])
        if len(chosen) == self.target:
            self.solutions.append(tuple(chosen))
            if self.progress:
                self.progress({"event": "solution", "points": list(chosen)})
            if self.max_solutions and len(self.solutions) >= self.max_solutions:
                self.done = True
            return
        need = self.target - len(chosen)
        depth = len(chosen) - self.base_len
        floor = self.resume[depth] if resuming and depth < len(self.resume) else None
        while cand:
            if _popcount(cand) < need:
                return
            low = cand & -cand
            z = low.bit_length() - 1
            cand ^= low
            if floor is not None and z < floor:
                continue
            still = floor is not None and z == floor
            floor = None if not still else floor
            new = cand
            for x in chosen:
                new &= self.m.row(x)[z]
                if not new and need > 1:
                    break
            self._extend(chosen + [z], new, still)
            if self.done:
                return


def _exhaustive_leaves(masks: _Masks, base: list[int], target: int) -> list[tuple[int, ...]]:
    """Unpruned reference: every increasing completion checked at the leaf."""
    n = masks.n
    rest = [i for i in range(n) if i not in base]
    out = []
    for extra in combinations(rest, target - len(base)):
        pts = list(base) + list(extra)
        if all(masks.ok_triple(a, b, c) for a, b, c in combinations(pts, 3)):
            out.append(tuple(pts))
    return out


def _subtree(args):
    q, base, z, cand, target = args
    masks = _Masks(space_for_q(q))
    dfs = _DFS(masks, target)
    new = cand
    for x in base:
        new &= masks.row(x)[z]
    dfs.run(base + [z], new)
    return dfs.solutions, dfs.nodes


def _checkpoint_key(cfg: SearchConfig) -> dict:
    return {"q": cfg.q, "mode": cfg.mode, "symmetry_breaking": cfg.symmetry_breaking,
            "max_depth": cfg.max_depth}


def _save_checkpoint(path, cfg, dfs, path_stack, complete=False):
    data = {
        **_checkpoint_key(cfg),
        "complete": complete,
        "path": path_stack,
        "nodes": dfs.nodes,
        "solutions": [list(s) for s in dfs.solutions],
    }
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh)
    os.replace(tmp, path)


def search_special_sets(cfg: SearchConfig, progress: Callable[[dict], None] | None = None):
    """Return ``(sets, report)`` for every special set through P and Q."""
    from .verify import Report

    cfg.validate()
    hs = space_for_q(cfg.q)
    F = hs.F
    masks = _Masks(hs)
    surf = hs.surface
    target = cfg.max_depth or (cfg.q ** 2 + 1)
    full = (1 << masks.n) - 1

    if cfg.symmetry_breaking:
        iP, iQ = surf.index(P_POINT), surf.index(Q_POINT)
        base = sorted([iP, iQ])
        cand = masks.row(iP)[iQ]
    else:
        base, cand = [], full

    if not cfg.prune:
        raw = _exhaustive_leaves(masks, base, target)
        sols = sorted(tuple(sorted(s)) for s in raw)
        nodes = len(raw)
    elif cfg.thread_count > 1 and base:
        jobs = []
        c = cand
        while c:
            low = c & -c
            z = low.bit_length() - 1
            c ^= low
            jobs.append((cfg.q, base, z, c, target))
        sols, nodes = [], 0
        with ProcessPoolExecutor(max_workers=cfg.thread_count) as ex:
            for s, n in ex.map(_subtree, jobs):
                sols.extend(s)
                nodes += n
        sols = sorted(tuple(sorted(s)) for s in sols)
        if cfg.max_solutions:
            sols = sols[: cfg.max_solutions]
    else:
        resume, prior, prior_nodes, finished = None, [], 0, False
        if cfg.checkpoint_path and os.path.exists(cfg.checkpoint_path):
            with open(cfg.checkpoint_path) as fh:
                state = json.load(fh)
            if {k: state.get(k) for k in _checkpoint_key(cfg)} != _checkpoint_key(cfg):
                raise ValueError("checkpoint belongs to a different search")
            finished = bool(state.get("complete"))
            resume = state["path"]
            prior = [tuple(s) for s in state["solutions"]]
            prior_nodes = state["nodes"]
        saver = None
        if cfg.checkpoint_path:
            def saver(dfs, stack):
                _save_checkpoint(cfg.checkpoint_path, cfg, dfs, stack)
                if progress:
                    progress({"event": "checkpoint", "nodes": dfs.nodes, "path": stack})
        dfs = _DFS(masks, target, cfg.max_solutions, progress, saver, cfg.checkpoint_every, resume)
        dfs.solutions = list(prior)
        dfs.nodes = prior_nodes
        if not finished:
            dfs.run(list(base), cand)
        sols = [tuple(sorted(s)) for s in dfs.solutions]
        nodes = dfs.nodes
        if cfg.checkpoint_path:
            _save_checkpoint(cfg.checkpoint_path, cfg, dfs, None, complete=True)

    sets = [PointSet(surf[i] for i in s) for s in sols]
    complete = target == cfg.q ** 2 + 1
    classical = [is_classical(hs, S) for S in sets] if complete else []
    counts = {
        "solutions": len(sets),
        "nodes": nodes,
        "candidates_after_base": _popcount(cand),
    }
    witnesses = []
    if complete:
        counts["classical"] = sum(classical)
        counts["nonclassical"] = len(sets) - sum(classical)
        witnesses = [{"kind": "nonclassical_special_set", "points": list(S)}
                     for S, c in zip(sets, classical) if not c]
    verdict = "pass" if all(classical) else "fail"
    report = Report(
        "search:special_set", cfg.q, verdict, witnesses, counts,
        coverage="exhaustive" if cfg.symmetry_breaking else "exhaustive-unreduced",
        field=F,
    )
    return sets, report


def solutions_json(F, sets) -> str:
    return json.dumps([S.to_json(F) for S in sets], separators=(",", ":"))


# ---------------------------------------------------------------------------
# sets with all triangles P Q_i R in perspective
# ---------------------------------------------------------------------------

def _decompose(F, a):
    """a = a0 + a1 w with w the least trace-zero unit."""
    w = F.trace_zero_unit
    half = F.inv(2)
    a0 = F.mul(half, F.trace(a))
    a1 = F.div(F.sub(a, F.frob(a)), F.mul(2, w))
    return a0, a1


def _perspective_mask(hs, X, A, B):
    """Rows of X that are noncollinear with A and B and have [A, B, R] in GF(q)."""
    F = hs.F
    hab = hs.h(A, B)
    hbx = hs.hmatrix(np.array([B]), X)[0]
    hxa = hs.hmatrix(X, np.array([A]))[:, 0]
    v = F.vmul(F.vmul(hab, hbx), hxa)
    return (hbx != 0) & (hxa != 0) & F.IN_SUB[v]


def search_main1_sets(cfg: SearchConfig | int):
    """For every admissible fourth point Q3, the full pool of points R with
    P Q_i R in perspective for i = 1, 2, 3; checks the size bound and
    classicality of every maximum-size completion."""
    from .verify import Report

    if isinstance(cfg, int):
        cfg = SearchConfig(q=cfg, mode="main1_constrained")
    cfg.validate()
    q = cfg.q
    hs = space_for_q(q)
    F = hs.F
    X = hs.surface_array
    pts = hs.surface.points
    P, Q1, Q2 = P_POINT, Q_POINT, S_POINT
    fixed = {P, Q1, Q2}
    bound = q * q + 1

    base = _perspective_mask(hs, X, P, Q1) & _perspective_mask(hs, X, P, Q2)
    base &= np.array([X_ not in fixed for X_ in pts])
    base_idx = np.flatnonzero(base)
    w = F.trace_zero_unit
    w2 = F.mul(w, w)

    counts = dict(q3_candidates=0, coplanar_excluded=0, equality=0, equality_noncollinear=0,
                  classical=0, elliptic_branch=0, elliptic_equality=0, max_pool=0,
                  empty_pool=0, pool_total=0, nonsquare_disc=0)
    witnesses = []
    failures = []
    for i in base_idx:
        Q3 = pts[i]
        if rank(F, [P, Q1, Q2, Q3]) < 4:
            counts["coplanar_excluded"] += 1
            continue
        counts["q3_candidates"] += 1
        m = base & _perspective_mask(hs, X, P, Q3)
        m[i] = False
        pool = [pts[j] for j in np.flatnonzero(m)]
        T = [P, Q1, Q2, Q3] + pool
        counts["pool_total"] += len(pool)
        counts["max_pool"] = max(counts["max_pool"], len(T))
        if not pool:
            counts["empty_pool"] += 1
        if len(T) > bound:
            failures.append({"kind": "bound_exceeded", "Q3": Q3, "size": len(T)})
            continue

        _, a, b, _c = Q3
        a0, a1 = _decompose(F, a)
        b0, _ = _decompose(F, b)
        elliptic = a1 == 0
        disc_nonsquare = None
        if elliptic:
            counts["elliptic_branch"] += 1
        else:
            lam = F.div(F.sub(b0, a0), a1)
            disc = F.sub(F.mul(F.const(4), w2), F.mul(lam, lam))
            disc_nonsquare = not F.is_square_in_subfield(disc)
            counts["nonsquare_disc"] += int(disc_nonsquare)

        if len(T) < bound:
            continue
        counts["equality"] += 1
        Ta = np.array(T)
        G = hs.hmatrix(Ta, Ta)
        np.fill_diagonal(G, 1)
        if (G == 0).any():
            continue
        counts["equality_noncollinear"] += 1
        if is_classical(hs, T):
            counts["classical"] += 1
        else:
            failures.append({"kind": "nonclassical_maximum", "Q3": Q3, "points": T})
        if elliptic:
            counts["elliptic_equality"] += 1
            rational = all(F.in_subfield(c) for R in T if R != P for c in R)
            if q % 4 != 3 or not rational:
                failures.append({"kind": "elliptic_branch_mismatch", "Q3": Q3})
        elif not disc_nonsquare:
            failures.append({"kind": "square_discriminant_at_equality", "Q3": Q3})

    if q % 4 == 1:
        sub = F.subfield()
        for a in sub:
            hit = next((b for b in sub if (a or b) and F.add(F.mul(a, a), F.mul(b, b)) == 0), None)
            if hit is not None:
                R = (1, a, hit, 0)
                witnesses.append({"kind": "elliptic_collinear_with_Q1", "point": R,
                                  "collinear": hs.h(R, Q1) == 0})
                break

    verdict = "fail" if failures else "pass"
    return Report("main1", q, verdict, failures + witnesses if failures else witnesses, counts,
                  coverage="exhaustive", field=F)
