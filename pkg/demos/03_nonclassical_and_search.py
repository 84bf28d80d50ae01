# %% [markdown]
# # A set that looks classical from P but is not special
#
# The sets S(alpha, beta) are built from a map on the totally isotropic line
# through P.  Each of their points R makes P, Q, R a perspective triple, yet
# for suitable alpha, beta some other triple spans a degenerate plane.

# %%
from specialsets.constructions import find_nonclassical_params, s_alpha_beta, veronesean
from specialsets.group import is_classical
from specialsets.hermitian import P_POINT, Q_POINT, space_for_q
from specialsets.invariants import segre
from specialsets.verify import check_special_set

for q in (3, 5, 7):
    hs = space_for_q(q)
    F = hs.F
    params = find_nonclassical_params(F)
    S = s_alpha_beta(F, params)
    persp = all(segre(hs, P_POINT, Q_POINT, R).in_subfield for R in S if R not in (P_POINT, Q_POINT))
    r = check_special_set(hs, S)
    bad = next(w for w in r.witnesses if w["kind"] == "degenerate_triple")
    print(f"q={q}: alpha={F.format(params.alpha)} beta={F.format(params.beta)} |S|={len(S)}")
    print(f"   every PQR perspective: {persp}; special: {r.passed}; classical: {is_classical(hs, S)}")
    print(f"   degenerate triple: {bad['points']}")

# %% [markdown]
# ## Exhaustive search at q = 3
#
# Depth-first search over surface points, with P and Q fixed and every new
# point required to keep all triples non-degenerate.  Candidates are kept as
# numpy bitsets so the pruning step is a single AND.

# %%
import time

from specialsets.search import SearchConfig, search_special_sets

t = time.perf_counter()
sets, report = search_special_sets(SearchConfig(q=3))
print(f"{len(sets)} special sets through P and Q in {time.perf_counter() - t:.2f}s")
print(report.counts)
F = space_for_q(3).F
print("V among them:", veronesean(F) in sets)

# %% [markdown]
# Pruning must not lose anything.  With a depth cap the partial sets of size 4
# can be enumerated with and without it, and the two lists match.

# %%
capped, rep = search_special_sets(SearchConfig(q=3, max_depth=4))
plain, rep2 = search_special_sets(SearchConfig(q=3, max_depth=4, prune=False))
print(len(capped), "partial sets with pruning,", len(plain), "without; identical:", capped == plain)
