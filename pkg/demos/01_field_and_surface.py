# %% [markdown]
# # GF(9) and the Hermitian surface
#
# Field elements are integer labels.  The label of c0 + c1 i + ... is the
# base-p number with digits c0, c1, ...  so at q = 3 the label 4 is 1 + i.

# %%
import numpy as np

from specialsets.field import field_for_q
from specialsets.hermitian import P_POINT, Q_POINT, S_POINT, space_for_q, surface_size
from specialsets.invariants import segre

F = field_for_q(3)
print(F, "defining polynomial coefficients (low degree first):", F.params.irreducible)
print("generator:", F.format(F.generator))
for a in range(F.order):
    print(f"{a:2d} = {F.format(a):>5}   norm {F.norm(a)}   trace {F.trace(a)}   a^q = {F.format(F.frob(a))}")

# %% [markdown]
# The norm and trace land in GF(3), which sits inside GF(9) as labels 0, 1, 2.

# %%
print("subfield labels:", F.subfield())
print("omega (least element of norm -1):", F.format(F.omega))

# %% [markdown]
# ## Points of the surface
#
# The surface is cut out by x0 x3^q + x3 x0^q - x1^(q+1) - x2^(q+1) = 0.

# %%
hs = space_for_q(3)
pts = hs.surface_array
print(len(pts), "points; expected", surface_size(3))
print("first few:", pts[:5].tolist())

# %% [markdown]
# Each point is collinear on the surface with q^3 + q^2 others, spread over
# q + 1 totally isotropic lines.

# %%
G = hs.surface_gram
degrees = (G == 0).sum(axis=1) - 1
print("collinearity degrees:", np.unique(degrees))
print("lines through P:", len(hs.ti_lines_through(P_POINT)))

# %% [markdown]
# ## The triple invariant
#
# For three pairwise non-collinear points the product h(A,B) h(B,C) h(C,A)
# is defined up to a norm.  Whether it lies in GF(q), and whether its trace
# vanishes, does not depend on the chosen coordinates.

# %%
v = segre(hs, P_POINT, Q_POINT, S_POINT)
print("P, Q, S:", F.format(v.value), "in GF(q):", v.in_subfield, "trace zero:", v.trace_zero)

rng = np.random.default_rng(1)
tally = {"in GF(q)": 0, "trace zero": 0, "neither": 0}
hits = 0
while hits < 2000:
    i, j, k = rng.choice(len(pts), 3, replace=False)
    A, B, C = (tuple(pts[r].tolist()) for r in (i, j, k))
    if not (hs.h(A, B) and hs.h(B, C) and hs.h(C, A)):
        continue
    hits += 1
    s = segre(hs, A, B, C)
    tally["in GF(q)" if s.in_subfield else "trace zero" if s.trace_zero else "neither"] += 1
print("2000 random non-collinear triples:", tally)
