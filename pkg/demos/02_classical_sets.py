# %% [markdown]
# # Classical special sets
#
# The Veronesean-type set V = {(1, x, x^q, x^(q+1))} plus P has q^2 + 1 points,
# no two collinear, and no triple spanning a degenerate plane.

# %%
from specialsets.constructions import admissible_x, standard_form, veronesean
from specialsets.field import field_for_q
from specialsets.group import classical_witness, stabilizer_PQS, stabilizer_order
from specialsets.hermitian import space_for_q
from specialsets.verify import check_special_set

q = 3
hs = space_for_q(q)
F = hs.F
V = veronesean(F)
r = check_special_set(hs, V)
print(r.verdict, r.counts)

# %% [markdown]
# ## The standard forms
#
# Every set through P, Q and S in the orbit of V is one of the sets
# standard_form(x) for x + x^q = 2 x^(q+1).  There are q + 1 such x.

# %%
xs = admissible_x(F)
print("admissible x:", [F.format(x) for x in xs])
forms = {x: standard_form(F, x).as_set() for x in xs}
print("distinct sets:", len(set(forms.values())))
print("V is standard_form(0):", forms[0] == V.as_set())

# %% [markdown]
# x and 1 - x give the same set, since swapping the middle two coordinates
# exchanges them.

# %%
for x in xs:
    y = F.sub(1, x)
    print(F.format(x), "<->", F.format(y), forms[x] == forms.get(y))

# %% [markdown]
# ## The stabilizer of P, Q, S
#
# Collineations are a matrix plus a Frobenius power.

# %%
D = stabilizer_PQS(F)
print("|D| =", len(D), "closed form:", stabilizer_order(q))
print("one element:", D[1].to_json())

# %% [markdown]
# ## Recognising a classical set in disguise
#
# Move V by some collineation in the unitary group, then ask for a witness.

# %%
import numpy as np

from specialsets.group import map_triple_to_standard
from specialsets.invariants import segre

pts = [tuple(X) for X in hs.surface_array.tolist()]
rng = np.random.default_rng(7)
while True:
    A, B, C = (pts[i] for i in rng.choice(len(pts), 3, replace=False))
    if hs.h(A, B) and hs.h(B, C) and hs.h(C, A) and segre(hs, A, B, C).in_subfield:
        break
g = map_triple_to_standard(hs, A, B, C).inverse()
moved = g.apply_all(V)
print("moved copy passes through", A, B, C, ":", all(X in moved.as_set() for X in (A, B, C)))
print("still special:", check_special_set(hs, moved).passed)
w = classical_witness(hs, moved)
print("witness: triple", w["triple"], "lands on standard form x =", F.format(w["x"]),
      "with Frobenius power", w["frob_power"])
