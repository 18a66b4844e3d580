# %% [markdown]
# # The cone over a conic
#
# R = Q[x,y,z]/(z^2 - xy) is the homogeneous coordinate ring of a smooth conic.
# Its extra K-theory over a field k of transcendence degree r has a clean
# closed form, and this script rebuilds it cell by cell.

# %%
from math import comb

from kcone import plane_curve, report

conic = plane_curve("z^2 - x*y")
print(conic.describe())

# %% [markdown]
# Graded pieces: dim R_t = 2t+1, the 1-forms have dimension 3 then 4t.

# %%
from kcone import FormsComplex

fc = FormsComplex(conic.quotient)
print([conic.quotient.dim(t) for t in range(8)])
print([fc.piece(1, t).dimension for t in range(1, 8)])

# %% [markdown]
# Assemble K_n for n = -2..8 with r left symbolic. Each total is a sum of
# binom(r, p) terms.

# %%
rep = report(conic, (-2, 8), "symbolic")
for n, dim in rep.totals().items():
    print(f"K_{n:>2} extra: {dim}")

# %%
for n in range(1, 9):
    for r in range(5):
        assert rep.totals()[n].evaluate(r) == sum(comb(r, n - 1 - 2 * j) for j in range(n) if n - 1 - 2 * j >= 0)
print("matches sum_j binom(r, n-1-2j) for r = 0..4")

# %% [markdown]
# Each weight of K_6 with the rule that produced it.

# %%
for cell in rep.cells:
    if cell.n == 6 and cell.t == "total":
        print(cell.i, cell.dim, cell.provenance, cell.status)
