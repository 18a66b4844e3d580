# %% [markdown]
# # Fermat curves x^n + y^n + z^n
#
# From degree 4 on, H^1(X, O(1)) is nonzero and the cone picks up negative
# K-theory. The closed forms come from Serre duality; the Čech oracle
# recomputes them from scratch.

# %%
from kcone import cech_dimension, h_line_bundle, plane_curve, report
from kcone.ktheory import Assembler

curves = {n: plane_curve(f"x^{n} + y^{n} + z^{n}") for n in (3, 4, 5)}
for n, c in curves.items():
    print(n, "genus", c.genus, "h1(O(t)):", [h_line_bundle(c, 1, t).dimension for t in range(1, 5)])

# %%
quintic = curves[5]
print([(m, cech_dimension(quintic, 1, m), h_line_bundle(quintic, 1, m).dimension) for m in range(-2, 4)])

# %% [markdown]
# K_1^(2) in degree 1 equals d + g - 1 = n(n-1)/2; the assembler gets there
# from 1-forms and their torsion.

# %%
for n, c in curves.items():
    print(n, Assembler(c).k12_cell(1), n * (n - 1) // 2)

# %%
rep = report(curves[4], (-2, 2), "symbolic")
for n, dim in rep.totals().items():
    print(f"quartic K_{n} extra: {dim}")
