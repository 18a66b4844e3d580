# %% [markdown]
# # Two skew lines in P^3
#
# R = Q[x1,x2,y1,y2]/(x_i y_j) is not a curve cone in our sense (it is not
# a domain), but its Kähler forms show torsion right at the vertex.

# %%
from kcone import FormsComplex, fixture, report

skew = fixture("skew_lines")
fc = FormsComplex(skew.quotient)
for j in (1, 2, 3, 4):
    print(f"tors Omega^{j}:", {t: fc.torsion(j, t).dimension for t in range(1, 7) if fc.torsion(j, t).dimension})

# %% [markdown]
# The 1-form torsion lives in degree 2 (the x_i dy_j) and gives four
# extra dimensions in weight 2 of K_2. The 2-form torsion has a second
# block in degree 3: y_k dx1^dx2 and x_k dy1^dy2 are nonzero and killed by
# every coordinate.

# %%
w = fc.element(2, 3, {((0, 1), (0, 0, 1, 0)): 1})  # y1 dx1^dx2
print("y1 dx1^dx2 nonzero:", bool(w))
print("killed by coordinates:", [not fc.multiply(2, 3, tuple(int(i == k) for i in range(4))).apply(w) for k in range(4)])

# %%
rep = report(skew, (2, 2), 0)
print(rep.cell(2, 2))
print([ (c.i, c.status) for c in rep.total_cells()])
