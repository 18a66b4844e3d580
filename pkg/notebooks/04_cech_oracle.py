# %% [markdown]
# # A truncated Čech complex as an oracle
#
# On the charts x_i != 0 a section of O(m) is f / x_J^E. Truncating the
# denominators at exponent E gives finite matrices; once three exponents in
# a row agree, the value is taken as h^q(O(m)).

# %%
from kcone import cech_oracle, h_line_bundle, plane_curve

cubic = plane_curve("x^3 + y^3 + z^3 + x*y*z")
for E in range(1, 5):
    print(E, cech_oracle(cubic, 1, 0, E))

# %%
rows = []
for m in range(-4, 5):
    rows.append((m, cech_oracle(cubic, 0, m, 6)[0], h_line_bundle(cubic, 0, m).dimension,
                 cech_oracle(cubic, 1, m, 6)[0], h_line_bundle(cubic, 1, m).dimension))
print(" m  h0 cech/closed   h1 cech/closed")
for m, a, b, c, d in rows:
    print(f"{m:>2}  {a:>4} / {b:<4}    {c:>4} / {d}")
