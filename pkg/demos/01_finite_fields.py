# %% [markdown]
# # Finite fields by integer code
#
# Elements of GF(p^k) are integers in [0, q). The base-p digits of a code are
# the coefficients of a residue modulo the field's irreducible modulus.

# %%
from polycoprime.gf import build_field, enumerate_elements

F4 = build_field(2, 2)
print(F4, "modulus (low degree first):", F4.modulus)
print("elements:", enumerate_elements(F4))

# %% [markdown]
# Tables are precomputed up to order 256, so arithmetic on codes is a lookup.

# %%
a = F4(2)  # the class of z
print("a*a =", a * a, "  a^3 =", a**3, "  1/a =", a.inverse())

# %%
F9 = build_field(3, 2)
unit_orders = {}
for x in range(1, 9):
    k = next(k for k in range(1, 9) if F9.pow(x, k) == 1)
    unit_orders[F9(x)] = k
print("multiplicative orders in GF(9):", unit_orders)
