# %% [markdown]
# # Polynomials over GF(q)
#
# Monic gcd and lcm, square-freeness, irreducible counts, and the
# index bijection that orders F[z] for natural-density scans.

# %%
from polycoprime.gf import build_field
from polycoprime.polyring import (
    count_irreducibles, enumerate_monic, factor_distinct, gcd_monic, index_to_poly,
    is_irreducible, is_squarefree, lcm_monic, poly,
)

F = build_field(2)
z = poly(F, [0, 1])
f, g = z * z, z * z + z
print("gcd", gcd_monic(f, g), " lcm", lcm_monic(f, g))
print("z^2+1 square-free?", is_squarefree(z * z + 1))

# %% [markdown]
# The Möbius count of monic irreducibles agrees with a sieve.

# %%
for q in (2, 3, 4):
    row = []
    for j in range(1, 6):
        sieve = sum(1 for h in enumerate_monic(q, j) if is_irreducible(h))
        row.append((count_irreducibles(j, q), sieve))
    print(f"q={q}", row)

# %%
print("factors of z^3+z:", factor_distinct(z**3 + z))
print("first indices over GF(3):", [index_to_poly(k, 3) for k in range(10)])
