# %% [markdown]
# # Closed forms in exact arithmetic
#
# Probabilities are rationals in t = 1/q. Asymptotic expansions come back as
# coefficient dictionaries, and infinite products as truncations with a
# certified tail bound.

# %%
from fractions import Fraction

from polycoprime.formulas import (
    conclusion_reference, mutual_density_truncated, pairwise_density_truncated,
    pairwise_uniform_asymptotic, setwise_coprime_prob, wj_exact_pair,
)

print("P(three polynomials setwise coprime), q=2:", setwise_coprime_prob(3, 2))
for n1 in (0, 3):
    a = pairwise_uniform_asymptotic(3, n1)
    print(f"pairwise coprime, N=3, N1={n1}: 1 + ({a.c1}) t + ({a.c2}) t^2 + O(t^3)")

# %% [markdown]
# A uniform model over fixed determinant degrees and the natural density
# give different answers for two 2x2 matrices.

# %%
for q in (2, 3, 5):
    u, d = conclusion_reference(q)
    print(f"q={q}: uniform {u} ({float(u):.4f}) vs density {d} ({float(d):.4f})")

# %%
tp = mutual_density_truncated(2, 2, 2, 12)
print("truncated density:", tp.decimal(12), " tail bound", float(tp.tail_bound))
print("distance to 21/32 <=", float(tp.distance(Fraction(21, 32))))
print("pairwise, J=20:", pairwise_density_truncated(2, 2, 20).decimal(10))
print("W_j(2) for m=2 over GF(4):", wj_exact_pair(2, 2, 2))
