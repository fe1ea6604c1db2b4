# %% [markdown]
# # Brute-force censuses and density scans
#
# Exhaustive enumeration is the oracle for every formula. Above the
# enumeration ceiling the scans switch to seeded Monte Carlo with Wilson
# intervals.

# %%
from fractions import Fraction

from polycoprime.census import (
    Graph, count_graph_coprime, count_setwise_coprime, density_scan_matrices,
    density_scan_polys, graph_labeling_sum, wj_bruteforce, wj_montecarlo,
)

print("setwise coprime, degrees (2,3,3), q=2:", count_setwise_coprime(2, (2, 3, 3)).probability)
g = Graph.path(4)
print("path graph census:", count_graph_coprime(3, (2, 1, 2, 1), g).probability,
      " labeling sum:", graph_labeling_sum(3, (2, 1, 2, 1), g))

# %%
print("W_1(3), m=2, q=3 exhaustive:", wj_bruteforce(2, 3, 3, 1).probability)
mc = wj_montecarlo(2, 3, 3, 1, samples=200_000, seed=11)
print("Monte Carlo:", float(mc.probability), "99% CI", (float(mc.ci_low), float(mc.ci_high)))

# %%
for p in density_scan_polys(2, 2, [3, 7, 15, 31, 63]).points:
    print(f"pairs of polynomials, n={p.n:>2}: {float(p.fraction):.5f}")
for p in density_scan_matrices(2, 2, 2, [1, 3, 7, 15, 31], samples=10**6).points:
    print(f"2x2 matrix pairs, n={p.n:>2}: {float(p.fraction):.5f} ({p.mode})")
print("limit 21/32 =", float(Fraction(21, 32)))
