# %% [markdown]
# # Polynomial matrices and mutual left coprimeness
#
# A tuple of nonsingular m x m matrices is mutually left coprime when each
# one is left coprime with the least common right multiple of the others.
# The same property holds exactly when a staircase block matrix is left
# prime. Both routes are implemented; here they are compared.

# %%
import random

from polycoprime.gf import build_field
from polycoprime.polymatrix import (
    PolyMatrix, build_block_chain, det_poly, hermite_form, is_mutually_left_coprime_block,
    is_mutually_left_coprime_direct, lcrm,
)

F = build_field(2)
rng = random.Random(1)


def random_nonsingular(m=2):
    while True:
        D = PolyMatrix.from_coeffs(F, [[[rng.randrange(2) for _ in range(2)] for _ in range(m)]
                                       for _ in range(m)])
        if not det_poly(D).is_zero():
            return D


A, B = random_nonsingular(), random_nonsingular()
M, X, Y = lcrm(A, B)
print("A =", A, "\nB =", B, "\nlcrm =", M)
print("A@X == B@Y:", A @ X == B @ Y)

# %%
H, U = hermite_form(A, "column")
print("column Hermite form of A:", H, " det U =", det_poly(U))

# %%
agree = 0
for _ in range(100):
    Ds = [random_nonsingular() for _ in range(3)]
    agree += is_mutually_left_coprime_block(Ds) == is_mutually_left_coprime_direct(Ds)
print("block and direct criteria agree on", agree, "of 100 random triples")
print("chain shape for N=3, m=2:", build_block_chain(Ds).assembled.shape)
