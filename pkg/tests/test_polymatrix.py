import itertools
import random

import pytest

from polycoprime.gf import build_field
from polycoprime.polyring import Poly, enumerate_monic, lcm_monic, poly
from polycoprime.polymatrix import (
    PolyMatrix, build_block_chain, const_rank, det_cofactor, det_poly, fullsize_minors, gcld,
    hermite_form, hstack, is_left_prime, is_mutually_left_coprime_block,
    is_mutually_left_coprime_direct, is_unimodular, lcrm, lcrm_many, right_divides,
)

F2 = build_field(2)
z = poly(F2, [0, 1])
one = Poly.one(F2)
zero = Poly.zero(F2)


def M(*rows, F=F2):
    return PolyMatrix(F, rows)


def random_matrix(rng, F, rows, cols, max_deg):
    return PolyMatrix.from_coeffs(
        F, [[[rng.randrange(F.order) for _ in range(rng.randint(0, max_deg + 1))]
             for _ in range(cols)] for _ in range(rows)])


def random_nonsingular(rng, F, m, max_deg):
    while True:
        D = random_matrix(rng, F, m, m, max_deg)
        if not det_poly(D).is_zero():
            return D


def test_det_examples():
    assert det_poly(PolyMatrix.identity(F2, 4)) == one
    assert det_poly(M([z, zero], [zero, z + one])) == z * z + z
    assert det_poly(M([z, one], [zero, z])) == z * z


def test_det_matches_cofactor_and_is_multiplicative():
    rng = random.Random(1)
    for q in (2, 3):
        F = build_field(q)
        for n in (1, 2, 3):
            for _ in range(40):
                A, B = (random_matrix(rng, F, n, n, 2) for _ in range(2))
                assert det_poly(A) == det_cofactor(A)
                assert det_poly(A @ B) == det_poly(A) * det_poly(B)


def test_fullsize_minors():
    d1, d2 = z, z + one
    assert fullsize_minors(M([d1, d2])) == [d1, d2]
    assert fullsize_minors(M([one, zero, zero], [zero, one, zero])) == [one, zero, zero]
    assert len(fullsize_minors(random_matrix(random.Random(0), F2, 2, 4, 1))) == 6


def test_left_prime_examples():
    assert is_left_prime(M([z, z + one]))
    assert not is_left_prime(M([z, z * z]))
    junk = random_matrix(random.Random(3), F2, 2, 3, 3)
    assert is_left_prime(hstack([PolyMatrix.identity(F2, 2), junk]))


def test_hermite_examples():
    U0 = M([one, z], [zero, one])
    H, _ = hermite_form(U0)
    assert H == PolyMatrix.identity(F2, 2)
    H, U = hermite_form(M([z * z], [z * z + z]))
    assert H == M([z], [zero])
    assert U @ M([z * z], [z * z + z]) == H


@pytest.mark.parametrize("side", ["row", "column"])
def test_hermite_contract(side):
    rng = random.Random(7)
    for _ in range(100):
        A = random_matrix(rng, F2, 3, 3, 2)
        H, U = hermite_form(A, side)
        assert (U @ A if side == "row" else A @ U) == H
        assert det_poly(U).deg == 0
        Hr = H if side == "row" else H.transpose()
        # echelon: pivot columns strictly increase, pivots monic, entries above reduced
        last = -1
        for i in range(Hr.rows):
            nz = [j for j in range(Hr.cols) if not Hr[i, j].is_zero()]
            if not nz:
                assert all(Hr[k, j].is_zero() for k in range(i, Hr.rows) for j in range(Hr.cols))
                break
            piv = nz[0]
            assert piv > last and Hr[i, piv].is_monic()
            assert all(Hr[k, piv].deg < Hr[i, piv].deg for k in range(i))
            last = piv


def test_unimodular():
    assert is_unimodular(PolyMatrix.identity(F2, 3))
    assert not is_unimodular(M([z, zero], [zero, one]))
    assert is_unimodular(M([one, z], [zero, one]))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("shape", [(1, 2), (1, 3), (2, 3), (2, 4)])
def test_minors_and_hermite_agree(q, shape):
    F = build_field(q)
    rng = random.Random(hash((q, shape)) & 0xFFFF)
    for _ in range(500):
        A = random_matrix(rng, F, *shape, 2)
        assert is_left_prime(A, "minors") == is_left_prime(A, "hermite")


def test_gcld_examples():
    I2 = PolyMatrix.identity(F2, 2)
    zI = M([z, zero], [zero, z])
    z1I = M([z + one, zero], [zero, z + one])
    assert gcld([zI, z1I]) == I2
    assert gcld([M([z * z]), M([z * z + z])]) == M([z])
    rng = random.Random(5)
    A = random_nonsingular(rng, F2, 2, 2)
    G = gcld([A, A])
    # A and G differ by a unimodular right factor
    assert right_divides(G, A) and right_divides(A, G)


def test_lcrm_examples():
    L, X, Y = lcrm(M([z]), M([z + one]))
    assert det_poly(L).monic() == z * z + z
    rng = random.Random(9)
    A = random_nonsingular(rng, F2, 2, 1)
    L, X, Y = lcrm(A, PolyMatrix.identity(F2, 2))
    assert L == A @ X and is_unimodular(X)


def test_lcrm_scalar_matches_lcm():
    for a, b in itertools.product([f for n in (1, 2) for f in enumerate_monic(2, n)], repeat=2):
        L, _, _ = lcrm(M([a]), M([b]))
        assert det_poly(L).monic() == lcm_monic(a, b)


def test_lcrm_postcondition_random():
    rng = random.Random(11)
    for _ in range(40):
        A, B = random_nonsingular(rng, F2, 2, 1), random_nonsingular(rng, F2, 2, 1)
        L, X, Y = lcrm(A, B)
        assert L == A @ X == B @ Y
        assert right_divides(A, L) and right_divides(B, L)


def test_lcrm_many():
    rng = random.Random(2)
    A = random_nonsingular(rng, F2, 2, 1)
    assert lcrm_many([A]) == A
    L = lcrm_many([M([z]), M([z + one]), M([z])])
    assert det_poly(L).monic() == z * z + z
    for _ in range(50):
        Ds = [random_nonsingular(rng, F2, 2, 1) for _ in range(3)]
        L = lcrm_many(Ds)
        assert all(right_divides(D, L) for D in Ds)


def test_singular_inputs_rejected():
    with pytest.raises(ValueError):
        lcrm(M([zero]), M([z]))
    with pytest.raises(ValueError):
        is_mutually_left_coprime_direct([M([zero]), M([z])])


def test_block_chain_shapes():
    d1, d2, d3 = M([z]), M([z + one]), M([z * z])
    assert build_block_chain([d1, d2]).assembled == M([z, z + one])
    assert build_block_chain([d1, d2, d3]).assembled == M([z, z + one, zero],
                                                          [zero, z + one, z * z])
    rng = random.Random(4)
    Ds = [random_matrix(rng, F2, 2, 2, 1) for _ in range(4)]
    assert build_block_chain(Ds).assembled.shape == (6, 8)


@pytest.mark.parametrize("pred", [is_mutually_left_coprime_block, is_mutually_left_coprime_direct])
def test_mutual_coprime_examples(pred):
    s = lambda f: M([f])  # noqa: E731
    assert pred([s(z), s(z + one), s(z * z + z + one)])
    assert not pred([s(z), s(z + one), s(z)])
    I2 = PolyMatrix.identity(F2, 2)
    assert pred([I2, I2])


def test_direct_at_n2_is_left_primeness():
    rng = random.Random(6)
    for _ in range(50):
        A, B = random_nonsingular(rng, F2, 2, 1), random_nonsingular(rng, F2, 2, 1)
        assert is_mutually_left_coprime_direct([A, B]) == is_left_prime(hstack([A, B]))


def test_scalar_mutual_coprime_is_pairwise():
    lin = list(enumerate_monic(2, 1))
    for ds in itertools.product(lin, repeat=3):
        pairwise = all(a != b for a, b in itertools.combinations(ds, 2))
        Ds = [M([d]) for d in ds]
        assert is_mutually_left_coprime_direct(Ds) == pairwise
        assert is_mutually_left_coprime_block(Ds) == pairwise


def test_const_rank():
    assert const_rank(PolyMatrix.identity(F2, 3)) == 3
    assert const_rank(PolyMatrix.zeros(F2, 2, 3)) == 0
    assert const_rank(PolyMatrix.constant(F2, [[1, 1], [1, 1]])) == 1
    assert const_rank([[1, 2], [2, 1]], build_field(3)) == 1
    with pytest.raises(ValueError):
        const_rank(M([z]))
