from fractions import Fraction as Fr
from math import comb

import pytest

from polycoprime.formulas import (
    binom_identity, conclusion_reference, gl_count, irreducible_completeness,
    mutual_density_truncated, mutual_uniform_asymptotic, pairwise_density_asymptotic,
    pairwise_density_truncated, pairwise_uniform_asymptotic, rank_census,
    setwise_coprime_prob, wj_asymptotic, wj_exact_pair, wj_recursion, wj_recursive_exact,
)


def test_rank_census_examples():
    assert rank_census(2, 2, 1, 2) == 9
    assert rank_census(3, 3, 3, 2) == gl_count(3, 2)
    assert rank_census(1, 1, 1, 3) == 2


@pytest.mark.parametrize("q", [2, 3])
def test_rank_partition(q):
    for k in range(1, 4):
        for n in range(1, 4):
            total = 1 + sum(rank_census(k, n, r, q) for r in range(1, min(k, n) + 1))
            assert total == q ** (k * n)


def test_gl_count():
    assert gl_count(1, 7) == 6
    assert gl_count(2, 2) == 6
    assert gl_count(2, 3) == 48


def test_setwise_coprime_prob():
    assert setwise_coprime_prob(2, 2) == Fr(1, 2)
    assert setwise_coprime_prob(3, 2) == Fr(3, 4)
    vals = [setwise_coprime_prob(2, q) for q in (2, 3, 4, 5, 7, 8, 9, 11)]
    assert vals == sorted(vals) and all(v < 1 for v in vals)


def test_pairwise_uniform_coefficients():
    a = pairwise_uniform_asymptotic(2, 0)
    assert (a.c0, a.c1, a.c2) == (1, -1, 0)
    assert pairwise_uniform_asymptotic(3, 0).c2 == 5
    assert pairwise_uniform_asymptotic(3, 3).c2 == 2
    assert pairwise_uniform_asymptotic(5, 2).c1 == -comb(5, 2)


def test_pairwise_density_asymptotic():
    a = pairwise_density_asymptotic(2)
    assert (a.c0, a.c1, a.c2) == (1, -1, 0)
    assert pairwise_density_asymptotic(3).c2 == 5
    assert pairwise_density_asymptotic(4).c2 == 23


@pytest.mark.parametrize("N", range(2, 11))
def test_density_and_uniform_coincide(N):
    a, b = pairwise_density_asymptotic(N), pairwise_uniform_asymptotic(N, 0)
    assert (a.c0, a.c1, a.c2) == (b.c0, b.c1, b.c2)


def test_pairwise_truncated_examples():
    assert pairwise_density_truncated(2, 2, 1).value == Fr(9, 16)
    tp = pairwise_density_truncated(2, 2, 20)
    assert tp.distance(Fr(1, 2)) <= Fr(1, 10**4)
    assert tp.tail_bound < Fr(1, 10**4)
    assert tp.brackets(Fr(1, 2))


def test_tail_bound_decreases():
    tails = [pairwise_density_truncated(3, 2, J).tail_bound for J in range(1, 12)]
    assert all(a > b for a, b in zip(tails, tails[1:]))


def test_mutual_uniform_asymptotic():
    a = mutual_uniform_asymptotic(2, 2)
    assert a.coeff(2) == -1 and a.coeff(1) == 0 and a.order == 3
    assert mutual_uniform_asymptotic(2, 3).coeff(2) == -4
    assert mutual_uniform_asymptotic(1, 5).coeff(1) == -comb(5, 2)
    assert a.note


@pytest.mark.parametrize("m", range(1, 7))
@pytest.mark.parametrize("N", range(2, 7))
def test_mutual_and_wj_deficit_agree(m, N):
    assert mutual_uniform_asymptotic(m, N).coeff(m) == wj_asymptotic(m, N, 1).coeff(m + 1)


def test_wj_exact_pair():
    assert wj_exact_pair(1, 2, 1) == Fr(3, 4)
    assert wj_exact_pair(2, 2, 1) == Fr(105, 128)
    assert wj_exact_pair(1, 2, 2) == Fr(15, 16)


def test_wj_recursion_examples():
    one = Fr(1)
    assert wj_recursion(1, 2, 2, 1, [one, one], Fr(0)) == Fr(3, 4)
    assert wj_recursion(1, 3, 2, 1, [one, one, Fr(3, 4)], Fr(0)) == Fr(1, 2)
    with pytest.raises(ValueError):
        wj_recursion(1, 3, 2, 1, [one, one, Fr(3, 4)], Fr(1, 8))


def test_wj_recursive_exact_matches_pair():
    for m in (1, 2, 3):
        for q in (2, 3, 4):
            assert wj_recursive_exact(m, 2, q, 1) == wj_exact_pair(m, q, 1)


def test_wj_asymptotic():
    a = wj_asymptotic(1, 3, 1)
    assert a.coeff(2) == -3 and a.order == 3
    # exact value 1 - 3t^2 + 2t^3 at t = 1/2
    assert 1 - 3 * Fr(1, 4) + 2 * Fr(1, 8) == Fr(1, 2)
    b = wj_asymptotic(2, 2, 2)
    assert b.coeff(3) == -1 and b.order == 4


def test_mutual_truncated():
    tp = mutual_density_truncated(2, 2, 2, 12)
    assert tp.distance(Fr(21, 32)) <= Fr(1, 1000)
    assert tp.brackets(Fr(21, 32))
    tp = mutual_density_truncated(1, 2, 2, 20)
    assert tp.distance(Fr(1, 2)) <= Fr(1, 10**4)
    assert tp.brackets(Fr(1, 2))
    empty = mutual_density_truncated(2, 2, 2, 0)
    assert empty.value == 1 and empty.tail_bound > 0


def test_mutual_truncated_with_provider():
    calls = []

    def provider(j):
        calls.append(j)
        return wj_exact_pair(2, 2, j)

    tp = mutual_density_truncated(2, 2, 2, 4, provider)
    assert tp.value == mutual_density_truncated(2, 2, 2, 4).value and calls

    def broken(j):
        raise KeyError(j)

    with pytest.raises(RuntimeError):
        mutual_density_truncated(2, 2, 2, 4, broken)


def test_binom_identity():
    assert binom_identity(1) == (-1, -1)
    assert binom_identity(2) == (Fr(-1, 2), Fr(-1, 2))
    lhs, rhs = binom_identity(30)
    assert lhs == rhs


def test_conclusion_reference():
    assert conclusion_reference(2) == (Fr(5, 6), Fr(21, 32))
    assert conclusion_reference(3) == (Fr(11, 12), Fr(8, 9) * Fr(26, 27))
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17):
        u, d = conclusion_reference(q)
        assert u > d


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_irreducible_completeness(q):
    for n in range(1, 7):
        lhs, rhs = irreducible_completeness(n, q)
        assert lhs == rhs == q**n


def test_parameter_validation():
    with pytest.raises(ValueError):
        setwise_coprime_prob(1, 2)
    with pytest.raises(ValueError):
        pairwise_uniform_asymptotic(3, 4)
    with pytest.raises(ValueError):
        wj_exact_pair(1, 6, 1)
