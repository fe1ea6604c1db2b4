"""Coprimality probabilities for polynomials and polynomial matrices over finite fields."""

from .gf import FieldElem, FieldSpec, arith, build_field, enumerate_elements, field_of_order
from .polyring import (
    Poly, count_irreducibles, enumerate_monic, gcd_monic, index_to_poly, irreducibles,
    is_irreducible, is_squarefree, lcm_monic, mobius, poly, poly_to_index,
)
from .polymatrix import (
    PolyMatrix, build_block_chain, const_rank, det_poly, gcld, hermite_form, is_left_prime,
    is_mutually_left_coprime_block, is_mutually_left_coprime_direct, lcrm, lcrm_many,
)
from .formulas import (
    AsymptoticCoeffs, TruncatedProduct, binom_identity, conclusion_reference, gl_count,
    mutual_density_truncated, mutual_uniform_asymptotic, pairwise_density_asymptotic,
    pairwise_density_truncated, pairwise_uniform_asymptotic, rank_census,
    setwise_coprime_prob, wj_asymptotic, wj_exact_pair, wj_recursion,
)
from .census import (
    CensusResult, DensityScan, Graph, count_graph_coprime, count_setwise_coprime,
    density_scan_matrices, density_scan_polys, graph_labeling_sum, wj_bruteforce,
    wj_hat_bruteforce, wj_montecarlo,
)

__version__ = "0.1.0"
