"""Named verification suites: exact identities and oracle cross-checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import census, formulas
from .polyring import count_irreducibles, enumerate_monic, is_irreducible


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    lhs: object = None
    rhs: object = None


def _eq(name, lhs, rhs) -> Check:
    return Check(name, lhs == rhs, lhs, rhs)


def identities() -> list[Check]:
    out = []
    for M in range(1, 31):
        lhs, rhs = formulas.binom_identity(M)
        out.append(_eq(f"binom_identity M={M}", lhs, rhs))
    for q in (2, 3):
        for k in range(1, 4):
            for n in range(1, 4):
                s = 1 + sum(formulas.rank_census(k, n, r, q) for r in range(1, min(k, n) + 1))
                out.append(_eq(f"rank partition k={k} n={n} q={q}", s, q ** (k * n)))
    for q in (2, 3, 4):
        for n in range(1, 7):
            lhs, rhs = formulas.irreducible_completeness(n, q)
            out.append(_eq(f"sum d*phi_d n={n} q={q}", lhs, rhs))
        for j in range(1, 7):
            sieve = sum(1 for f in enumerate_monic(q, j) if is_irreducible(f))
            out.append(_eq(f"phi sieve j={j} q={q}", count_irreducibles(j, q), sieve))
    for N in range(2, 11):
        a = formulas.pairwise_density_asymptotic(N)
        b = formulas.pairwise_uniform_asymptotic(N, 0)
        out.append(_eq(f"density vs uniform coefficients N={N}",
                       (a.c0, a.c1, a.c2), (b.c0, b.c1, b.c2)))
    for q in range(2, 18):
        try:
            u, d = formulas.conclusion_reference(q)
        except ValueError:
            continue
        out.append(Check(f"conclusion uniform > density q={q}", u > d, u, d))
    return out


def oracles() -> list[Check]:
    out = []
    for q in (2, 3):
        for degs in ((1, 1), (2, 2), (1, 2, 3), (2, 2, 2)):
            r = census.count_setwise_coprime(q, degs)
            out.append(_eq(f"setwise census q={q} degrees={degs}", r.probability,
                           formulas.setwise_coprime_prob(len(degs), q)))
    G = census.Graph
    cases = [(G.complete(2), (2, 2)), (G.complete(3), (1, 2, 2)), (G.path(3), (1, 1, 1)),
             (G.complete(4), (1, 1, 2, 2)), (G(4, ((1, 2), (3, 4))), (2, 1, 2, 2))]
    for q in (2, 3):
        for g, degs in cases:
            lhs = census.graph_labeling_sum(q, degs, g)
            rhs = census.count_graph_coprime(q, degs, g).probability
            out.append(_eq(f"labeling sum vs census q={q} edges={g.edges} degrees={degs}",
                           lhs, rhs))
    for q in (2, 3):
        for k in range(1, 4):
            for n in range(1, 4):
                dist = census.rank_distribution(k, n, q)
                form = [1] + [int(formulas.rank_census(k, n, r, q))
                              for r in range(1, min(k, n) + 1)]
                out.append(_eq(f"rank census k={k} n={n} q={q}", form, dist))
    out.append(_eq("gl_count(2,2)", formulas.gl_count(2, 2), census.rank_distribution(2, 2, 2)[2]))
    out.append(_eq("gl_count(2,3)", formulas.gl_count(2, 3), census.rank_distribution(2, 2, 3)[2]))
    return out


RECURSION_GRID = [(m, N, 1, q) for m in (1, 2) for N in (2, 3) for q in (2, 3)] + [(1, 2, 2, 2)]


def recursion(grid=RECURSION_GRID) -> list[Check]:
    out = []
    for m, N, j, q in grid:
        W = [Fraction(1)] * 2 + [census.wj_bruteforce(m, n, q, j).probability
                                 for n in range(2, N)]
        brute = census.wj_bruteforce(m, N, q, j).probability
        hat = census.wj_hat_bruteforce(m, N, q, j).probability
        rec = formulas.wj_recursion(m, N, q, j, W[:N], hat)
        out.append(_eq(f"recursion closure m={m} N={N} j={j} q={q}", rec, brute))
        if m <= N - 1:
            out.append(_eq(f"all-singular term vanishes m={m} N={N} j={j} q={q}", hat, 0))
        if N == 2:
            out.append(_eq(f"pair formula m={m} j={j} q={q}", brute,
                           formulas.wj_exact_pair(m, q, j)))
    return out


def density() -> list[Check]:
    out = []
    tp = formulas.pairwise_density_truncated(2, 2, 20)
    gap = tp.distance(Fraction(1, 2))
    out.append(Check("pairwise product J=20 within 1e-4 of 1/2", gap <= Fraction(1, 10**4),
                     tp.decimal(), "1/2"))
    out.append(Check("pairwise tail bound covers 1/2", tp.brackets(Fraction(1, 2)),
                     float(tp.tail_bound), float(gap)))
    tp = formulas.mutual_density_truncated(2, 2, 2, 12)
    gap = tp.distance(Fraction(21, 32))
    out.append(Check("mutual product J=12 within 1e-3 of 21/32", gap <= Fraction(1, 10**3),
                     tp.decimal(), "21/32"))
    out.append(Check("mutual tail bound covers 21/32", tp.brackets(Fraction(21, 32)),
                     float(tp.tail_bound), float(gap)))
    scan = census.density_scan_polys(2, 2, [3, 7, 15, 31, 63])
    last = scan.points[-1].fraction
    out.append(Check("polynomial scan n=63 within 0.02 of 1/2",
                     abs(last - Fraction(1, 2)) <= Fraction(1, 50), last, "1/2"))
    return out


SUITES = {"identities": identities, "oracles": oracles, "recursion": recursion,
          "density": density}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    return SUITES[name]()


def random_graphs(count: int, seed: int = 0, max_vertices: int = 4) -> list:
    rng = random.Random(seed)
    return [census.Graph.random(rng.randint(2, max_vertices), rng) for _ in range(count)]
