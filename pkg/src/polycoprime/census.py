"""Ground-truth counts by exhaustive enumeration and seeded Monte Carlo.

Exhaustive counts are exact integers.  Monte Carlo runs draw from numpy's
counter-based Philox generator; chunk ``i`` of a run uses the stream
``Philox(seed).jumped(i)`` so results do not depend on the worker count.
"""

from __future__ import annotations

import functools
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from .gf import FieldSpec, field_of_order
from .polymatrix import PolyMatrix, build_block_chain, is_left_prime
from .polyring import (Poly, enumerate_monic, gcd_monic, index_to_poly, irreducibles,
                       poly_to_index)

CEILING = 2**24
MC_CHUNK = 2**16
ENUM_CHUNK = 2**16


@dataclass(frozen=True)
class CensusResult:
    total: int
    hits: int
    probability: Fraction
    mode: str = "exhaustive"
    seed: int | None = None
    samples: int | None = None
    ci_low: Fraction | None = None
    ci_high: Fraction | None = None

    def covers(self, value) -> bool:
        return self.ci_low <= Fraction(value) <= self.ci_high


def _exhaustive(hits: int, total: int) -> CensusResult:
    return CensusResult(total, hits, Fraction(hits, total))


def wilson_interval(hits: int, n: int, level: float = 0.99) -> tuple[Fraction, Fraction]:
    z = NormalDist().inv_cdf(0.5 + level / 2)
    phat = hits / n
    denom = 1 + z * z / n
    centre = (phat + z * z / (2 * n)) / denom
    half = z * ((phat * (1 - phat) / n + z * z / (4 * n * n)) ** 0.5) / denom
    lo, hi = max(0.0, centre - half), min(1.0, centre + half)
    return Fraction(lo), Fraction(hi)


def _montecarlo(hits: int, samples: int, seed: int) -> CensusResult:
    lo, hi = wilson_interval(hits, samples)
    return CensusResult(samples, hits, Fraction(hits, samples), "montecarlo", seed, samples, lo, hi)


def _check_ceiling(size: int, ceiling: int | None):
    if ceiling is not None and size > ceiling:
        raise ValueError(f"enumeration of {size} cases exceeds the ceiling {ceiling}; "
                         "use Monte Carlo instead")


def _rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed).jumped(chunk))


def _chunks(total: int, size: int):
    return [(s, min(s + size, total)) for s in range(0, total, size)]


def _run(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, *zip(*tasks)))


# --- scalar polynomial censuses ----------------------------------------------

def count_setwise_coprime(q, degrees, ceiling: int | None = CEILING) -> CensusResult:
    """Count monic tuples of the given degrees whose common gcd is 1.

    Every tuple is visited implicitly: tuples are grouped by the running gcd
    of their prefix, which is exact bookkeeping rather than sampling.
    """
    F = field_of_order(q)
    degrees = list(degrees)
    total = 1
    for n in degrees:
        total *= F.order**n
    _check_ceiling(total, ceiling)
    pools = [enumerate_monic(F, n, ceiling=None) for n in degrees]
    dist = {f: 1 for f in pools[0]}
    for pool in pools[1:]:
        nxt: dict = {}
        for g, cnt in dist.items():
            if g.deg == 0:
                nxt[g] = nxt.get(g, 0) + cnt * len(pool)
                continue
            for f in pool:
                h = gcd_monic(g, f)
                nxt[h] = nxt.get(h, 0) + cnt
        dist = nxt
    hits = sum(c for g, c in dist.items() if g.deg == 0)
    return _exhaustive(hits, total)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple

    def __post_init__(self):
        seen = set()
        for i, j in self.edges:
            if not 1 <= i < j <= self.vertex_count:
                raise ValueError(f"bad edge {(i, j)} for {self.vertex_count} vertices")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge {(i, j)}")
            seen.add((i, j))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @classmethod
    def complete(cls, N):
        return cls(N, tuple(itertools.combinations(range(1, N + 1), 2)))

    @classmethod
    def path(cls, N):
        return cls(N, tuple((i, i + 1) for i in range(1, N)))

    @classmethod
    def empty(cls, N):
        return cls(N, ())

    @classmethod
    def random(cls, N, rng: random.Random, p: float = 0.5):
        return cls(N, tuple(e for e in itertools.combinations(range(1, N + 1), 2)
                            if rng.random() < p))

    @classmethod
    def named(cls, name: str, N: int):
        makers = {"complete": cls.complete, "path": cls.path, "empty": cls.empty}
        if name == "triangle":
            return cls.complete(3)
        if name == "disjoint":
            return cls(N, tuple((i, i + 1) for i in range(1, N, 2)))
        if name not in makers:
            raise ValueError(f"unknown graph {name!r}")
        return makers[name](N)


def _coprime_table(xs, ys) -> np.ndarray:
    return np.array([[gcd_monic(x, y).deg == 0 for y in ys] for x in xs], dtype=bool)


def count_graph_coprime(q, degrees, graph: Graph, ceiling: int | None = CEILING) -> CensusResult:
    """Exhaustive size of Gamma(n): monic tuples coprime along every edge."""
    F = field_of_order(q)
    degrees = list(degrees)
    N = graph.vertex_count
    if len(degrees) != N:
        raise ValueError("one degree per vertex required")
    total = 1
    for n in degrees:
        total *= F.order**n
    _check_ceiling(total, ceiling)
    pools = [enumerate_monic(F, n, ceiling=None) for n in degrees]
    tables: dict = {}
    cache: dict = {}
    for i, j in graph.edges:
        key = (degrees[i - 1], degrees[j - 1])
        if key not in cache:
            cache[key] = _coprime_table(pools[i - 1], pools[j - 1])
        tables[(i - 1, j - 1)] = cache[key]
        tables[(j - 1, i - 1)] = cache[key].T

    def rec(v, allowed):
        if v == N - 1:
            return int(allowed[v].sum())
        count = 0
        for x in np.flatnonzero(allowed[v]):
            nxt = list(allowed)
            for w in range(v + 1, N):
                t = tables.get((v, w))
                if t is not None:
                    nxt[w] = nxt[w] & t[x]
            count += rec(v + 1, nxt)
        return count

    hits = rec(0, [np.ones(len(p), dtype=bool) for p in pools])
    return _exhaustive(hits, total)


def _squarefree_labels(F: FieldSpec, max_deg: int):
    """All monic square-free polynomials of degree <= max_deg as factor bitmasks.

    Returns the irreducible degrees (indexed by bit) and a list of
    ``(mask, degree, omega)`` in degree-then-lexicographic order.
    """
    irr = [g for d in range(1, max_deg + 1) for g in irreducibles(F, d)]
    degs = [g.deg for g in irr]
    labels = []

    def rec(start, mask, deg, omega):
        labels.append((mask, deg, omega))
        for b in range(start, len(irr)):
            if deg + degs[b] <= max_deg:
                rec(b + 1, mask | (1 << b), deg + degs[b], omega + 1)

    rec(0, 0, 0, 0)
    labels.sort(key=lambda lab: (lab[1], lab[0]))
    return degs, labels


def graph_labeling_sum(q, degrees, graph: Graph, ceiling: int | None = CEILING) -> Fraction:
    """Signed sum over square-free edge labelings with vertex lcm-degree bounds.

    Equals the probability that a uniform monic tuple of the given degrees is
    coprime along every edge of ``graph``.
    """
    F = field_of_order(q)
    degrees = list(degrees)
    if len(degrees) != graph.vertex_count:
        raise ValueError("one degree per vertex required")
    edges = list(graph.edges)
    if not edges:
        return Fraction(1)
    max_deg = max(min(degrees[i - 1], degrees[j - 1]) for i, j in edges)
    degs, labels = _squarefree_labels(F, max_deg)
    mask_deg: dict = {0: 0}

    def mdeg(mask):
        d = mask_deg.get(mask)
        if d is None:
            d = sum(degs[b] for b in range(mask.bit_length()) if mask >> b & 1)
            mask_deg[mask] = d
        return d

    bounds = degrees
    coeff: dict = {}
    visited = [0]
    K = [0] * graph.vertex_count

    def rec(e, sign):
        if e == len(edges):
            visited[0] += 1
            if ceiling is not None and visited[0] > ceiling:
                raise ValueError(f"labeling enumeration exceeds the ceiling {ceiling}")
            total_deg = sum(mdeg(k) for k in K)
            coeff[total_deg] = coeff.get(total_deg, 0) + sign
            return
        i, j = edges[e]
        i, j = i - 1, j - 1
        cap = min(bounds[i], bounds[j])
        ki, kj = K[i], K[j]
        for mask, d, omega in labels:
            if d > cap:
                break
            ni, nj = ki | mask, kj | mask
            if mdeg(ni) > bounds[i] or mdeg(nj) > bounds[j]:
                continue
            K[i], K[j] = ni, nj
            rec(e + 1, -sign if omega & 1 else sign)
            K[i], K[j] = ki, kj

    rec(0, 1)
    t = Fraction(1, F.order)
    return sum((c * t**d for d, c in coeff.items()), Fraction(0))


# --- constant matrices over GF(Q) ------------------------------------------------

class _Tables:
    """numpy lookup tables for a field of order <= 256."""

    def __init__(self, F: FieldSpec):
        add, mul, neg, inv = F.tables()
        self.order = F.order
        self.add = np.array(add, dtype=np.int16)
        self.mul = np.array(mul, dtype=np.int16)
        self.neg = np.array(neg, dtype=np.int16)
        self.inv = np.array(inv, dtype=np.int16)


def batch_rank(A: np.ndarray, T: _Tables) -> np.ndarray:
    """Ranks of a stack of matrices, shape ``(B, R, C)``, by table-driven elimination."""
    A = np.array(A, dtype=np.int16, copy=True)
    B, R, C = A.shape
    row = np.zeros(B, dtype=np.int64)
    rows = np.arange(R)
    for c in range(C):
        mask = (A[:, :, c] != 0) & (rows[None, :] >= row[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        b = np.flatnonzero(has)
        piv = mask[b].argmax(axis=1)
        r0 = row[b]
        top = A[b, r0].copy()
        A[b, r0] = A[b, piv]
        A[b, piv] = top
        prow = T.mul[T.inv[A[b, r0, c]][:, None], A[b, r0]]
        A[b, r0] = prow
        factors = A[b, :, c].copy()
        factors[np.arange(len(b)), r0] = 0
        A[b] = T.add[A[b], T.mul[T.neg[factors][:, :, None], prow[:, None, :]]]
        row[b] += 1
    return row


def _chain_arrays(K: np.ndarray) -> np.ndarray:
    """Assemble block chains from blocks of shape ``(B, N, m, m)``."""
    B, N, m, _ = K.shape
    out = np.zeros((B, (N - 1) * m, N * m), dtype=K.dtype)
    for i in range(N - 1):
        out[:, i * m:(i + 1) * m, i * m:(i + 1) * m] = K[:, i]
        out[:, i * m:(i + 1) * m, (i + 1) * m:(i + 2) * m] = K[:, i + 1]
    return out


def _blocks_from_indices(idx: np.ndarray, Q: int, N: int, m: int) -> np.ndarray:
    digits = np.empty((len(idx), N * m * m), dtype=np.int16)
    rest = idx.copy()
    for d in range(N * m * m):
        digits[:, d] = rest % Q
        rest //= Q
    return digits.reshape(len(idx), N, m, m)


def _wj_counts(K: np.ndarray, T: _Tables, m: int, N: int) -> tuple[int, int]:
    full = batch_rank(_chain_arrays(K), T) == (N - 1) * m
    B = K.shape[0]
    singular = (batch_rank(K.reshape(B * N, m, m), T) < m).reshape(B, N).all(axis=1)
    return int(full.sum()), int((full & singular).sum())


def _wj_chunk(m, N, Q, start, stop):
    T = _Tables(field_of_order(Q))
    K = _blocks_from_indices(np.arange(start, stop, dtype=np.int64), Q, N, m)
    return _wj_counts(K, T, m, N)


def _wj_exhaustive(m, N, q, j, ceiling, workers):
    if m < 1 or N < 1 or j < 1:
        raise ValueError("need m, N, j >= 1")
    Q = q**j
    field_of_order(Q)
    total = Q ** (m * m * N)
    _check_ceiling(total, ceiling)
    if N == 1:
        # no chain rows: full row rank holds vacuously
        F = field_of_order(Q)
        K = _blocks_from_indices(np.arange(total, dtype=np.int64), Q, 1, m)
        sing = int((batch_rank(K.reshape(total, m, m), _Tables(F)) < m).sum())
        return total, total, sing
    tasks = [(m, N, Q, s, e) for s, e in _chunks(total, ENUM_CHUNK)]
    res = _run(_wj_chunk, tasks, workers)
    return total, sum(r[0] for r in res), sum(r[1] for r in res)


def wj_bruteforce(m: int, N: int, q: int, j: int = 1, ceiling: int | None = CEILING,
                  workers: int = 1) -> CensusResult:
    """Fraction of N-tuples of m x m matrices over GF(q^j) with a full-row-rank chain."""
    total, full, _ = _wj_exhaustive(m, N, q, j, ceiling, workers)
    return _exhaustive(full, total)


def wj_hat_bruteforce(m: int, N: int, q: int, j: int = 1, ceiling: int | None = CEILING,
                      workers: int = 1) -> CensusResult:
    """As :func:`wj_bruteforce` but additionally every block singular."""
    total, _, hat = _wj_exhaustive(m, N, q, j, ceiling, workers)
    return _exhaustive(hat, total)


def _wj_mc_chunk(m, N, Q, seed, chunk, size):
    T = _Tables(field_of_order(Q))
    K = _rng(seed, chunk).integers(0, Q, size=(size, N, m, m), dtype=np.int16)
    full = batch_rank(_chain_arrays(K), T) == (N - 1) * m
    return int(full.sum())


def wj_montecarlo(m: int, N: int, q: int, j: int, samples: int, seed: int = 0,
                  workers: int = 1) -> CensusResult:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if N < 2:
        raise ValueError("N must be >= 2")
    Q = q**j
    field_of_order(Q)
    tasks = [(m, N, Q, seed, i, e - s) for i, (s, e) in enumerate(_chunks(samples, MC_CHUNK))]
    hits = sum(_run(_wj_mc_chunk, tasks, workers))
    return _montecarlo(hits, samples, seed)


def block_reduction_violations(m: int, N: int, q: int, samples: int | None = None,
                               seed: int = 0, ceiling: int | None = CEILING) -> tuple[int, int]:
    """Check that dropping nonsingular blocks preserves full row rank of the chain.

    For every tuple (all of them, or ``samples`` random ones) and every
    nonempty proper subset I of nonsingular blocks, the chain of the
    remaining blocks must have full row rank exactly when the whole chain
    does.  Returns ``(checked_pairs, violations)``.
    """
    F = field_of_order(q)
    T = _Tables(F)
    if samples is None:
        total = q ** (m * m * N)
        _check_ceiling(total, ceiling)
        K = _blocks_from_indices(np.arange(total, dtype=np.int64), q, N, m)
    else:
        K = _rng(seed, 0).integers(0, q, size=(samples, N, m, m), dtype=np.int16)
    B = K.shape[0]
    full = batch_rank(_chain_arrays(K), T) == (N - 1) * m
    nonsing = (batch_rank(K.reshape(B * N, m, m), T) == m).reshape(B, N)
    checked = violations = 0
    for r in range(1, N):
        for I in itertools.combinations(range(N), r):
            keep = [i for i in range(N) if i not in I]
            sel = nonsing[:, list(I)].all(axis=1)
            if not sel.any():
                continue
            sub = K[sel][:, keep]
            if len(keep) >= 2:
                sub_full = batch_rank(_chain_arrays(sub), T) == (len(keep) - 1) * m
            else:
                sub_full = np.ones(int(sel.sum()), dtype=bool)
            checked += int(sel.sum())
            violations += int((sub_full != full[sel]).sum())
    return checked, violations


# --- natural-density scans -------------------------------------------------------

@dataclass(frozen=True)
class ScanPoint:
    n: int
    fraction: Fraction
    hits: int
    total: int
    mode: str = "exhaustive"
    aligned: bool = False
    ci: tuple | None = None

    def __iter__(self):
        yield self.n
        yield self.fraction


@dataclass(frozen=True)
class DensityScan:
    points: tuple
    model: str
    params: dict = field(default_factory=dict)


def _is_aligned(n: int, q: int) -> bool:
    k = n + 1
    while k % q == 0:
        k //= q
    return k == 1 and n > 0


def _check_cutoffs(cutoffs):
    cutoffs = list(cutoffs)
    if any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ValueError("cutoffs must be strictly increasing")
    if any(n < 0 for n in cutoffs):
        raise ValueError("cutoffs must be nonnegative")
    return cutoffs


class _IndexRing:
    """Polynomials over a prime field GF(p) addressed by enumeration index.

    Builds product and gcd tables over the index ranges a scan needs, and
    subtracts index arrays digit-wise with numpy.
    """

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        F = field_of_order(p)
        if F.degree != 1:
            raise ValueError("index tables need a prime field")
        self.F = F
        self.polys = [index_to_poly(k, F) for k in range(n + 1)]
        d = self.polys[-1].deg if n > 0 else 0
        self.prod_deg = 2 * max(d, 0)
        self.R = p ** (2 * max(d, 0) + 1)  # indices of all products of two entries
        size = n + 1
        mul = np.zeros((size, size), dtype=np.int64)
        for a in range(size):
            for b in range(a, size):
                v = poly_to_index(self.polys[a] * self.polys[b])
                mul[a, b] = mul[b, a] = v
        self.mul = mul

    def sub(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return A ^ B
        p = self.p
        out = np.zeros(np.broadcast(A, B).shape, dtype=np.int64)
        a, b = A.copy(), B.copy()
        scale = 1
        while True:
            da, db = a % p, b % p
            out += ((da - db) % p) * scale
            a //= p
            b //= p
            scale *= p
            if scale >= self.R:
                break
        return out

    def gcd_table(self, limit: int) -> np.ndarray:
        """Index of the monic gcd for all index pairs below ``limit``."""
        G = np.zeros((limit, limit), dtype=np.int64)
        if self.p == 2:
            for a in range(limit):
                for b in range(a, limit):
                    g = _gf2_gcd(a, b)
                    G[a, b] = G[b, a] = g
            return G
        polys = [index_to_poly(k, self.F) for k in range(limit)]
        for a in range(limit):
            for b in range(a, limit):
                if a == 0 and b == 0:
                    g = 0
                else:
                    g = poly_to_index(gcd_monic(polys[a], polys[b]))
                G[a, b] = G[b, a] = g
        return G


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        db = b.bit_length()
        while a.bit_length() >= db:
            a ^= b << (a.bit_length() - db)
        a, b = b, a
    return a


def _poly_gcd_table(F: FieldSpec, n: int) -> np.ndarray:
    polys = [index_to_poly(k, F) for k in range(n + 1)]
    G = np.zeros((n + 1, n + 1), dtype=np.int64)
    for a in range(n + 1):
        for b in range(a, n + 1):
            g = 0 if a == b == 0 else poly_to_index(gcd_monic(polys[a], polys[b]))
            G[a, b] = G[b, a] = g
    return G


def _count_pairwise(C: np.ndarray, N: int) -> int:
    size = C.shape[0]
    Ci = C.astype(np.int64)
    if N == 1:
        return size
    if N == 2:
        return int(Ci.sum())

    def rec(depth, allowed):
        if depth == N - 2:
            a = allowed.astype(np.int64)
            return int(a @ Ci @ a)
        total = 0
        for x in np.flatnonzero(allowed):
            total += rec(depth + 1, allowed & C[x])
        return total

    return rec(0, np.ones(size, dtype=bool))


def _count_setwise(G: np.ndarray, N: int) -> int:
    size = G.shape[0]
    dist = np.ones(size, dtype=np.int64)
    for _ in range(N - 1):
        new = np.zeros(size, dtype=np.int64)
        for g in np.flatnonzero(dist):
            np.add.at(new, G[g], dist[g])
        dist = new
    return int(dist[1]) if size > 1 else 0


def density_scan_polys(N: int, q, cutoffs, event: str = "pairwise-coprime",
                       ceiling: int | None = CEILING) -> DensityScan:
    """Fractions |E & M_n| / |M_n| for tuples of N polynomials indexed 0..n."""
    F = field_of_order(q)
    cutoffs = _check_cutoffs(cutoffs)
    if event not in ("pairwise-coprime", "setwise-coprime"):
        raise ValueError(f"unknown event {event!r}")
    for n in cutoffs:
        _check_ceiling((n + 1) ** N, ceiling)
    G = _poly_gcd_table(F, max(cutoffs)) if cutoffs else None
    points = []
    for n in cutoffs:
        sub = G[:n + 1, :n + 1]
        if event == "pairwise-coprime":
            hits = _count_pairwise(sub == 1, N)
        else:
            hits = _count_setwise(sub, N)
        total = (n + 1) ** N
        points.append(ScanPoint(n, Fraction(hits, total), hits, total, "exhaustive",
                                _is_aligned(n, F.order)))
    return DensityScan(tuple(points), f"{event} tuples of {N} polynomials over GF({F.order})",
                       {"N": N, "q": F.order, "event": event})


# matrix scans: fast path for 2 x 2 pairs over prime fields via index tables

class _PairScanTables:
    """Minor and gcd tables for left primeness of [D1 D2] with 2x2 blocks."""

    def __init__(self, p: int, n: int):
        ring = _IndexRing(p, n)
        self.size = n + 1
        C = self.size**2
        cols = np.arange(C)
        top, bot = cols // self.size, cols % self.size
        # minor of columns (u, v) = top_u * bot_v - bot_u * top_v
        self.minor = ring.sub(ring.mul[top[:, None], bot[None, :]],
                              ring.mul[bot[:, None], top[None, :]])
        self.gcd = ring.gcd_table(ring.R)

    def left_prime(self, c: np.ndarray) -> np.ndarray:
        """c has shape (B, 4): column values of the 2 x 4 matrices."""
        M, G = self.minor, self.gcd
        g = M[c[:, 0], c[:, 1]]
        for a, b in ((0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
            g = G[g, M[c[:, a], c[:, b]]]
        return g == 1


@functools.lru_cache(maxsize=8)
def _pair_tables(p: int, n: int) -> _PairScanTables:
    return _PairScanTables(p, n)


def _pair_exhaustive_chunk(p, n, lo, hi):
    T = _pair_tables(p, n)
    C = T.size**2
    rest = np.arange(C**3, dtype=np.int64)
    c2, c3, c4 = rest // (C * C), (rest // C) % C, rest % C
    hits = 0
    for c1 in range(lo, hi):
        cols = np.stack([np.full_like(c2, c1), c2, c3, c4], axis=1)
        hits += int(T.left_prime(cols).sum())
    return hits


def _pair_columns(entries: np.ndarray, size: int) -> np.ndarray:
    # entries: (B, 2 blocks, 2, 2) -> columns of [D1 D2] as top*size + bottom
    B = entries.shape[0]
    cols = np.empty((B, 4), dtype=np.int64)
    for blk in range(2):
        for j in range(2):
            cols[:, 2 * blk + j] = entries[:, blk, 0, j] * size + entries[:, blk, 1, j]
    return cols


def _pair_mc_chunk(p, n, seed, chunk, size):
    T = _pair_tables(p, n)
    e = _rng(seed, chunk).integers(0, n + 1, size=(size, 2, 2, 2), dtype=np.int64)
    return int(T.left_prime(_pair_columns(e, n + 1)).sum())


def _generic_chain_left_prime(F, m, N, idx_tuple):
    polys = [index_to_poly(k, F) for k in idx_tuple]
    Ds = [PolyMatrix(F, [polys[b * m * m + i * m:b * m * m + (i + 1) * m] for i in range(m)])
          for b in range(N)]
    return is_left_prime(build_block_chain(Ds).assembled)


def density_scan_matrices(m: int, N: int, q, cutoffs, samples: int = 10**6, seed: int = 0,
                          ceiling: int | None = CEILING, workers: int = 1,
                          backend: str = "auto") -> DensityScan:
    """Fractions of tuples in M_n whose block chain is left prime.

    Cutoffs with ``(n+1)^(m^2 N)`` above ``ceiling`` are estimated by Monte
    Carlo with ``samples`` draws (``samples=0`` forbids the fallback).
    ``backend="generic"`` forces the PolyMatrix route used as the oracle.
    """
    F = field_of_order(q)
    cutoffs = _check_cutoffs(cutoffs)
    if m < 1 or N < 2:
        raise ValueError("need m >= 1 and N >= 2")
    fast = backend != "generic" and m == 2 and N == 2 and F.degree == 1
    if backend == "fast" and not fast:
        raise ValueError("fast backend covers m = 2, N = 2 over prime fields only")
    if m == 1 and N == 2 and backend != "generic":
        scan = density_scan_polys(2, F, cutoffs, "pairwise-coprime", ceiling)
        return DensityScan(scan.points, f"left prime 1x2 chains over GF({F.order})",
                           {"m": m, "N": N, "q": F.order})
    points = []
    for n in cutoffs:
        total = (n + 1) ** (m * m * N)
        exhaustive = ceiling is None or total <= ceiling
        if not exhaustive and samples <= 0:
            _check_ceiling(total, ceiling)
        aligned = _is_aligned(n, F.order)
        if exhaustive:
            if fast:
                C = (n + 1) ** 2
                step = max(1, C // max(1, 4 * workers))
                tasks = [(F.order, n, lo, min(lo + step, C)) for lo in range(0, C, step)]
                hits = sum(_run(_pair_exhaustive_chunk, tasks, workers))
            else:
                hits = sum(_generic_chain_left_prime(F, m, N, t)
                           for t in itertools.product(range(n + 1), repeat=m * m * N))
            points.append(ScanPoint(n, Fraction(hits, total), hits, total, "exhaustive", aligned))
        else:
            if fast:
                tasks = [(F.order, n, seed, i, e - s)
                         for i, (s, e) in enumerate(_chunks(samples, MC_CHUNK))]
                hits = sum(_run(_pair_mc_chunk, tasks, workers))
            else:
                rng = _rng(seed, 0)
                draws = rng.integers(0, n + 1, size=(samples, m * m * N))
                hits = sum(_generic_chain_left_prime(F, m, N, tuple(int(v) for v in row))
                           for row in draws)
            lo, hi = wilson_interval(hits, samples)
            points.append(ScanPoint(n, Fraction(hits, samples), hits, samples, "montecarlo",
                                    aligned, (lo, hi)))
    return DensityScan(tuple(points), f"left prime block chains, m={m}, N={N}, GF({F.order})",
                       {"m": m, "N": N, "q": F.order, "seed": seed, "samples": samples})


def rank_distribution(k: int, n: int, q, ceiling: int | None = CEILING) -> list[int]:
    """Exhaustive count of k x n matrices over GF(q) by rank, index = rank."""
    F = field_of_order(q)
    total = F.order ** (k * n)
    _check_ceiling(total, ceiling)
    T = _Tables(F)
    counts = np.zeros(min(k, n) + 1, dtype=np.int64)
    for s, e in _chunks(total, ENUM_CHUNK):
        idx = np.arange(s, e, dtype=np.int64)
        digits = np.empty((e - s, k * n), dtype=np.int16)
        for d in range(k * n):
            digits[:, d] = idx % F.order
            idx //= F.order
        counts += np.bincount(batch_rank(digits.reshape(e - s, k, n), T),
                              minlength=len(counts))
    return [int(c) for c in counts]
