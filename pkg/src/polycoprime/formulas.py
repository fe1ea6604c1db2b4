"""Exact-rational evaluation of the counting and probability formulas.

Everything here works in :class:`fractions.Fraction`; ``t`` always denotes
``1/q`` for a field with ``q`` elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .gf import prime_power
from .polyring import count_irreducibles

Rat = Fraction


@dataclass(frozen=True)
class AsymptoticCoeffs:
    """A truncated expansion ``sum(coeff * x**power) + O(x**order)``.

    ``terms`` maps powers to exact coefficients.  The variable is ``t`` unless
    ``variable`` says otherwise (the W_j expansions run in ``t**j``).
    """

    terms: dict
    order: int
    variable: str = "t"
    note: str = ""

    def coeff(self, power: int) -> Fraction:
        return Fraction(self.terms.get(power, 0))

    @property
    def c0(self):
        return self.coeff(0)

    @property
    def c1(self):
        return self.coeff(1)

    @property
    def c2(self):
        return self.coeff(2)

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        return sum((Fraction(c) * x**k for k, c in self.terms.items()), Fraction(0))


@dataclass(frozen=True)
class TruncatedProduct:
    """A partial Euler-type product over degrees ``j <= J``.

    The exact value is ``numerator / denominator`` (already in lowest terms,
    since every factor has a power of q as denominator and a numerator prime
    to p).  ``tail_bound`` bounds ``|log|`` of the omitted factors.
    """

    numerator: int
    denominator: int
    J: int
    tail_bound: Fraction
    exact: bool = True
    factors: tuple = ()
    note: str = ""

    @property
    def value(self) -> Fraction:
        # building the Fraction runs a gcd on possibly huge integers
        return Fraction(self.numerator, self.denominator)

    def __float__(self):
        return self.numerator / self.denominator if self.numerator.bit_length() < 1000 \
            else _ratio_float(self.numerator, self.denominator)

    def decimal(self, digits: int = 12) -> str:
        scaled = self.numerator * 10**digits // self.denominator
        s = str(scaled).rjust(digits + 1, "0")
        return f"{s[:-digits]}.{s[-digits:]}"

    def distance(self, target) -> Fraction:
        """``|value - target|`` without normalising the huge value."""
        target = Fraction(target)
        num = abs(self.numerator * target.denominator - target.numerator * self.denominator)
        den = self.denominator * target.denominator
        if num == 0:
            return Fraction(0)
        # shrink to a safe upper bound with a small denominator
        shift = max(0, den.bit_length() - 200)
        return Fraction((num >> shift) + 1, den >> shift) if shift else Fraction(num, den)

    def brackets(self, target) -> bool:
        """True if ``value*exp(-tail) <= target <= value*exp(tail)``."""
        import math
        v = float(self)
        tail = float(self.tail_bound)
        target = float(target)
        slack = 1e-12
        return v * math.exp(-tail) - slack <= target <= v * math.exp(tail) + slack


def _check_q(q: int) -> int:
    prime_power(q)  # raises ValueError unless q is a prime power
    return q


def _ratio_float(num: int, den: int) -> float:
    shift = max(0, max(num.bit_length(), den.bit_length()) - 60)
    return (num >> shift) / (den >> shift)


# --- linear algebra counts ------------------------------------------------------

def rank_census(k: int, n: int, r: int, q: int) -> Fraction:
    """Number of k x n matrices of rank r over GF(q)."""
    _check_q(q)
    if not 1 <= r <= min(k, n):
        raise ValueError(f"rank {r} out of range for {k}x{n}")
    t = Fraction(1, q)
    val = t ** (-n * r)
    for i in range(n - r + 1, n + 1):
        val *= 1 - t**i
    for i in range(r):
        val *= (t ** (i - k) - 1) / (t ** (-(i + 1)) - 1)
    assert val.denominator == 1
    return val


def gl_count(n: int, q: int) -> int:
    _check_q(q)
    if n < 1:
        raise ValueError("n must be >= 1")
    t = Fraction(1, q)
    val = t ** (-n * n)
    for j in range(1, n + 1):
        val *= 1 - t**j
    assert val.denominator == 1
    return int(val)


def gl_fraction(m: int, q: int) -> Fraction:
    """Probability that a random m x m matrix over GF(q) is invertible."""
    val = Fraction(1)
    for l in range(1, m + 1):
        val *= 1 - Fraction(1, q**l)
    return val


# --- scalar coprimality ---------------------------------------------------------

def setwise_coprime_prob(N: int, q: int) -> Fraction:
    _check_q(q)
    if N < 2:
        raise ValueError("N must be >= 2")
    return 1 - Fraction(1, q) ** (N - 1)


def pairwise_uniform_asymptotic(N: int, N1: int, q: int | None = None) -> AsymptoticCoeffs:
    """Expansion of the probability that N monic polynomials are pairwise coprime.

    ``N1`` counts the prescribed degrees equal to one.  ``q`` is accepted for
    interface symmetry; the coefficients do not depend on it.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    if not 0 <= N1 <= N:
        raise ValueError("N1 must lie in [0, N]")
    c1 = Fraction(-N * (N - 1), 2)
    c2 = Fraction((N - 1) * (N - 2) * (3 * N * N + 11 * N - 12 * N1), 24)
    return AsymptoticCoeffs({0: Fraction(1), 1: c1, 2: c2}, order=3)


def pairwise_density_asymptotic(N: int) -> AsymptoticCoeffs:
    if N < 2:
        raise ValueError("N must be >= 2")
    c1 = -Fraction(comb(N, 2))
    c2 = Fraction((N - 1) * (N - 2) * (3 * N * N + 11 * N), 24)
    return AsymptoticCoeffs({0: Fraction(1), 1: c1, 2: c2}, order=3)


def _reduced_factor(num: int, den: int, p: int) -> tuple[int, int]:
    # den is a power of p; strip common factors of p only
    while den > 1 and num % p == 0:
        num //= p
        den //= p
    return num, den


def _product_tail(coef: Fraction, q: int, e: int, J: int, w_floor: Fraction) -> Fraction:
    """Bound on sum_{j>J} (q^j/j) * coef * q^(-e j) / w_floor, as an exact rational.

    Uses phi_j <= q^j/j and -log(w) <= (1-w)/w; valid for e >= 2.
    """
    r = Fraction(1, q ** (e - 1))
    return coef * r ** (J + 1) / ((J + 1) * (1 - r)) / w_floor


def pairwise_density_truncated(N: int, q: int, J: int) -> TruncatedProduct:
    """Partial product over degrees j <= J of the pairwise-coprime density.

    Each irreducible of degree j contributes
    ``(1 - t^j)^(N-1) * (1 + (N-1) t^j)``.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    if J < 0:
        raise ValueError("J must be >= 0")
    p, _ = prime_power(q)
    num, den = 1, 1
    factors = []
    for j in range(1, J + 1):
        Q = q**j
        fn = (Q - 1) ** (N - 1) * (Q + N - 1)
        fd = Q**N
        fn, fd = _reduced_factor(fn, fd, p)
        phi = count_irreducibles(j, q)
        factors.append((j, Fraction(fn, fd), phi))
        num *= fn**phi
        den *= fd**phi
    # -log F_j <= N^2 t^(2j) for q >= 2
    tail = _product_tail(Fraction(N * N), q, 2, J, Fraction(1))
    return TruncatedProduct(num, den, J, tail, True, tuple(factors))


# --- matrix coprimality -----------------------------------------------------------

def deficit_coefficient(m: int, N: int) -> int:
    """sum_{y=2}^{m+1} C(N, y)."""
    return sum(comb(N, y) for y in range(2, min(m + 1, N) + 1))


def mutual_uniform_asymptotic(m: int, N: int) -> AsymptoticCoeffs:
    if m < 1 or N < 2:
        raise ValueError("need m >= 1 and N >= 2")
    note = "uniform model on prescribed determinant degrees; sampling model not implemented"
    if m == 1:
        note = "m = 1: first-order pairwise-coprime expansion"
    return AsymptoticCoeffs({0: Fraction(1), m: -Fraction(deficit_coefficient(m, N))},
                            order=m + 1, note=note)


def wj_exact_pair(m: int, q: int, j: int) -> Fraction:
    """Probability that a random m x 2m matrix over GF(q^j) has full row rank."""
    _check_q(q)
    if m < 1 or j < 1:
        raise ValueError("need m >= 1 and j >= 1")
    Q = q**j
    val = Fraction(1)
    for l in range(m + 1, 2 * m + 1):
        val *= 1 - Fraction(1, Q**l)
    return val


def wj_recursion(m: int, N: int, q: int, j: int, W, What) -> Fraction:
    """W_j(N) from W_j(0..N-1) and the all-singular term by inclusion-exclusion."""
    _check_q(q)
    W = list(W)
    if len(W) < N:
        raise ValueError(f"need W_j(0..{N - 1}), got {len(W)} values")
    if N >= 1 and (W[0] != 1 or (N >= 2 and W[1] != 1)):
        raise ValueError("W_j(0) and W_j(1) must equal 1")
    What = Fraction(What)
    if m <= N - 1 and What != 0:
        raise ValueError("all-singular term must vanish when m <= N - 1")
    g = gl_fraction(m, q**j)
    total = Fraction(0)
    for i in range(1, N + 1):
        total += (-1) ** (i - 1) * comb(N, i) * g**i * Fraction(W[N - i])
    return total + What


def wj_asymptotic(m: int, N: int, j: int = 1) -> AsymptoticCoeffs:
    """Expansion of W_j(N) in the variable ``t**j``."""
    if N < 2:
        raise ValueError("N must be >= 2")
    return AsymptoticCoeffs({0: Fraction(1), m + 1: -Fraction(deficit_coefficient(m, N))},
                            order=m + 2, variable=f"t^{j}")


def wj_recursive_exact(m: int, N: int, q: int, j: int) -> Fraction | None:
    """Exact W_j(N) when every all-singular term in the recursion is known.

    Known cases: N <= 1, N == 2 (rectangular full-rank count) and
    m <= N - 1 (the all-singular term vanishes).  Returns None otherwise.
    """
    if N <= 1:
        return Fraction(1)
    if N == 2:
        return wj_exact_pair(m, q, j)
    if m > N - 1:
        return None
    W = []
    for n in range(N):
        w = wj_recursive_exact(m, n, q, j)
        if w is None:
            return None
        W.append(w)
    return wj_recursion(m, N, q, j, W, 0)


def default_wj_provider(m: int, N: int, q: int) -> Callable[[int], Fraction]:
    def provider(j: int):
        w = wj_recursive_exact(m, N, q, j)
        if w is None:
            raise ValueError(f"no exact W_j({N}) for m={m}; supply a census provider")
        return w
    return provider


def mutual_density_truncated(m: int, N: int, q: int, J: int, wj_provider=None) -> TruncatedProduct:
    """Partial product ``prod_{j<=J} W_j(N)^phi_j``.

    ``wj_provider(j)`` returns an exact Fraction or a census result with a
    ``probability`` attribute and ``mode``; any Monte Carlo factor marks the
    product as an estimate.
    """
    if J < 0:
        raise ValueError("J must be >= 0")
    if wj_provider is None:
        wj_provider = default_wj_provider(m, N, q)
    p, _ = prime_power(q)
    num, den = 1, 1
    exact = True
    factors = []
    for j in range(1, J + 1):
        try:
            w = wj_provider(j)
        except Exception as exc:
            raise RuntimeError(f"W_j provider failed at j={j}: {exc}") from exc
        if not isinstance(w, Fraction):
            exact = exact and getattr(w, "mode", "exhaustive") == "exhaustive"
            w = Fraction(w.probability)
        phi = count_irreducibles(j, q)
        factors.append((j, w, phi))
        if w == 0:
            num = 0
            continue
        wn, wd = w.numerator, w.denominator
        num *= wn**phi
        den *= wd**phi
    if num == 0:
        den = 1
    S = deficit_coefficient(m, N)
    c = Fraction(S + 1)
    # 1 - W_j <= c t^(j(m+1)); the floor keeps -log(W_j) <= (1 - W_j)/W_j bounded
    y = c / Fraction(q) ** ((J + 1) * (m + 1))
    if y >= 1:
        tail = Fraction(10**9)
    else:
        tail = _product_tail(c, q, m + 1, J, 1 - y)
    note = "" if exact else "estimate: Monte Carlo W_j factors"
    return TruncatedProduct(num, den, J, tail, exact, tuple(factors), note)


# --- identities and reference values ----------------------------------------------

def binom_identity(M: int) -> tuple[Fraction, Fraction]:
    if M < 1:
        raise ValueError("M must be >= 1")
    lhs = sum((Fraction((-1) ** k, factorial(k) * factorial(M - k)) for k in range(1, M + 1)),
              Fraction(0))
    rhs = Fraction(-1, factorial(M))
    return lhs, rhs


def conclusion_reference(q: int) -> tuple[Fraction, Fraction]:
    """Uniform probability vs natural density for m = 2, N = 2, det degrees one."""
    _check_q(q)
    uniform = 1 - Fraction(1, q * q + q)
    density = (1 - Fraction(1, q**2)) * (1 - Fraction(1, q**3))
    if not uniform > density:
        raise ArithmeticError("uniform value should exceed the density")
    return uniform, density


def irreducible_completeness(n: int, q: int) -> tuple[int, int]:
    """``(sum_{d | n} d * phi_d, q**n)``; the two agree."""
    _check_q(q)
    lhs = sum(d * count_irreducibles(d, q) for d in range(1, n + 1) if n % d == 0)
    return lhs, q**n
