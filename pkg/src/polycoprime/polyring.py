"""The polynomial ring F[z] over a finite field.

Polynomials are dense coefficient tuples (low degree first) of field
element codes, with trailing zeros stripped.  The zero polynomial has an
empty tuple and degree -1.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .gf import FieldElem, FieldSpec, field_of_order

MAX_IRREDUCIBLE_DEGREE = 16
ENUMERATION_CEILING = 2**24


class Poly:
    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs=()):
        c = [x.value if isinstance(x, FieldElem) else x for x in coeffs]
        if field.degree == 1:
            c = [x % field.order for x in c]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, field, coeffs):
        # coeffs already a stripped tuple of valid codes
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def one(cls, field):
        return cls._raw(field, (1,))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def z(cls, field):
        return cls._raw(field, (0, 1))

    @classmethod
    def from_roots(cls, field, roots):
        f = cls.one(field)
        for r in roots:
            f = f * cls(field, (field.neg(r), 1))
        return f

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def elems(self) -> list[FieldElem]:
        return [FieldElem(self.field, c) for c in self.coeffs]

    def scale(self, c: int) -> Poly:
        if c == 0:
            return Poly.zero(self.field)
        mul = self.field.mul
        return Poly._raw(self.field, tuple(mul(c, x) for x in self.coeffs))

    def monic(self) -> Poly:
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def shift(self, n: int) -> Poly:
        if not self.coeffs:
            return self
        return Poly._raw(self.field, (0,) * n + self.coeffs)

    def derivative(self) -> Poly:
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            # codes 0..p-1 are the prime subfield, so i*c is a field product
            out.append(F.mul(i % F.characteristic, c))
        return Poly(F, out)

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    # -- ring operations -------------------------------------------------
    def _check(self, other):
        if isinstance(other, int):
            return Poly.constant(self.field, other)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            raise ValueError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.field.add
        c = list(a)
        for i, x in enumerate(b):
            c[i] = add(c[i], x)
        while c and c[-1] == 0:
            c.pop()
        return Poly._raw(self.field, tuple(c))

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Poly._raw(self.field, tuple(neg(x) for x in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        F = self.field
        c = [0] * (len(a) + len(b) - 1)
        if F.degree == 1:
            p = F.order
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        c[i + j] += x * y
            c = [v % p for v in c]
        else:
            add, mul = F.add, F.mul
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        c[i + j] = add(c[i + j], mul(x, y))
        return Poly._raw(F, tuple(c))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result, base = Poly.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(r) - 1 < db:
            return Poly.zero(F), self
        inv = F.inv(b[-1])
        qc = [0] * (len(r) - db)
        add, mul, neg = F.add, F.mul, F.neg
        for s in range(len(r) - 1 - db, -1, -1):
            f = mul(r[s + db], inv)
            if f:
                qc[s] = f
                nf = neg(f)
                for i, bi in enumerate(b):
                    if bi:
                        r[s + i] = add(r[s + i], mul(nf, bi))
        r = r[:db]
        while r and r[-1] == 0:
            r.pop()
        while qc and qc[-1] == 0:
            qc.pop()
        return Poly._raw(F, tuple(qc)), Poly._raw(F, tuple(r))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: Poly) -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def exact_div(self, other: Poly) -> Poly:
        q, r = divmod(self, other)
        if r.coeffs:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.constant(self.field, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = repr(FieldElem(F, c))
            if F.degree > 1 and "+" in cs:
                cs = f"({cs})"
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return "+".join(terms)

    def __reduce__(self):
        return (Poly, (self.field, self.coeffs))


def poly(field, coeffs) -> Poly:
    """Convenience constructor accepting a field order or a :class:`FieldSpec`."""
    return Poly(field_of_order(field), coeffs)


@dataclass(frozen=True)
class FactorSet:
    factors: frozenset
    omega: int

    def product(self, field: FieldSpec) -> Poly:
        out = Poly.one(field)
        for f in sorted(self.factors, key=poly_to_index):
            out = out * f
        return out


def poly_arith(a: Poly, b: Poly, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def gcd_monic(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(f, 0) == monic(f)``."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def lcm_monic(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        raise ValueError("lcm with a zero polynomial")
    return ((a * b) // gcd_monic(a, b)).monic()


def setwise_gcd(ds) -> Poly:
    ds = list(ds)
    nonzero = [d for d in ds if d.coeffs]
    if not nonzero:
        raise ValueError("setwise gcd of all-zero list")
    g = nonzero[0].monic()
    for d in nonzero[1:]:
        if g.deg == 0:
            break
        g = gcd_monic(g, d)
    return g


def is_squarefree(f: Poly) -> bool:
    if f.is_zero():
        raise ValueError("square-freeness of the zero polynomial")
    if f.deg <= 0:
        return True
    return gcd_monic(f, f.derivative()).deg == 0


def _check_irreducible_degree(f: Poly, max_degree: int):
    if f.deg < 1:
        raise ValueError("irreducibility is only defined for non-constant polynomials")
    if f.deg > max_degree:
        raise ValueError(f"degree {f.deg} exceeds maximum {max_degree}")


@functools.lru_cache(maxsize=None)
def irreducibles(field: FieldSpec, d: int) -> tuple[Poly, ...]:
    """All monic irreducibles of degree ``d``, in enumeration order (sieve)."""
    if d < 1:
        return ()
    smaller = [g for e in range(1, d // 2 + 1) for g in irreducibles(field, e)]
    out = []
    for f in enumerate_monic(field, d, ceiling=None):
        if all(f % g for g in smaller):
            out.append(f)
    return tuple(out)


def is_irreducible(f: Poly, max_degree: int = MAX_IRREDUCIBLE_DEGREE) -> bool:
    _check_irreducible_degree(f, max_degree)
    for d in range(1, f.deg // 2 + 1):
        for g in irreducibles(f.field, d):
            if not (f % g).coeffs:
                return False
    return True


def factor_distinct(f: Poly, max_degree: int = MAX_IRREDUCIBLE_DEGREE) -> FactorSet:
    """Distinct monic irreducible divisors of a monic polynomial."""
    if f.is_zero() or not f.is_monic():
        raise ValueError("factor_distinct expects a monic nonzero polynomial")
    if f.deg > max_degree:
        raise ValueError(f"degree {f.deg} exceeds maximum {max_degree}")
    found = []
    rest = f
    d = 1
    while 2 * d <= rest.deg:
        for g in irreducibles(f.field, d):
            q, r = divmod(rest, g)
            if r.coeffs:
                continue
            found.append(g)
            rest = q
            while True:
                q, r = divmod(rest, g)
                if r.coeffs:
                    break
                rest = q
        d += 1
    if rest.deg >= 1:
        found.append(rest)
    return FactorSet(frozenset(found), len(found))


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def count_irreducibles(j: int, q: int) -> int:
    """Number of monic irreducibles of degree ``j`` over a field with ``q`` elements."""
    if j < 1:
        raise ValueError("degree must be >= 1")
    total = sum(mobius(d) * q ** (j // d) for d in range(1, j + 1) if j % d == 0)
    assert total % j == 0
    return total // j


def enumerate_monic(q, n: int, ceiling: int | None = ENUMERATION_CEILING):
    """All monic polynomials of degree ``n``, ordered by enumeration index."""
    F = field_of_order(q)
    if n < 0:
        raise ValueError("degree must be >= 0")
    if ceiling is not None and F.order**n > ceiling:
        raise ValueError(f"{F.order}^{n} monic polynomials exceed the ceiling {ceiling}")
    out = []
    for low in itertools.product(range(F.order), repeat=n):
        out.append(Poly._raw(F, tuple(reversed(low)) + (1,)))
    return out


def enumerate_squarefree_monic(q, n: int, ceiling: int | None = ENUMERATION_CEILING):
    return [f for f in enumerate_monic(q, n, ceiling) if is_squarefree(f)]


def index_to_poly(k: int, q) -> Poly:
    """The polynomial whose base-q digits (low first) are the codes of its coefficients."""
    F = field_of_order(q)
    if k < 0:
        raise ValueError("index must be nonnegative")
    c = []
    while k:
        k, r = divmod(k, F.order)
        c.append(r)
    return Poly._raw(F, tuple(c))


def poly_to_index(f: Poly) -> int:
    q = f.field.order
    k = 0
    for c in reversed(f.coeffs):
        k = k * q + c
    return k
