"""Arithmetic in small finite fields GF(p^k).

Elements are encoded as integers in ``range(q)``: the element
c_0 + c_1 a + ... + c_{k-1} a^{k-1} (``a`` a root of the field modulus)
has code ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.  For prime fields the
code is simply the residue.  :class:`FieldElem` wraps a code for callers
who want operator syntax; the polynomial layer works on raw codes.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

DEFAULT_MAX_ORDER = 2**20
TABLE_MAX_ORDER = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``(p, k)`` with ``q == p**k``; raise if not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


# --- coefficient-list helpers over GF(p), used only for modulus search ---

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        f = a[-1] * inv % p
        s = len(a) - len(b)
        for i, bi in enumerate(b):
            a[s + i] = (a[s + i] - f * bi) % p
        _trim(a)
    return a


def _monic_polys(p: int, d: int):
    for low in itertools.product(range(p), repeat=d):
        yield list(low) + [1]


def _is_irreducible_mod_p(f: list[int], p: int) -> bool:
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            if not _mod_p(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``k`` over GF(p).

    Coefficient vectors are compared low-to-high, i.e. ``(c_0, c_1, ..., 1)``.
    """
    for f in _monic_polys(p, k):
        if _is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldSpec:
    """The field GF(p^k) with an explicit irreducible modulus.

    Instances are immutable after construction.  For ``order <= 256``
    full addition and multiplication tables are built up front.
    """

    __slots__ = ("characteristic", "degree", "modulus", "order",
                 "_add", "_mul", "_neg", "_inv")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] = ()):
        self.characteristic = p
        self.degree = k
        self.modulus = tuple(modulus)
        self.order = p**k
        self._add = self._mul = self._neg = self._inv = None
        if self.order <= TABLE_MAX_ORDER:
            self._build_tables()

    # -- encoding --------------------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.characteristic
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, c) -> int:
        p = self.characteristic
        v = 0
        for x in reversed(list(c)):
            v = v * p + x % p
        return v

    # -- raw arithmetic (no tables) --------------------------------------
    def _add_raw(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.characteristic
        p = self.characteristic
        return self.from_digits((x + y) % p for x, y in zip(self.digits(a), self.digits(b)))

    def _neg_raw(self, a: int) -> int:
        if self.degree == 1:
            return -a % self.characteristic
        return self.from_digits(-x for x in self.digits(a))

    def _mul_raw(self, a: int, b: int) -> int:
        p, k = self.characteristic, self.degree
        if k == 1:
            return a * b % p
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        prod = [c % p for c in prod]
        mod = self.modulus
        for s in range(2 * k - 2, k - 1, -1):
            f = prod[s]
            if f:
                for i in range(k + 1):
                    prod[s - k + i] = (prod[s - k + i] - f * mod[i]) % p
        return self.from_digits(prod[:k])

    def _pow_raw(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return result

    def _inv_raw(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.degree == 1:
            return pow(a, self.characteristic - 2, self.characteristic)
        return self._pow_raw(a, self.order - 2)

    def _build_tables(self):
        q = self.order
        elems = range(q)
        self._add = [[self._add_raw(a, b) for b in elems] for a in elems]
        self._mul = [[self._mul_raw(a, b) for b in elems] for a in elems]
        self._neg = [self._neg_raw(a) for a in elems]
        inv = [0] * q
        for a in range(1, q):
            row = self._mul[a]
            inv[a] = row.index(1)
        self._inv = inv

    # -- public arithmetic on codes --------------------------------------
    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._add_raw(a, b)

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return self._neg[a]
        return self._neg_raw(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self._inv is not None:
            return self._inv[a]
        return self._inv_raw(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def tables(self):
        """Return ``(add, mul, neg, inv)`` lookup tables, or raise for large fields."""
        if self._add is None:
            raise ValueError(f"no tables for fields of order {self.order} > {TABLE_MAX_ORDER}")
        return self._add, self._mul, self._neg, self._inv

    def elements(self) -> list[FieldElem]:
        return enumerate_elements(self)

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if self.degree == 1:
                return FieldElem(self, value % self.order)
            if not 0 <= value < self.order:
                raise ValueError(f"code {value} out of range for GF({self.order})")
            return FieldElem(self, value)
        return FieldElem(self, self.from_digits(value))

    def _key(self):
        return (self.characteristic, self.degree, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.degree == 1:
            return f"GF({self.order})"
        return f"GF({self.characteristic}^{self.degree}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (build_field, (self.characteristic, self.degree))


@dataclass(frozen=True)
class FieldElem:
    """An element of a :class:`FieldSpec`, stored by its integer code."""

    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError("mismatched fields")
            return other.value
        if isinstance(other, int):
            return self.field(other).value
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElem(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElem(self.field, self.field.div(self.value, b))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.field.degree == 1:
            return str(self.value)
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mono)
        return "+".join(terms) or "0"


@functools.lru_cache(maxsize=None)
def build_field(p: int, k: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    """Construct GF(p^k) using the lexicographically smallest irreducible modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"characteristic {p!r} is not prime")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if p**k > max_order:
        raise ValueError(f"field order {p}^{k} exceeds maximum {max_order}")
    modulus = () if k == 1 else smallest_irreducible(p, k)
    return FieldSpec(p, k, modulus)


def field_of_order(q, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    """Accept a field order or an existing :class:`FieldSpec`."""
    if isinstance(q, FieldSpec):
        return q
    p, k = prime_power(q)
    return build_field(p, k, max_order)


_OPS = {
    "add": lambda F, a, b: F.add(a, b),
    "sub": lambda F, a, b: F.sub(a, b),
    "mul": lambda F, a, b: F.mul(a, b),
    "div": lambda F, a, b: F.div(a, b),
}


def arith(a: FieldElem, b, op: str) -> FieldElem:
    """Dispatch a named field operation.

    ``b`` is the second operand for binary ops, the exponent for ``pow``,
    and ignored for ``inv`` and ``neg``.
    """
    F = a.field
    if op == "neg":
        return FieldElem(F, F.neg(a.value))
    if op == "inv":
        return FieldElem(F, F.inv(a.value))
    if op == "pow":
        return FieldElem(F, F.pow(a.value, int(b)))
    if op not in _OPS:
        raise ValueError(f"unknown field operation {op!r}")
    if not isinstance(b, FieldElem) or b.field != F:
        raise ValueError("mismatched fields")
    return FieldElem(F, _OPS[op](F, a.value, b.value))


def enumerate_elements(f: FieldSpec) -> list[FieldElem]:
    """All ``q`` elements, zero first, ordered by integer code."""
    return [FieldElem(f, a) for a in range(f.order)]
