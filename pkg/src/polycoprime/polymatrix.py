"""Matrices over F[z]: determinants, Hermite forms, gcld/lcrm and coprimeness tests."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gf import FieldSpec
from .polyring import Poly, gcd_monic, setwise_gcd

MINORS_MAX_COLS = 12


class PolyMatrix:
    """A rows x cols matrix of :class:`Poly` over a single field.

    Entries are held row-major in a tuple of tuples.  Instances are treated
    as immutable; every operation returns a new matrix.
    """

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldSpec, entries):
        entries = tuple(tuple(row) for row in entries)
        self.field = field
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        if any(len(r) != self.cols for r in entries):
            raise ValueError("ragged matrix rows")
        self.entries = tuple(
            tuple(e if isinstance(e, Poly) else Poly(field, (e,)) for e in row)
            for row in entries
        )
        for row in self.entries:
            for e in row:
                if e.field != field:
                    raise ValueError("matrix entries over different fields")

    @classmethod
    def from_coeffs(cls, field: FieldSpec, rows):
        """Build from nested lists of coefficient lists (low degree first)."""
        return cls(field, [[Poly(field, c) for c in row] for row in rows])

    @classmethod
    def zeros(cls, field, rows, cols):
        z = Poly.zero(field)
        return cls(field, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        z, one = Poly.zero(field), Poly.one(field)
        return cls(field, [[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def constant(cls, field, rows):
        return cls(field, [[Poly(field, (c,)) for c in row] for row in rows])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(self.field, list(zip(*self.entries)) if self.rows else [])

    T = property(transpose)

    def submatrix(self, rows, cols) -> PolyMatrix:
        return PolyMatrix(self.field, [[self.entries[i][j] for j in cols] for i in rows])

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def is_constant(self) -> bool:
        return all(e.deg <= 0 for row in self.entries for e in row)

    def degree(self) -> int:
        return max((e.deg for row in self.entries for e in row), default=-1)

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.field, [[a + b for a, b in zip(r, s)]
                                       for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return PolyMatrix(self.field, [[-a for a in r] for r in self.entries])

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = Poly.zero(self.field)
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a.coeffs and b.coeffs:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.field, out)

    def scale(self, f: Poly) -> PolyMatrix:
        return PolyMatrix(self.field, [[f * a for a in r] for r in self.entries])

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in r) for r in self.entries)
        return f"PolyMatrix[{body}]"


def hstack(ms) -> PolyMatrix:
    ms = list(ms)
    if len({m.rows for m in ms}) != 1:
        raise ValueError("hstack needs equal row counts")
    return PolyMatrix(ms[0].field, [sum((m.entries[i] for m in ms), ()) for i in range(ms[0].rows)])


def vstack(ms) -> PolyMatrix:
    ms = list(ms)
    if len({m.cols for m in ms}) != 1:
        raise ValueError("vstack needs equal column counts")
    return PolyMatrix(ms[0].field, [r for m in ms for r in m.entries])


# --- determinants -------------------------------------------------------------

def _require_square(M: PolyMatrix):
    if M.rows != M.cols:
        raise ValueError(f"square matrix required, got {M.shape}")


def det_poly(M: PolyMatrix) -> Poly:
    """Fraction-free (Bareiss) determinant; every division is exact in F[z]."""
    _require_square(M)
    n = M.rows
    F = M.field
    if n == 0:
        return Poly.one(F)
    a = [list(r) for r in M.entries]
    sign = 1
    prev = Poly.one(F)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero(F)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (akk * a[i][j] - aik * a[k][j]).exact_div(prev)
            a[i][k] = Poly.zero(F)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def det_cofactor(M: PolyMatrix) -> Poly:
    """Laplace expansion along the first row; the oracle for small sizes."""
    _require_square(M)
    n = M.rows
    if n == 0:
        return Poly.one(M.field)
    if n == 1:
        return M[0, 0]
    total = Poly.zero(M.field)
    for j in range(n):
        if M[0, j].is_zero():
            continue
        minor = M.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = M[0, j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def fullsize_minors(M: PolyMatrix) -> list[Poly]:
    if M.rows > M.cols:
        raise ValueError("fullsize minors need rows <= cols")
    rows = range(M.rows)
    return [det_poly(M.submatrix(rows, cs)) for cs in itertools.combinations(range(M.cols), M.rows)]


def is_unimodular(M: PolyMatrix) -> bool:
    return det_poly(M).deg == 0


# --- Hermite form ---------------------------------------------------------------

def _row_hermite(M: PolyMatrix):
    F = M.field
    n = M.rows
    H = [list(r) for r in M.entries]
    U = [list(r) for r in PolyMatrix.identity(F, n).entries]

    def addmul(dst, src, f):
        # row_dst -= f * row_src
        H[dst] = [a - f * b if b.coeffs else a for a, b in zip(H[dst], H[src])]
        U[dst] = [a - f * b if b.coeffs else a for a, b in zip(U[dst], U[src])]

    r = 0
    for c in range(M.cols):
        if r == n:
            break
        pivoted = False
        while True:
            cands = [i for i in range(r, n) if H[i][c].coeffs]
            if not cands:
                break
            piv = min(cands, key=lambda i: (H[i][c].deg, i))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            pivoted = True
            clean = True
            for i in range(r + 1, n):
                if H[i][c].coeffs:
                    addmul(i, r, H[i][c] // H[r][c])
                    if H[i][c].coeffs:
                        clean = False
            if clean:
                break
        if not pivoted:
            continue
        inv = F.inv(H[r][c].lead)
        if inv != 1:
            H[r] = [a.scale(inv) for a in H[r]]
            U[r] = [a.scale(inv) for a in U[r]]
        for i in range(r):
            if H[i][c].coeffs:
                f = H[i][c] // H[r][c]
                if f.coeffs:
                    addmul(i, r, f)
        r += 1
    return PolyMatrix(F, H), PolyMatrix(F, U)


def hermite_form(M: PolyMatrix, side: str = "row"):
    """Hermite normal form by unimodular row or column operations.

    ``side="row"`` returns ``(H, U)`` with ``U @ M == H`` and H in row echelon
    form; ``side="column"`` returns ``(H, U)`` with ``M @ U == H`` and H in
    column echelon form.  Pivots are monic and every entry on the pivot's
    other side has smaller degree than the pivot.
    """
    if side in ("row", "row-ops"):
        return _row_hermite(M)
    if side in ("column", "col", "column-ops"):
        H, U = _row_hermite(M.transpose())
        return H.transpose(), U.transpose()
    raise ValueError(f"unknown side {side!r}")


def _pivot_rank(H: PolyMatrix, side: str) -> int:
    if side == "row":
        return sum(1 for r in H.entries if any(e.coeffs for e in r))
    return sum(1 for j in range(H.cols) if any(e.coeffs for e in H.col(j)))


def _left_solve_lower(G: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    """Solve ``G @ X == B`` for lower-triangular G with nonzero diagonal, exactly."""
    p = G.rows
    X = [[None] * B.cols for _ in range(p)]
    for j in range(B.cols):
        for i in range(p):
            acc = B[i, j]
            for k in range(i):
                if G[i, k].coeffs:
                    acc = acc - G[i, k] * X[k][j]
            X[i][j] = acc.exact_div(G[i, i])
    return PolyMatrix(G.field, X)


def gcld(Hs) -> PolyMatrix:
    """Greatest common left divisor of matrices sharing a row count.

    Unimodular results are normalised to the identity.
    """
    Hs = list(Hs)
    A = hstack(Hs)
    p = A.rows
    H, _ = hermite_form(A, "column")
    if _pivot_rank(H, "column") < p:
        raise ValueError("gcld needs the concatenation to have full row rank")
    G = H.submatrix(range(p), range(p))
    for Hi in Hs:
        _left_solve_lower(G, Hi)  # raises if G does not divide Hi
    if all(G[i, i].deg == 0 for i in range(p)):
        return PolyMatrix.identity(A.field, p)
    return G


def is_left_prime(M: PolyMatrix, method: str = "auto") -> bool:
    """True when M has a polynomial right inverse.

    ``method`` is ``"minors"`` (gcd of fullsize minors is a unit),
    ``"hermite"`` (column Hermite form is ``[I | 0]``), or ``"auto"``.
    """
    if M.rows > M.cols:
        raise ValueError("left primeness needs rows <= cols")
    if M.rows == 0:
        return True
    if method == "auto":
        method = "minors" if M.cols <= MINORS_MAX_COLS else "hermite"
    if method == "minors":
        minors = fullsize_minors(M)
        if all(m.is_zero() for m in minors):
            return False
        return setwise_gcd(minors).deg == 0
    if method == "hermite":
        H, _ = hermite_form(M, "column")
        if _pivot_rank(H, "column") < M.rows:
            return False
        return all(H[i, i].deg == 0 for i in range(M.rows))
    raise ValueError(f"unknown method {method!r}")


def lcrm(A: PolyMatrix, B: PolyMatrix, check: bool = True):
    """Least common right multiple of two nonsingular square matrices.

    Returns ``(M, X, Y)`` with ``M == A @ X == B @ Y``.  The multipliers come
    from the last m columns of the unimodular U in ``[A B] @ U == [G 0]``,
    which span the right kernel of ``[A B]``.
    """
    _require_square(A)
    _require_square(B)
    if A.shape != B.shape:
        raise ValueError("lcrm needs equal sizes")
    dA, dB = det_poly(A), det_poly(B)
    if dA.is_zero() or dB.is_zero():
        raise ValueError("lcrm needs nonsingular inputs")
    m = A.rows
    _, U = hermite_form(hstack([A, B]), "column")
    X = U.submatrix(range(m), range(m, 2 * m))
    Y = -U.submatrix(range(m, 2 * m), range(m, 2 * m))
    M = A @ X
    if check:
        if M != B @ Y:
            raise ArithmeticError("lcrm postcondition A@X == B@Y violated")
        if det_poly(M).deg > dA.deg + dB.deg:
            raise ArithmeticError("lcrm determinant degree exceeds deg det A + deg det B")
    return M, X, Y


def right_divides(D: PolyMatrix, M: PolyMatrix) -> bool:
    """True when ``M == D @ X`` for some polynomial X (D square nonsingular)."""
    H, U = hermite_form(D, "column")  # D @ U == H lower triangular
    try:
        _left_solve_lower(H, M)
    except ArithmeticError:
        return False
    return True


def lcrm_many(Ds) -> PolyMatrix:
    Ds = list(Ds)
    if not Ds:
        raise ValueError("lcrm of an empty list")
    M = Ds[0]
    if det_poly(M).is_zero():
        raise ValueError("lcrm needs nonsingular inputs")
    for D in Ds[1:]:
        M, _, _ = lcrm(M, D)
    return M


@dataclass(frozen=True)
class ChainMatrix:
    blocks: tuple
    assembled: PolyMatrix


def build_block_chain(Ds) -> ChainMatrix:
    """Staircase ``[[D1 D2 0 ...], [0 D2 D3 ...], ...]`` of size (N-1)m x Nm."""
    Ds = list(Ds)
    if len(Ds) < 2:
        raise ValueError("block chain needs at least two blocks")
    m = Ds[0].rows
    if any(D.shape != (m, m) for D in Ds):
        raise ValueError("block chain needs equal square blocks")
    F = Ds[0].field
    zero = Poly.zero(F)
    n = len(Ds)
    rows = []
    for b in range(n - 1):
        for i in range(m):
            row = [zero] * (n * m)
            row[b * m:(b + 1) * m] = Ds[b].entries[i]
            row[(b + 1) * m:(b + 2) * m] = Ds[b + 1].entries[i]
            rows.append(row)
    return ChainMatrix(tuple(Ds), PolyMatrix(F, rows))


def is_mutually_left_coprime_block(Ds, method: str = "auto") -> bool:
    return is_left_prime(build_block_chain(Ds).assembled, method)


def is_mutually_left_coprime_direct(Ds) -> bool:
    """Each D_i is left coprime with the lcrm of the remaining matrices."""
    Ds = list(Ds)
    if len(Ds) < 2:
        raise ValueError("need at least two matrices")
    for D in Ds:
        if det_poly(D).is_zero():
            raise ValueError("direct criterion needs nonsingular matrices")
    for i, D in enumerate(Ds):
        L = lcrm_many(Ds[:i] + Ds[i + 1:])
        if not is_left_prime(hstack([D, L])):
            return False
    return True


# --- constant matrices ---------------------------------------------------------

def const_rank(M, field: FieldSpec | None = None) -> int:
    """Rank over the field of a constant matrix.

    ``M`` is either a :class:`PolyMatrix` with degree <= 0 entries or a nested
    list of element codes together with ``field``.
    """
    if isinstance(M, PolyMatrix):
        if not M.is_constant():
            raise ValueError("const_rank needs a constant matrix")
        field = M.field
        rows = [[e.coeffs[0] if e.coeffs else 0 for e in r] for r in M.entries]
    else:
        if field is None:
            raise ValueError("field required for a raw matrix")
        rows = [list(r) for r in M]
    F = field
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][c])
        prow = [F.mul(inv, x) for x in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = F.neg(rows[i][c])
                rows[i] = [F.add(x, F.mul(f, y)) for x, y in zip(rows[i], prow)]
        rank += 1
    return rank
