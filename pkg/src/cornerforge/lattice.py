"""Exact integer linear algebra.

Matrices are small (rank <= ~8) and entries are kept in the signed 64-bit
range; anything outside it raises :class:`LatticeOverflowError`. Rational
work (ranks, projections) goes through :class:`fractions.Fraction`.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import LatticeOverflowError, NoLeftInverseError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

Vector = tuple  # tuple[int, ...]


def check_int(value) -> int:
    value = operator.index(value)
    if not INT64_MIN <= value <= INT64_MAX:
        raise LatticeOverflowError(f"integer {value} exceeds the 64-bit range")
    return value


def as_vector(values: Iterable) -> Vector:
    return tuple(check_int(v) for v in values)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence) -> Vector:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g in (0, 1):
        return as_vector(v)
    return as_vector(x // g for x in v)


def primitive_from_rational(v: Sequence[Fraction]) -> Vector:
    """Smallest positive multiple of a rational vector that is integral and primitive."""
    if all(isinstance(x, int) for x in v):
        return primitive(v)
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def canonical_key(v: Sequence) -> tuple:
    """Sort key used for every emitted vector list: total degree, then reverse lex."""
    return (sum(v), tuple(-x for x in v))


def sort_vectors(vectors: Iterable[Sequence]) -> tuple:
    return tuple(sorted({tuple(v) for v in vectors}, key=canonical_key))


class IntMatrix:
    """Immutable integer matrix with explicit shape (zero-size matrices allowed)."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        rows = tuple(as_vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        self._rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "IntMatrix":
        columns = [tuple(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def columns(self) -> tuple:
        return tuple(tuple(r[j] for r in self._rows) for j in range(self.ncols))

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.columns, self.nrows)

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for a {self.shape} matrix")
        return as_vector(dot(r, v) for r in self._rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns
        return IntMatrix([[dot(r, c) for c in cols] for r in self._rows], other.ncols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in r] for r in self._rows], self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, ncols={self.ncols})"

    def select_rows(self, idx: Iterable[int]) -> "IntMatrix":
        return IntMatrix([self._rows[i] for i in idx], self.ncols)

    def select_columns(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix([[r[j] for j in idx] for r in self._rows], len(idx))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return IntMatrix([a + b for a, b in zip(self._rows, other._rows)], self.ncols + other.ncols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return IntMatrix(self._rows + other._rows, self.ncols)

    def rank(self) -> int:
        return rational_rank(self._rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        # Bareiss fraction-free elimination
        a = [list(r) for r in self._rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return check_int(sign * a[n - 1][n - 1])

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.det()) == 1


# -- rational helpers --------------------------------------------------------


def _echelon_int(rows: Sequence[Sequence]) -> tuple:
    """Fraction-free reduced echelon form: (primitive integer rows, pivot columns).

    Each returned row is zero in every other row's pivot column.
    """
    a = [[int(x) for x in r] for r in rows]
    pivots = []
    m = len(a)
    n = len(a[0]) if a else 0
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        piv = a[r][c]
        for i in range(m):
            f = a[i][c]
            if i != r and f:
                g = gcd(piv, f)
                row = [(piv // g) * x - (f // g) * y for x, y in zip(a[i], a[r])]
                a[i] = list(primitive(row)) if any(row) else row
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def _rref(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form over Q: (rows, pivot columns)."""
    if any(isinstance(x, Fraction) for r in rows for x in r):
        den = 1
        for r in rows:
            for x in r:
                d = Fraction(x).denominator
                den = den * d // gcd(den, d)
        rows = [[int(Fraction(x) * den) for x in r] for r in rows]
    red, pivots = _echelon_int(rows)
    return [[Fraction(x, row[p]) for x in row] for row, p in zip(red, pivots)], pivots


def rational_rank(rows: Sequence[Sequence]) -> int:
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return len(_echelon_int(rows)[1])


def rational_nullspace(rows: Sequence[Sequence], n: int) -> list:
    """Basis (as primitive integer vectors) of {x in Q^n : r.x = 0 for all rows}."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    red, pivots = _echelon_int(rows)
    free = [c for c in range(n) if c not in pivots]
    lcm = 1
    for row, p in zip(red, pivots):
        lcm = lcm * row[p] // gcd(lcm, row[p])
    basis = []
    for f in free:
        x = [0] * n
        x[f] = lcm
        for row, p in zip(red, pivots):
            x[p] = -row[f] * (lcm // row[p])
        basis.append(primitive(x))
    return basis


def orthogonal_projection(v: Sequence, basis: Sequence[Sequence]) -> list:
    """Component of v orthogonal to span(basis), as exact rationals."""
    basis = [b for b in basis if any(b)]
    if not basis:
        return list(v)
    v = [Fraction(x) for x in v]
    gram = [[Fraction(dot(a, b)) for b in basis] for a in basis]
    rhs = [Fraction(dot(a, v)) for a in basis]
    coeffs = solve_rational(gram, rhs)
    if coeffs is None:
        # dependent basis: project onto an independent subset
        red, pivots = _rref([list(b) for b in zip(*basis)])
        return orthogonal_projection(v, [basis[i] for i in pivots])
    return [x - sum(c * b[i] for c, b in zip(coeffs, basis)) for i, x in enumerate(v)]


def solve_rational(a: Sequence[Sequence], b: Sequence):
    """Unique solution of a square nonsingular system over Q, or None."""
    n = len(a)
    aug = [list(row) + [y] for row, y in zip(a, b)]
    if any(isinstance(x, Fraction) for row in aug for x in row):
        red, pivots = _rref(aug)
        if len(pivots) != n or n in pivots:
            return None
        return [red[i][n] for i in range(n)]
    red, pivots = _echelon_int(aug)
    if len(pivots) != n or n in pivots:
        return None
    return [Fraction(row[n], row[p]) for row, p in zip(red, pivots)]


# -- Hermite and Smith normal forms ------------------------------------------


def _hnf(m: IntMatrix, track: bool) -> tuple:
    """Row echelon reduction by repeated division with the smallest pivot.

    Uses Python integers internally; only the result is range checked.
    """
    rows, cols = m.shape
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)] if track else None
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        while True:
            live = [i for i in range(pr, rows) if a[i][c]]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(a[i][c]))
            if i0 != pr:
                a[pr], a[i0] = a[i0], a[pr]
                if track:
                    u[pr], u[i0] = u[i0], u[pr]
            piv = a[pr][c]
            done = True
            for i in range(pr + 1, rows):
                q = a[i][c] // piv
                if q:
                    a[i] = [e - q * f for e, f in zip(a[i], a[pr])]
                    if track:
                        u[i] = [e - q * f for e, f in zip(u[i], u[pr])]
                if a[i][c]:
                    done = False
            if done:
                break
        if a[pr][c] == 0:
            continue
        if a[pr][c] < 0:
            a[pr] = [-e for e in a[pr]]
            if track:
                u[pr] = [-e for e in u[pr]]
        piv = a[pr][c]
        for i in range(pr):
            q = a[i][c] // piv
            if q:
                a[i] = [e - q * f for e, f in zip(a[i], a[pr])]
                if track:
                    u[i] = [e - q * f for e, f in zip(u[i], u[pr])]
        pr += 1
    return a, u


def hermite_normal_form(m: IntMatrix) -> tuple:
    """Row-style Hermite normal form: returns (H, U) with U unimodular and U @ m = H.

    H is in row echelon form with positive pivots, entries above each pivot
    reduced into [0, pivot), and zero rows at the bottom.
    """
    a, u = _hnf(m, True)
    return IntMatrix(a, m.ncols), IntMatrix(u, m.nrows)


def hermite_rows(m: IntMatrix) -> IntMatrix:
    """H alone; cheaper than :func:`hermite_normal_form` and never overflows on U."""
    a, _ = _hnf(m, False)
    return IntMatrix(a, m.ncols)


def smith_normal_form(m: IntMatrix) -> tuple:
    """Smith normal form: returns (D, U, V) with U, V unimodular and U @ m @ V = D.

    The diagonal of D is nonnegative and satisfies d1 | d2 | ... .
    """
    rows, cols = m.shape
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        a[dst] = [e + k * f for e, f in zip(a[dst], a[src])]
        u[dst] = [e + k * f for e, f in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-e for e in a[t]]
            u[t] = [-e for e in u[t]]
    return IntMatrix(a, cols), IntMatrix(u, rows), IntMatrix(v, cols)


class NormalForms(NamedTuple):
    hermite: IntMatrix
    hermite_transform: IntMatrix
    smith: IntMatrix
    smith_left: IntMatrix
    smith_right: IntMatrix

    @property
    def invariant_factors(self) -> tuple:
        d = self.smith
        return tuple(d[i, i] for i in range(min(d.shape)) if d[i, i])


def normal_forms(m: IntMatrix) -> NormalForms:
    if m.nrows == 0 or m.ncols == 0:
        raise ValueError("normal_forms needs a nonempty matrix")
    h, hu = hermite_normal_form(m)
    d, u, v = smith_normal_form(m)
    return NormalForms(h, hu, d, u, v)


def inverse_unimodular(u: IntMatrix) -> IntMatrix:
    n = u.nrows
    if n == 0:
        return u
    inv = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve_rational(u.rows, e)
        if x is None or any(c.denominator != 1 for c in x):
            raise ValueError("matrix is not unimodular")
        inv.append([int(c) for c in x])
    return IntMatrix.from_columns(inv, n)


# -- integer systems ---------------------------------------------------------


def solve_integer(a: IntMatrix, b: Sequence) -> Optional[Vector]:
    """An integer x with a @ x = b, or None when no integer solution exists."""
    b = as_vector(b)
    if len(b) != a.nrows:
        raise ValueError("right-hand side has the wrong length")
    if a.ncols == 0:
        return () if not any(b) else None
    if a.nrows == 0:
        return tuple([0] * a.ncols)
    d, u, v = smith_normal_form(a)
    c = u.apply(b)
    y = [0] * a.ncols
    for i in range(a.nrows):
        di = d[i, i] if i < a.ncols else 0
        if di == 0:
            if c[i]:
                return None
            continue
        if c[i] % di:
            return None
        y[i] = c[i] // di
    return v.apply(y)


def integer_kernel(a: IntMatrix) -> list:
    """Basis of the (saturated) lattice {x in Z^n : a @ x = 0}."""
    n = a.ncols
    if a.nrows == 0:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    d, _u, v = smith_normal_form(a)
    r = sum(1 for i in range(min(d.shape)) if d[i, i])
    return [v.col(j) for j in range(r, n)]


class Sublattice:
    """A sublattice of Z^n stored by its canonical (Hermite) basis."""

    __slots__ = ("ambient_rank", "basis")

    def __init__(self, ambient_rank: int, vectors: Iterable[Sequence] = ()):
        self.ambient_rank = ambient_rank
        vectors = [as_vector(v) for v in vectors if any(v)]
        if any(len(v) != ambient_rank for v in vectors):
            raise ValueError("vector length differs from the ambient rank")
        if vectors:
            h = hermite_rows(IntMatrix(vectors, ambient_rank))
            self.basis = tuple(r for r in h.rows if any(r))
        else:
            self.basis = ()

    @classmethod
    def full(cls, n: int) -> "Sublattice":
        return cls(n, IntMatrix.identity(n).rows)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> IntMatrix:
        """Basis vectors as the columns of an n x rank matrix."""
        return IntMatrix.from_columns(self.basis, self.ambient_rank)

    def contains(self, v: Sequence) -> bool:
        if not self.basis:
            return not any(v)
        return solve_integer(self.matrix, v) is not None

    def coordinates(self, v: Sequence) -> Optional[Vector]:
        if not self.basis:
            return () if not any(v) else None
        return solve_integer(self.matrix, v)

    def saturation(self) -> "Sublattice":
        """span(self) intersected with Z^n."""
        n = self.ambient_rank
        eqs = rational_nullspace(list(self.basis), n) if self.basis else [
            tuple(int(i == j) for j in range(n)) for i in range(n)
        ]
        if not eqs:
            return Sublattice.full(n)
        return Sublattice(n, integer_kernel(IntMatrix(eqs, n)))

    def is_saturated(self) -> bool:
        return self == self.saturation()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sublattice):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self.basis))

    def __repr__(self) -> str:
        return f"Sublattice({self.ambient_rank}, {[list(b) for b in self.basis]})"


def saturated_span(n: int, vectors: Iterable[Sequence]) -> Sublattice:
    return Sublattice(n, vectors).saturation()


def left_inverse_on_sublattice(nu: IntMatrix, domain: Sublattice) -> IntMatrix:
    """Integer tau with tau @ nu @ v = v for every basis vector v of ``domain``.

    Among the solutions, the one from Smith back-substitution with all free
    parameters set to zero is returned.
    """
    if domain.ambient_rank != nu.ncols:
        raise ValueError("domain does not live in the source lattice of nu")
    b = domain.matrix
    c = nu @ b
    k = domain.rank
    if c.rank() != k:
        raise NoLeftInverseError("nu is not injective on the domain")
    ct = c.T
    rows = []
    for i in range(nu.ncols):
        t = solve_integer(ct, b.row(i))
        if t is None:
            raise NoLeftInverseError("no integral left inverse exists on the domain")
        rows.append(t)
    return IntMatrix(rows, nu.nrows)


def integer_right_inverse(m: IntMatrix) -> IntMatrix:
    """Integer z with m @ z = identity; m must have columns generating Z^rows."""
    cols = []
    for j in range(m.nrows):
        e = [int(i == j) for i in range(m.nrows)]
        x = solve_integer(m, e)
        if x is None:
            raise NoLeftInverseError("columns do not generate the full lattice")
        cols.append(x)
    return IntMatrix.from_columns(cols, m.ncols)


class LatticeQuotient(NamedTuple):
    free_rank: int
    torsion: tuple
    projection: Optional[IntMatrix]


def lattice_quotient(ambient_rank: int, k: Sublattice) -> LatticeQuotient:
    """Structure of Z^n / K: free rank, torsion orders and (if torsion-free) a projection."""
    if k.ambient_rank != ambient_rank:
        raise ValueError("sublattice does not sit in the ambient lattice")
    if k.rank == 0:
        return LatticeQuotient(ambient_rank, (), IntMatrix.identity(ambient_rank))
    d, u, _v = smith_normal_form(k.matrix)
    factors = [d[i, i] for i in range(min(d.shape)) if d[i, i]]
    r = len(factors)
    torsion = tuple(f for f in factors if f > 1)
    projection = None
    if not torsion:
        projection = IntMatrix(u.rows[r:], ambient_rank)
    return LatticeQuotient(ambient_rank - r, torsion, projection)


def split_quotient(d: int, k: Sublattice) -> tuple:
    """Unimodular change of basis adapted to a saturated sublattice K of Z^d.

    Returns (U, Uinv) where U sends K onto the first rank(K) coordinates.
    """
    s = k.rank
    if s == 0:
        eye = IntMatrix.identity(d)
        return eye, eye
    dm, u, _ = smith_normal_form(k.matrix)
    if any(dm[i, i] != 1 for i in range(s)):
        raise ValueError("sublattice is not saturated")
    return u, inverse_unimodular(u)


__all__ = [
    "IntMatrix",
    "LatticeQuotient",
    "NormalForms",
    "Sublattice",
    "as_vector",
    "canonical_key",
    "check_int",
    "dot",
    "hermite_normal_form",
    "hermite_rows",
    "integer_kernel",
    "integer_right_inverse",
    "inverse_unimodular",
    "lattice_quotient",
    "left_inverse_on_sublattice",
    "normal_forms",
    "orthogonal_projection",
    "primitive",
    "primitive_from_rational",
    "rational_nullspace",
    "rational_rank",
    "saturated_span",
    "smith_normal_form",
    "solve_integer",
    "solve_rational",
    "sort_vectors",
    "split_quotient",
]
