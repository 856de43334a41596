"""Exact rational scalars, dense matrices and the linear algebra built on them.

Scalars are :class:`fractions.Fraction`; vectors are plain tuples of
fractions.  :class:`RatMatrix` is a small immutable row-major matrix.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import permutations
from typing import Iterable, NamedTuple, Sequence

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


class DimensionError(ValueError):
    pass


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    """Parse the canonical ``p/q`` form (``q`` may be omitted)."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational in p/q form: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vector(entries: Iterable) -> tuple:
    return tuple(as_rational(e) for e in entries)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"length mismatch {len(u)} != {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class RatMatrix:
    """Immutable dense matrix of :class:`Fraction` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_rational(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionError(
                f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> RatMatrix:
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)],
                             cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> RatMatrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> RatMatrix:
        return RatMatrix(self.cols, self.rows,
                         (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(e) for e in self.row(i)) + "]"
                         for i in range(self.rows))
        return f"RatMatrix([{body}])"

    def _check_same_shape(self, other: RatMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, c) -> RatMatrix:
        c = as_rational(c)
        return RatMatrix(self.rows, self.cols, (c * a for a in self.entries))

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        return RatMatrix(self.rows, other.cols,
                         (dot(self.row(i), cols[j]) for i in range(self.rows)
                          for j in range(other.cols)))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(dot(self.row(i), v) for i in range(self.rows))


def linear_combination(coeffs: Sequence, matrices: Sequence[RatMatrix]) -> RatMatrix:
    """Return ``sum(c * M)``; all matrices must share one shape."""
    rows, cols = matrices[0].shape
    acc = [Fraction(0)] * (rows * cols)
    for c, m in zip(coeffs, matrices):
        if m.shape != (rows, cols):
            raise DimensionError("shape mismatch in linear combination")
        c = as_rational(c)
        if c == 0:
            continue
        for k, e in enumerate(m.entries):
            if e:
                acc[k] += c * e
    return RatMatrix(rows, cols, acc)


def _bareiss(a: list[list[int]]) -> int:
    # In-place fraction-free elimination; every division below is exact.
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def det(m: RatMatrix) -> Fraction:
    """Exact determinant by Bareiss elimination after clearing denominators."""
    if not m.is_square:
        raise DimensionError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = 1
    rows = []
    for i in range(n):
        r = m.row(i)
        lcm = math.lcm(*(e.denominator for e in r))
        scale *= lcm
        rows.append([e.numerator * (lcm // e.denominator) for e in r])
    return Fraction(_bareiss(rows), scale)


def det_cofactor(rows: Sequence[Sequence]):
    """Determinant by Laplace expansion along the first row.

    Works over any commutative ring whose elements support ``+``, ``-`` and
    ``*`` (fractions, ints, polynomials).  Exponential cost; meant as an
    independent cross-check on small matrices.
    """
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        entry = rows[0][j]
        minor = [[r[c] for c in range(n) if c != j] for r in rows[1:]]
        term = entry * det_cofactor(minor)
        if total is None:
            total = term
        elif j % 2:
            total = total - term
        else:
            total = total + term
    return total


def det_leibniz(m: RatMatrix) -> Fraction:
    """Permutation-sum determinant; only for tiny matrices in tests."""
    n = m.rows
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = Fraction(1)
        for i in range(n):
            prod *= m[i, perm[i]]
        total += -prod if inversions % 2 else prod
    return total


def rref(m: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [e * inv for e in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: RatMatrix) -> tuple[list[tuple], list[int]]:
    """Right null space from the RREF.

    Returns ``(basis, free_columns)``: basis vector ``k`` has entry 1 at
    ``free_columns[k]`` and 0 at every other free column, so coordinates of
    a null-space vector are read off at the free columns.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis, free


def normalize(v: Sequence) -> tuple:
    """Scale so the first nonzero entry is 1."""
    lead = next((e for e in v if e != 0), None)
    if lead is None:
        return tuple(v)
    return tuple(e / lead for e in v)


def kernel_basis(m: RatMatrix) -> list[tuple]:
    """Basis of the right null space, each vector with leading entry 1."""
    return [normalize(v) for v in nullspace(m)[0]]


class Solution(NamedTuple):
    vector: tuple
    non_unique: bool


def solve(m: RatMatrix, b: Sequence) -> Solution | None:
    """Solve ``m x = b`` exactly.

    Returns ``None`` when the system is inconsistent.  When the solution set
    is positive-dimensional, free variables are set to 0 and ``non_unique``
    is set.
    """
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {m.rows} rows")
    b = vector(b)
    aug = RatMatrix(m.rows, m.cols + 1,
                    (e for i in range(m.rows) for e in (*m.row(i), b[i])))
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[m.cols]
    return Solution(tuple(x), len(pivots) < m.cols)
