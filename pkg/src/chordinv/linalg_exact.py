"""Exact rational scalars and small dense matrices.

Scalars are :class:`fractions.Fraction`; matrices are immutable row-major
tuples of them. Determinants and inverses use fraction-free (Bareiss)
elimination over integers after clearing row denominators.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, MalformedInput, SingularMatrix

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(value) -> Fraction:
    """Accept an int, a Fraction or a string "p/q" / "p"."""
    if isinstance(value, bool):
        raise MalformedInput(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise MalformedInput(f"not a rational: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise MalformedInput(f"zero denominator: {value!r}")
        return Fraction(num, den)
    raise MalformedInput(f"not a rational: {value!r}")


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in data)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix must have at least one row and column")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RationalMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._data))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = list(zip(*other._data))
        return RationalMatrix(
            [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ocols] for r in self._data]
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix([[c * a for a in r] for r in self._data])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._data)
        return f"RationalMatrix([{body}])"

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self._data]

    @classmethod
    def from_json(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        try:
            return cls([[parse_rational(x) for x in r] for r in rows])
        except TypeError as exc:
            raise MalformedInput(f"bad matrix: {exc}") from None


def _integer_rows(M: RationalMatrix) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators; return rows and scales."""
    out, scales = [], []
    for r in M._data:
        d = lcm(*(x.denominator for x in r))
        out.append([int(x * d) for x in r])
        scales.append(d)
    return out, scales


def _bareiss(A: list[list[int]], ncols_pivot: int) -> tuple[int, list[list[int]]]:
    """Fraction-free Gauss-Jordan on the integer rows ``A`` (modified in place).

    Pivots are taken in the first ``ncols_pivot`` columns. Returns ``(sign, A)``
    where the left block becomes ``±det · I``; returns sign 0 when singular.
    Every division below is exact (entries stay minors of the input).
    """
    n = len(A)
    sign = 1
    prev = 1
    for k in range(ncols_pivot):
        piv = next((r for r in range(k, n) if A[r][k] != 0), None)
        if piv is None:
            return 0, A
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        p = A[k][k]
        rowk = A[k]
        for i in range(n):
            if i == k:
                continue
            f = A[i][k]
            A[i] = [(p * x - f * y) // prev for x, y in zip(A[i], rowk)]
        prev = p
    return sign, A


def det_exact(M: RationalMatrix) -> Fraction:
    """Exact determinant by Bareiss elimination."""
    if not M.is_square:
        raise DimensionMismatch(f"determinant of non-square {M.shape} matrix")
    n = M.rows
    A, scales = _integer_rows(M)
    # plain (lower-only) Bareiss is enough for the determinant
    sign, prev = 1, 1
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if A[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        p = A[k][k]
        for i in range(k + 1, n):
            f = A[i][k]
            A[i] = [0] * (k + 1) + [(p * A[i][j] - f * A[k][j]) // prev for j in range(k + 1, n)]
        prev = p
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(sign * A[n - 1][n - 1], denom)


def invert_exact(M: RationalMatrix) -> RationalMatrix:
    """Exact inverse via fraction-free Gauss-Jordan on ``[A | I]``."""
    if not M.is_square:
        raise DimensionMismatch(f"inverse of non-square {M.shape} matrix")
    n = M.rows
    A, scales = _integer_rows(M)
    aug = [row + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    sign, aug = _bareiss(aug, n)
    if sign == 0:
        raise SingularMatrix("matrix is singular")
    d = aug[0][0]  # = ±det of the integer matrix, same on every diagonal slot
    # A_int = S·M with S = diag(scales), so M^{-1} = A_int^{-1}·S
    return RationalMatrix([[Fraction(aug[i][n + j] * scales[j], d) for j in range(n)] for i in range(n)])
