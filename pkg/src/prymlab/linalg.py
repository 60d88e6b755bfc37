"""Exact linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction` entries; no floating
point is ever introduced.  Matrices are small (rank a few hundred at most), so
plain Gauss-Jordan elimination on lists of rows is adequate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class RationalMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        self.rows: tuple[Vector, ...] = data
        self.nrows = len(data)
        self.ncols = ncols

    # construction helpers

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(([1 if i == j else 0 for j in range(n)] for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls(([0] * ncols for _ in range(nrows)), ncols=ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "RationalMatrix":
        return cls(([col[i] for col in columns] for i in range(nrows)), ncols=len(columns))

    @classmethod
    def block_diagonal(cls, blocks: Sequence["RationalMatrix"]) -> "RationalMatrix":
        n = sum(b.nrows for b in blocks)
        rows = [[Fraction(0)] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                rows[off + i][off:off + b.ncols] = row
            off += b.nrows
        return cls(rows, ncols=n)

    # basic protocol

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"RationalMatrix([{body}])"

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.columns(), ncols=self.nrows)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix(
            (tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            ncols=self.ncols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix(
            (tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            ncols=self.ncols,
        )

    def scale(self, c) -> "RationalMatrix":
        c = _as_fraction(c)
        return RationalMatrix((tuple(c * x for x in r) for r in self.rows), ncols=self.ncols)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        out = []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append(tuple(sum((x * c[k] for k, x in nz), Fraction(0)) for c in cols))
        return RationalMatrix(out, ncols=other.ncols)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum((x * y for x, y in zip(r, v) if x and y), Fraction(0)) for r in self.rows)

    def __pow__(self, n: int) -> "RationalMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return inverse(self) ** (-n)
        result = RationalMatrix.identity(self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[_as_fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        prow = m[r]
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for k in nz:
                        row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(M: RationalMatrix) -> int:
    return len(rref(M.rows, M.ncols)[1])


def nullspace(M: RationalMatrix) -> list[Vector]:
    """Basis of {v : M v = 0}, one vector per free column, in column order."""
    red, pivots = rref(M.rows, M.ncols)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def determinant(M: RationalMatrix) -> Fraction:
    if not M.is_square:
        raise ValueError("determinant of a non-square matrix")
    m = [list(r) for r in M.rows]
    n = M.nrows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        piv = m[c][c]
        det *= piv
        for i in range(c + 1, n):
            f = m[i][c] / piv
            if f:
                for k in range(c, n):
                    m[i][k] -= f * m[c][k]
    return det


def inverse(M: RationalMatrix) -> RationalMatrix:
    if not M.is_square:
        raise ValueError("inverse of a non-square matrix")
    n = M.nrows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.rows)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return RationalMatrix((row[n:] for row in red), ncols=n)


@dataclass(frozen=True)
class RationalSubspace:
    """Subspace of Q^n stored by its canonical reduced echelon basis."""

    ambient: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int) -> "RationalSubspace":
        vecs = [tuple(_as_fraction(x) for x in v) for v in vectors]
        if any(len(v) != ambient for v in vecs):
            raise ValueError("dimension mismatch")
        red, _ = rref(vecs, ambient)
        return cls(ambient, tuple(tuple(r) for r in red))

    @classmethod
    def kernel(cls, M: RationalMatrix) -> "RationalSubspace":
        return cls.span(nullspace(M), M.ncols)

    @classmethod
    def full(cls, n: int) -> "RationalSubspace":
        return cls.span(RationalMatrix.identity(n).rows, n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __add__(self, other: "RationalSubspace") -> "RationalSubspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return RationalSubspace.span(self.basis + other.basis, self.ambient)

    def contains(self, v: Sequence) -> bool:
        return RationalSubspace.span(self.basis + (tuple(v),), self.ambient).dim == self.dim

    def issubspace(self, other: "RationalSubspace") -> bool:
        return (self + other).dim == other.dim

    def as_matrix(self) -> RationalMatrix:
        return RationalMatrix(self.basis, ncols=self.ambient)


def span_dimension(vectors: Sequence[Sequence]) -> int:
    """Dimension of the span of a list of equal-length vectors."""
    if not vectors:
        return 0
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise ValueError("vectors have different lengths")
    return len(rref(vectors, n)[1])
