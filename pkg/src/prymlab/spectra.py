"""Characteristic polynomials, cyclotomic factors and finite-orbit subspaces.

For a rational matrix M, a vector v has finite orbit under M exactly when
M^m v = v for some m >= 1.  Such vectors make up the sum over d of the kernels
ker Phi_d(M), first powers only: a vector in a larger Jordan block at a root
of unity grows linearly under iteration.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable

from .linalg import RationalMatrix, RationalSubspace


class RationalPolynomial:
    """Dense polynomial with exact rational coefficients, stored low to high."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x_power(cls, n: int) -> "RationalPolynomial":
        return cls([0] * n + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                coef = ""
            else:
                coef = str(abs(c)) + ("*" if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append((sign, coef + mono))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if self.is_zero or other.is_zero:
            return RationalPolynomial([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    def __pow__(self, n: int) -> "RationalPolynomial":
        out = RationalPolynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other: "RationalPolynomial"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c:
                f = c / lead
                quot[k - dq] = f
                for i, b in enumerate(other.coeffs):
                    rem[k - dq + i] -= f * b
        return RationalPolynomial(quot), RationalPolynomial(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "RationalPolynomial") -> bool:
        return (other % self).is_zero

    def evaluate(self, M: RationalMatrix) -> RationalMatrix:
        """p(M) by Horner's rule."""
        n = M.nrows
        out = RationalMatrix.zeros(n, n)
        eye = RationalMatrix.identity(n)
        for c in reversed(self.coeffs):
            out = out @ M + eye.scale(c)
        return out

    def __call__(self, x):
        if isinstance(x, RationalMatrix):
            return self.evaluate(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def as_dict(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}


def char_poly(M: RationalMatrix) -> RationalPolynomial:
    """det(xI - M) by Berkowitz's division-free algorithm."""
    if not M.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    A = M.rows
    n = M.nrows
    C = [Fraction(1)]  # high-to-low coefficients for the leading r x r block
    for r in range(n):
        row = A[r][:r]
        v = [A[i][r] for i in range(r)]
        t = [Fraction(1), -A[r][r]]
        for _ in range(r):
            t.append(-sum((x * y for x, y in zip(row, v)), Fraction(0)))
            v = [sum((A[i][j] * v[j] for j in range(r)), Fraction(0)) for i in range(r)]
        C = [
            sum((t[i - j] * C[j] for j in range(len(C)) if 0 <= i - j < len(t)), Fraction(0))
            for i in range(r + 2)
        ]
    return RationalPolynomial(reversed(C))


def companion(p: RationalPolynomial) -> RationalMatrix:
    """Companion matrix of a monic polynomial (char poly equals p)."""
    if p.leading != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    n = p.degree
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = Fraction(1)
    for i in range(n):
        rows[i][n - 1] = -p.coeffs[i]
    return RationalMatrix(rows, ncols=n)


def totient(d: int) -> int:
    result, m, p = d, d, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(d: int) -> tuple[Fraction, ...]:
    p = RationalPolynomial.x_power(d) - RationalPolynomial([1])
    for e in range(1, d):
        if d % e == 0:
            p, rem = divmod(p, cyclotomic(e))
            assert rem.is_zero
    return p.coeffs


def cyclotomic(d: int) -> RationalPolynomial:
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    return RationalPolynomial(_cyclotomic_coeffs(d))


def candidate_orders(n: int) -> list[int]:
    """Indices d that can carry a root-of-unity eigenvalue of an n x n rational matrix."""
    if n == 0:
        return []
    return [d for d in range(1, 2 * n * n + 2) if totient(d) <= n]


def multiplicity(factor: RationalPolynomial, p: RationalPolynomial) -> int:
    k = 0
    while not p.is_zero and p.degree >= factor.degree:
        q, r = divmod(p, factor)
        if not r.is_zero:
            break
        p = q
        k += 1
    return k


@dataclass(frozen=True)
class CyclotomicPart:
    order: int
    multiplicity: int
    kernel_dim: int


@dataclass(frozen=True)
class SpectralReport:
    char_poly: RationalPolynomial
    parts: tuple[CyclotomicPart, ...]
    fo_subspace: RationalSubspace
    fixed_subspace: RationalSubspace

    @property
    def fo_dim(self) -> int:
        return self.fo_subspace.dim

    @property
    def fixed_dim(self) -> int:
        return self.fixed_subspace.dim

    def as_dict(self) -> dict:
        return {
            "char_poly": self.char_poly.as_dict(),
            "cyclotomic": [
                {"d": p.order, "multiplicity": p.multiplicity, "kernel_dim": p.kernel_dim} for p in self.parts
            ],
            "fo_dim": self.fo_dim,
            "fo_basis": [[str(x) for x in v] for v in self.fo_subspace.basis],
            "fixed_dim": self.fixed_dim,
            "fixed_basis": [[str(x) for x in v] for v in self.fixed_subspace.basis],
        }


def _cyclotomic_kernels(M: RationalMatrix) -> list[tuple[CyclotomicPart, RationalSubspace]]:
    P = char_poly(M)
    out = []
    for d in candidate_orders(M.nrows):
        phi = cyclotomic(d)
        mult = multiplicity(phi, P)
        if mult == 0:
            continue
        ker = RationalSubspace.kernel(phi.evaluate(M))
        out.append((CyclotomicPart(d, mult, ker.dim), ker))
    return out


def _require_square(M: RationalMatrix) -> None:
    if not M.is_square:
        raise ValueError(f"expected a square matrix, got {M.nrows}x{M.ncols}")


def finite_orbit_subspace(M: RationalMatrix) -> RationalSubspace:
    _require_square(M)
    total = RationalSubspace(M.nrows, ())
    for _, ker in _cyclotomic_kernels(M):
        total = total + ker
    return total


def fixed_subspace(M: RationalMatrix) -> RationalSubspace:
    _require_square(M)
    return RationalSubspace.kernel(M - RationalMatrix.identity(M.nrows))


def spectral_report(M: RationalMatrix) -> SpectralReport:
    _require_square(M)
    parts = _cyclotomic_kernels(M)
    fo = RationalSubspace(M.nrows, ())
    for _, ker in parts:
        fo = fo + ker
    return SpectralReport(char_poly(M), tuple(p for p, _ in parts), fo, fixed_subspace(M))


def fo_oracle(M: RationalMatrix, m_max: int) -> RationalSubspace:
    """Sum of ker(M^m - I) for m = 1..m_max, by direct powering."""
    _require_square(M)
    n = M.nrows
    eye = RationalMatrix.identity(n)
    total = RationalSubspace(n, ())
    P = eye
    for _ in range(m_max):
        P = P @ M
        total = total + RationalSubspace.kernel(P - eye)
    return total


def stabilized_power(M: RationalMatrix) -> int:
    """Smallest n with fixed_subspace(M^n) = finite_orbit_subspace(M)."""
    _require_square(M)
    n = 1
    for part, _ in _cyclotomic_kernels(M):
        if part.kernel_dim:
            n = lcm(n, part.order)
    return n

