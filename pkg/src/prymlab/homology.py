"""Rational first homology of finite covers and the action of automorphisms on it.

H_1(K, Q) is computed as the abelianization of the Reidemeister-Schreier
presentation of K: free abelian on the non-tree Schreier generators, modulo
the row space of the abelianized relators.  Coordinates are taken on the
non-pivot columns of the reduced relator matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .covers import (
    FiniteQuotient,
    NotInKernelError,
    SchreierSystem,
    is_invariant,
    kernel_contained,
    kernel_presentation,
    perm_order,
    rewrite_in_kernel,
    schreier_system,
)
from .linalg import RationalMatrix, Vector, rref, span_dimension
from .words import AutomorphismPair, Word, conjugate, power


class InvarianceError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


@dataclass(frozen=True)
class HomologyChart:
    system: SchreierSystem
    symbols: tuple[int, ...]
    reduced_relators: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]
    free_columns: tuple[int, ...]
    column_of: dict[int, int]

    @property
    def quotient(self) -> FiniteQuotient:
        return self.system.quotient

    @property
    def rank(self) -> int:
        return len(self.free_columns)

    def symbol_vector(self, syms: Sequence[int]) -> list[Fraction]:
        v = [Fraction(0)] * len(self.symbols)
        for s in syms:
            v[self.column_of[abs(s)]] += 1 if s > 0 else -1
        return v

    def project(self, v: Sequence[Fraction]) -> Vector:
        v = list(v)
        for row, p in zip(self.reduced_relators, self.pivots):
            f = v[p]
            if f:
                for k, x in enumerate(row):
                    if x:
                        v[k] -= f * x
        return tuple(v[j] for j in self.free_columns)

    def basis_words(self) -> list[Word]:
        return [self.system.symbol_word(self.symbols[j]) for j in self.free_columns]


def homology_chart(sys: SchreierSystem | FiniteQuotient) -> HomologyChart:
    if isinstance(sys, FiniteQuotient):
        sys = schreier_system(sys)
    pres = kernel_presentation(sys)
    symbols = pres.generators
    index = {s: i for i, s in enumerate(symbols)}
    rows = []
    for rel in pres.relators:
        v = [Fraction(0)] * len(symbols)
        for s in rel:
            v[index[abs(s)]] += 1 if s > 0 else -1
        rows.append(v)
    red, pivots = rref(rows, len(symbols))
    free = tuple(j for j in range(len(symbols)) if j not in set(pivots))
    return HomologyChart(sys, symbols, tuple(tuple(r) for r in red), tuple(pivots), free, index)


def class_of(chart: HomologyChart, w: Sequence[int]) -> Vector:
    """Homology class of a kernel word, in chart coordinates."""
    syms = rewrite_in_kernel(chart.system, w)
    return chart.project(chart.symbol_vector(syms))


def prym_matrix(chart: HomologyChart, phi: AutomorphismPair, k: int = 1) -> RationalMatrix:
    """Matrix of phi^k acting on H_1(K, Q); column j is the image of basis class j."""
    if k < 1:
        raise ValueError("k must be positive")
    phik = phi.power(k)
    if not is_invariant(chart.quotient, phik):
        raise InvarianceError(f"kernel is not invariant under phi^{k}")
    cols = [class_of(chart, phik(w)) for w in chart.basis_words()]
    return RationalMatrix.from_columns(cols, chart.rank)


def inclusion_matrix(chart_sub: HomologyChart, chart_sup: HomologyChart) -> RationalMatrix:
    """Matrix of the map H_1(K') -> H_1(K) induced by the inclusion K' < K."""
    if not kernel_contained(chart_sub.quotient, chart_sup.quotient):
        raise ContainmentError("kernel of the first cover is not contained in the second")
    cols = [class_of(chart_sup, w) for w in chart_sub.basis_words()]
    return RationalMatrix.from_columns(cols, chart_sup.rank)


def lift_orbits(chart: HomologyChart, alpha: Sequence[int]) -> tuple[int, list[int]]:
    """Order m of rho(alpha) and the smallest point of each <rho(alpha)>-orbit."""
    q = chart.quotient
    p = q.perm_of(alpha)
    m = perm_order(p)
    reps, seen = [], set()
    for c in range(q.degree):
        if c in seen:
            continue
        reps.append(c)
        d = c
        while d not in seen:
            seen.add(d)
            d = p[d]
    return m, reps


def lift_classes(chart: HomologyChart, alpha: Sequence[int]) -> list[Vector]:
    """Classes of the closed lifts T(c) alpha^m T(c)^-1, one per orbit."""
    if not alpha:
        raise ValueError("alpha must be a nontrivial word")
    m, reps = lift_orbits(chart, alpha)
    am = power(alpha, m)
    return [class_of(chart, conjugate(am, chart.system.transversal[c])) for c in reps]


__all__ = [
    "ContainmentError",
    "HomologyChart",
    "InvarianceError",
    "NotInKernelError",
    "class_of",
    "homology_chart",
    "inclusion_matrix",
    "lift_classes",
    "lift_orbits",
    "prym_matrix",
    "span_dimension",
]
