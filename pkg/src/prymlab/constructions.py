"""Explicit covers with many finite-orbit classes, and end-to-end checks.

The two cyclic covers realize the standard pictures algebraically:

* nonseparating curve a1, cover Z/N with b2 -> N-cycle.  a1 and b1 both map
  trivially, so a1 has N lifts; the complement of a1 still contains b2, whose
  image generates Z/N, so the lifts do not disconnect the cover and their
  classes are independent.
* separating curve [a1,b1]...[ah,bh], cover Z/(N+1) with a1 and a_{h+1} ->
  (N+1)-cycle.  Each side of the curve surjects onto Z/(N+1), so the N+1 lifts
  cut the cover into exactly two pieces and satisfy one relation.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .covers import (
    FiniteQuotient,
    build_quotient,
    cycle,
    group_closure,
    is_invariant,
    kernel_contained,
    minimal_invariant_power,
    trivial_quotient,
    CapExceeded,
)
from .homology import (
    ContainmentError,
    homology_chart,
    inclusion_matrix,
    lift_classes,
    prym_matrix,
)
from .linalg import RationalMatrix, RationalSubspace, rank, span_dimension
from .spectra import finite_orbit_subspace, fixed_subspace
from .words import (
    AutomorphismPair,
    SurfaceGroup,
    Word,
    abelianize,
    fixes_curve,
    format_word,
    generators,
    require_automorphism,
    surface_relator,
)

DEFAULT_GUARD = 10**7


class CurveNotFixed(ValueError):
    pass


class FeasibilityError(RuntimeError):
    pass


@dataclass
class ConstructionReport:
    construction: str
    params: dict
    computed: dict
    verdict: str
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        return {
            "construction": self.construction,
            "params": self.params,
            "computed": self.computed,
            "checks": self.checks,
            "verdict": self.verdict,
        }


def _verdict(checks: dict) -> str:
    return "pass" if all(checks.values()) else "fail"


def _genus(S) -> int:
    return S.genus if isinstance(S, SurfaceGroup) else int(S)


# the two cyclic covers

def cyclic_nonseparating_cover(g: int, N: int) -> tuple[FiniteQuotient, Word]:
    if g < 2 or N < 1:
        raise ValueError(f"need g >= 2 and N >= 1, got g={g}, N={N}")
    q = build_quotient(g, N, {"b2": cycle(N)})
    return q, (1,)


def separating_word(h: int) -> Word:
    """[a1, b1] ... [ah, bh], bounding the first h handles."""
    return tuple(x for i in range(1, h + 1) for x in (2 * i - 1, 2 * i, 1 - 2 * i, -2 * i))


def cyclic_separating_cover(g: int, N: int, h: int) -> tuple[FiniteQuotient, Word]:
    if g < 2 or not 1 <= h <= g - 1 or N < 0:
        raise ValueError(f"need g >= 2, 1 <= h <= g-1 and N >= 0, got g={g}, N={N}, h={h}")
    n = N + 1
    q = build_quotient(g, n, {"a1": cycle(n), f"a{h + 1}": cycle(n)})
    return q, separating_word(h)


def verify_reducible_bound(
    variant: str,
    g: int,
    N: int,
    phi: AutomorphismPair,
    h: int | None = None,
    cap: int = 64,
) -> ConstructionReport:
    """Check dim fo >= dim span of lift classes = N on a cyclic cover.

    Raises CurveNotFixed if phi does not fix the construction's curve and
    CapExceeded if no power of phi up to ``cap`` preserves the cover.
    """
    if variant == "nonsep":
        q, curve = cyclic_nonseparating_cover(g, N)
        params = {"variant": variant, "g": g, "N": N}
    elif variant == "sep":
        if h is None:
            raise ValueError("separating variant needs h")
        q, curve = cyclic_separating_cover(g, N, h)
        params = {"variant": variant, "g": g, "N": N, "h": h}
    else:
        raise ValueError(f"unknown variant {variant!r}")
    params["curve"] = format_word(curve)
    if phi.genus != g:
        raise ValueError("genus mismatch")
    require_automorphism(g, phi)
    if not fixes_curve(g, phi, curve):
        raise CurveNotFixed(f"phi does not fix the curve {format_word(curve)}")

    name = "lemma32" if variant == "nonsep" else "lemma33"
    k = minimal_invariant_power(q, phi, cap)
    chart = homology_chart(q)
    M = prym_matrix(chart, phi, k)
    lifts = lift_classes(chart, curve)
    S = span_dimension(lifts)
    fo = finite_orbit_subspace(M)
    span = RationalSubspace.span(lifts, chart.rank)
    computed = {
        "rank": chart.rank,
        "lifts": len(lifts),
        "span_dim": S,
        "fo_dim": fo.dim,
        "k": k,
    }
    if N < 1:
        params["out_of_range"] = True
        return ConstructionReport(name, params, computed, "undetermined")
    checks = {
        "fo_dim >= span_dim": fo.dim >= S,
        "span_dim == N": S == N,
        "span inside fo": span.issubspace(fo),
    }
    return ConstructionReport(name, params, computed, _verdict(checks), checks)


# mapping tori

def mapping_torus_h1_rank(S, phi: AutomorphismPair) -> int:
    """b_1 of <x_1..x_2g, t | R, t x t^-1 = phi(x)> from the abelianized relators."""
    g = _genus(S)
    require_automorphism(g, phi)
    n = 2 * g + 1
    rows = [list(abelianize(surface_relator(g), g)) + [0]]
    for j in generators(g):
        # t x t^-1 phi(x)^-1 abelianizes to e_x - ab(phi(x))
        v = [-c for c in abelianize(phi.forward[j - 1], g)] + [0]
        v[j - 1] += 1
        rows.append(v)
    return n - rank(RationalMatrix(rows, ncols=n))


def verify_corollary_4_2(S, phi: AutomorphismPair) -> ConstructionReport:
    g = _genus(S)
    torus = mapping_torus_h1_rank(g, phi)
    chart = homology_chart(trivial_quotient(g))
    fixed = fixed_subspace(prym_matrix(chart, phi, 1)).dim
    checks = {"h1_rank == 1 + fixed_dim": torus == 1 + fixed}
    return ConstructionReport(
        "cor42",
        {"g": g},
        {"h1_rank": torus, "fixed_dim": fixed},
        _verdict(checks),
        checks,
    )


# characteristic refinement

def _surjections(q: FiniteQuotient, guard: int) -> tuple[list[tuple[int, ...]], list[list[int]]]:
    """All homomorphisms onto the deck group, as tuples of element labels.

    The deck group element labelled p is the unique one sending 0 to p.
    """
    n, g = q.degree, q.genus
    elements = {perm[0]: perm for perm in group_closure(q.images)}
    # mul[p][r]: first element p, then element r
    mul = [[elements[r][p] for r in range(n)] for p in range(n)]
    inv = [next(r for r in range(n) if mul[p][r] == 0) for p in range(n)]
    candidates = n ** (2 * g)
    if candidates > guard:
        raise FeasibilityError(f"{candidates} candidate tuples exceed the guard {guard}")

    def generated(gens):
        seen = {0}
        queue = deque([0])
        while queue:
            p = queue.popleft()
            for s in gens:
                r = mul[p][s]
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        return len(seen)

    out = []
    for tup in itertools.product(range(n), repeat=2 * g):
        acc = 0
        for i in range(g):
            a, b = tup[2 * i], tup[2 * i + 1]
            acc = mul[mul[mul[mul[acc][a]][b]][inv[a]]][inv[b]]
        if acc == 0 and generated(tup) == n:
            out.append(tup)
    return out, mul


def characteristic_refinement(q: FiniteQuotient, guard: int = DEFAULT_GUARD) -> FiniteQuotient:
    """Quotient whose kernel is the intersection of the kernels of all maps onto the deck group."""
    surj, mul = _surjections(q, guard)
    g = q.genus
    gens = [tuple(f[j] for f in surj) for j in range(2 * g)]
    identity = tuple(0 for _ in surj)

    def times(x, y):
        return tuple(mul[a][b] for a, b in zip(x, y))

    index = {identity: 0}
    elems = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = times(x, s)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    perms = [tuple(index[times(x, s)] for x in elems) for s in gens]
    return build_quotient(g, len(elems), perms)


def is_characteristic_for(q: FiniteQuotient, autos: Sequence[AutomorphismPair]) -> bool:
    return all(is_invariant(q, phi) for phi in autos)


# passing to a smaller cover

def verify_lemma_2_2(
    q_sub: FiniteQuotient,
    q_sup: FiniteQuotient,
    phi: AutomorphismPair,
    cap: int = 64,
) -> ConstructionReport:
    """dim fo(K') >= dim fo(K) for K' < K, plus surjectivity of H_1(K') -> H_1(K)."""
    if not kernel_contained(q_sub, q_sup):
        raise ContainmentError("kernel of the first cover is not contained in the second")
    require_automorphism(q_sub.genus, phi)
    k = None
    for j in range(1, cap + 1):
        pj = phi.power(j)
        if is_invariant(q_sub, pj) and is_invariant(q_sup, pj):
            k = j
            break
    if k is None:
        raise CapExceeded(f"no common invariant power of phi up to {cap}")
    chart_sub, chart_sup = homology_chart(q_sub), homology_chart(q_sup)
    M_sub = prym_matrix(chart_sub, phi, k)
    M_sup = prym_matrix(chart_sup, phi, k)
    iota = inclusion_matrix(chart_sub, chart_sup)
    fo_sub = finite_orbit_subspace(M_sub).dim
    fo_sup = finite_orbit_subspace(M_sup).dim
    iota_rank = rank(iota)
    checks = {
        "fo_sub >= fo_sup": fo_sub >= fo_sup,
        "iota surjective": iota_rank == chart_sup.rank,
        "iota equivariant": iota @ M_sub == M_sup @ iota,
    }
    return ConstructionReport(
        "lemma22",
        {"g": q_sub.genus, "degree_sub": q_sub.degree, "degree_sup": q_sup.degree},
        {
            "k": k,
            "rank_sub": chart_sub.rank,
            "rank": chart_sup.rank,
            "fo_dim_sub": fo_sub,
            "fo_dim": fo_sup,
            "iota_rank": iota_rank,
        },
        _verdict(checks),
        checks,
    )
