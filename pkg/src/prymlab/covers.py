"""Finite regular covers of a closed surface and their Schreier data.

A cover is encoded by a homomorphism rho from the surface group onto a finite
group G, given through the regular permutation action of G on {0, ..., n-1}.
Permutations are tuples ``p`` with ``i -> p[i]`` and act on the right, so a
word acts letter by letter from left to right.  The cover's fundamental group
is K = ker rho, the stabilizer of the point 0.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import lcm
from typing import Mapping, Sequence

from .words import (
    AutomorphismPair,
    Word,
    check_letters,
    concat,
    free_reduce,
    generators,
    invert_word,
    letter_name,
    parse_word,
    surface_relator,
)

Perm = tuple[int, ...]


class QuotientError(ValueError):
    """Invalid cover data.  ``reason`` is a short machine-readable tag."""

    def __init__(self, message: str, reason: str):
        super().__init__(message)
        self.reason = reason


class NotInKernelError(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


# permutations

def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_mul(p: Perm, q: Perm) -> Perm:
    """First p, then q."""
    return tuple(q[i] for i in p)


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    order = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = lcm(order, length)
    return order


def cycle(n: int, shift: int = 1) -> Perm:
    return tuple((i + shift) % n for i in range(n))


def _is_perm(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def group_closure(gens: Sequence[Perm], limit: int | None = None) -> list[Perm]:
    """Elements of the group generated by ``gens``, in BFS order.

    Stops early once more than ``limit`` elements are found.
    """
    n = len(gens[0]) if gens else 0
    e = perm_identity(n)
    seen = {e}
    out = [e]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = perm_mul(g, s)
            if h not in seen:
                seen.add(h)
                out.append(h)
                if limit is not None and len(out) > limit:
                    return out
                queue.append(h)
    return out


@dataclass(frozen=True)
class FiniteQuotient:
    """A homomorphism onto a finite group acting regularly on n points."""

    genus: int
    degree: int
    images: tuple[Perm, ...]
    _inverses: tuple[Perm, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_inverses", tuple(perm_inverse(p) for p in self.images))

    def letter_perm(self, x: int) -> Perm:
        return self.images[x - 1] if x > 0 else self._inverses[-x - 1]

    def act(self, point: int, x: int) -> int:
        return self.letter_perm(x)[point]

    def act_word(self, point: int, w: Sequence[int]) -> int:
        for x in w:
            point = self.letter_perm(x)[point]
        return point

    def perm_of(self, w: Sequence[int]) -> Perm:
        return tuple(self.act_word(i, w) for i in range(self.degree))

    def in_kernel(self, w: Sequence[int]) -> bool:
        # regular action: fixing one point means fixing all
        return self.act_word(0, w) == 0

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "degree": self.degree,
            "images": {letter_name(j): list(self.images[j - 1]) for j in generators(self.genus)},
        }


def build_quotient(genus: int, degree: int, images: Mapping | Sequence) -> FiniteQuotient:
    """Validate generator images and return a :class:`FiniteQuotient`.

    ``images`` maps generator names (``"a1"``) or indices to permutations given
    as image arrays; generators that are missing map to the identity.
    """
    if genus < 2:
        raise QuotientError(f"genus must be at least 2, got {genus}", "genus")
    if degree < 1:
        raise QuotientError(f"degree must be positive, got {degree}", "degree")
    if isinstance(images, Mapping):
        ims: dict[int, Perm] = {}
        for k, p in images.items():
            if isinstance(k, int):
                j = k
            else:
                w = parse_word(k)
                if len(w) != 1 or w[0] < 0:
                    raise QuotientError(f"bad generator name {k!r}", "generator")
                j = w[0]
            ims[j] = tuple(int(i) for i in p)
        check_letters(ims, genus)
        perms = tuple(ims.get(j, perm_identity(degree)) for j in generators(genus))
    else:
        perms = tuple(tuple(int(i) for i in p) for p in images)
        if len(perms) != 2 * genus:
            raise QuotientError("need one permutation per generator", "generator")
    for j, p in zip(generators(genus), perms):
        if not _is_perm(p, degree):
            raise QuotientError(f"image of {letter_name(j)} is not a permutation of degree {degree}", "permutation")
    q = FiniteQuotient(genus, degree, perms)

    rel = q.perm_of(surface_relator(genus))
    if rel != perm_identity(degree):
        raise QuotientError("image of the surface relator is not the identity", "relator")
    seen = {0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for p in perms:
            d = p[c]
            if d not in seen:
                seen.add(d)
                queue.append(d)
    if len(seen) != degree:
        raise QuotientError("action is not transitive", "transitivity")
    order = len(group_closure(perms, limit=degree))
    if order != degree:
        raise QuotientError(
            f"generated group has order {'>' if order > degree else ''}{order} != degree {degree}; "
            "action is not regular",
            "regularity",
        )
    return q


def cyclic_quotient(genus: int, n: int, gens: Mapping[str, int]) -> FiniteQuotient:
    """Quotient onto Z/n sending the named generators to powers of the n-cycle."""
    return build_quotient(genus, n, {name: cycle(n, s) for name, s in gens.items()})


def trivial_quotient(genus: int) -> FiniteQuotient:
    return build_quotient(genus, 1, {})


# Schreier transversals and Reidemeister-Schreier

@dataclass(frozen=True)
class SchreierSystem:
    quotient: FiniteQuotient
    transversal: tuple[Word, ...]
    schreier_generators: dict[tuple[int, int], Word]
    tree_edges: frozenset[tuple[int, int]]

    @property
    def genus(self) -> int:
        return self.quotient.genus

    @property
    def degree(self) -> int:
        return self.quotient.degree

    def symbol(self, coset: int, gen: int) -> int:
        """Positive id of the Schreier generator for (coset, generator)."""
        return coset * 2 * self.genus + gen

    def unpack(self, sym: int) -> tuple[int, int]:
        c, j = divmod(abs(sym) - 1, 2 * self.genus)
        return c, j + 1

    def symbol_word(self, sym: int) -> Word:
        w = self.schreier_generators[self.unpack(sym)]
        return w if sym > 0 else invert_word(w)

    @property
    def nontree_symbols(self) -> list[int]:
        return [
            self.symbol(c, j)
            for c in range(self.degree)
            for j in generators(self.genus)
            if (c, j) not in self.tree_edges
        ]


def schreier_system(q: FiniteQuotient) -> SchreierSystem:
    """Shortlex BFS transversal over the positive generators, plus the Schreier table."""
    gens = generators(q.genus)
    trans: list[Word | None] = [None] * q.degree
    trans[0] = ()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for j in gens:
            d = q.act(c, j)
            if trans[d] is None:
                trans[d] = trans[c] + (j,)
                queue.append(d)
    table = {}
    tree = set()
    for c in range(q.degree):
        for j in gens:
            w = concat(trans[c], (j,), invert_word(trans[q.act(c, j)]))
            table[(c, j)] = w
            if not w:
                tree.add((c, j))
    return SchreierSystem(q, tuple(trans), table, frozenset(tree))


def rewrite_in_kernel(sys: SchreierSystem, w: Sequence[int], start: int = 0) -> list[int]:
    """Rewrite a kernel word as signed Schreier symbols (tree symbols dropped).

    With ``start`` = c the word is read from coset c, which rewrites
    T(c) w T(c)^-1 since the transversal only crosses tree edges.
    """
    q = sys.quotient
    c = start
    out: list[int] = []
    for x in w:
        if x > 0:
            if (c, x) not in sys.tree_edges:
                out.append(sys.symbol(c, x))
            c = q.act(c, x)
        else:
            d = q.act(c, x)
            if (d, -x) not in sys.tree_edges:
                out.append(-sys.symbol(d, -x))
            c = d
    if c != start:
        raise NotInKernelError(f"word {w!r} is not in the kernel")
    return out


def expand_symbols(sys: SchreierSystem, syms: Sequence[int]) -> Word:
    return free_reduce(x for s in syms for x in sys.symbol_word(s))


@dataclass(frozen=True)
class KernelPresentation:
    generators: tuple[int, ...]
    relators: tuple[tuple[int, ...], ...]


def kernel_presentation(sys: SchreierSystem) -> KernelPresentation:
    r = surface_relator(sys.genus)
    rels = tuple(tuple(rewrite_in_kernel(sys, r, start=c)) for c in range(sys.degree))
    return KernelPresentation(tuple(sys.nontree_symbols), rels)


# invariance and containment of kernels

def _propagate(q: FiniteQuotient, target: Sequence[Perm]) -> list[int] | None:
    """Map pi on the points of q with pi(0) = 0 and pi(c.x) = pi(c).target[x].

    Exists exactly when ker(q) is contained in the stabilizer of 0 under the
    target images.  Returns None on a conflict.
    """
    pi: list[int | None] = [None] * q.degree
    pi[0] = 0
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for j in generators(q.genus):
            d = q.act(c, j)
            t = target[j - 1][pi[c]]
            if pi[d] is None:
                pi[d] = t
                queue.append(d)
            elif pi[d] != t:
                return None
    return pi


def _compose_images(q: FiniteQuotient, images: Sequence[Perm], phi: AutomorphismPair) -> tuple[Perm, ...]:
    """Generator images of (hom given by ``images``) o phi."""
    n = len(images[0])
    inv = [perm_inverse(p) for p in images]

    def ev(w):
        pts = list(range(n))
        for x in w:
            p = images[x - 1] if x > 0 else inv[-x - 1]
            pts = [p[i] for i in pts]
        return tuple(pts)

    return tuple(ev(phi.forward[j - 1]) for j in generators(q.genus))


def is_invariant(q: FiniteQuotient, phi: AutomorphismPair) -> bool:
    """Whether ker(rho o phi) = ker(rho)."""
    if phi.genus != q.genus:
        raise ValueError("genus mismatch")
    return _invariant_for(q, _compose_images(q, q.images, phi))


def _invariant_for(q: FiniteQuotient, target: Sequence[Perm]) -> bool:
    pi = _propagate(q, target)
    return pi is not None and sorted(pi) == list(range(q.degree))


def minimal_invariant_power(q: FiniteQuotient, phi: AutomorphismPair, cap: int = 64) -> int:
    """Smallest k in [1, cap] with ker(rho o phi^k) = ker(rho)."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    images = q.images
    for k in range(1, cap + 1):
        images = _compose_images(q, images, phi)
        if _invariant_for(q, images):
            return k
    raise CapExceeded(f"no invariant power of phi up to {cap}")


def kernel_contained(q_sub: FiniteQuotient, q_sup: FiniteQuotient) -> bool:
    """Whether ker(q_sub) is a subgroup of ker(q_sup)."""
    if q_sub.genus != q_sup.genus:
        raise ValueError("genus mismatch")
    return _propagate(q_sub, q_sup.images) is not None
