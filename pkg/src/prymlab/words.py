"""Words in the standard presentation of a closed surface group.

The group of genus ``g`` is presented as

    < a1, b1, ..., ag, bg | a1 b1 A1 B1 ... ag bg Ag Bg >

with upper case letters denoting inverses.  Internally a letter is a nonzero
integer: generator ``a_i`` is ``2i - 1``, ``b_i`` is ``2i`` and the inverse of
a letter is its negation.  A word is a tuple of letters, always freely reduced
when it comes out of this module.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

Word = tuple[int, ...]

_TOKEN = re.compile(r"^([abAB])([1-9][0-9]*)$")


class WordError(ValueError):
    pass


class AutomorphismError(ValueError):
    """Raised when a pair of image maps fails to define an automorphism."""

    def __init__(self, message: str, check: str, generator: str | None = None):
        super().__init__(message)
        self.check = check
        self.generator = generator


class OrientationReversingError(AutomorphismError):
    pass


# letters

def letter(family: str, index: int, inverted: bool = False) -> int:
    if family not in ("a", "b") or index < 1:
        raise WordError(f"bad generator {family}{index}")
    x = 2 * index - 1 if family == "a" else 2 * index
    return -x if inverted else x


def letter_name(x: int) -> str:
    j = abs(x)
    fam = "a" if j % 2 else "b"
    name = f"{fam}{(j + 1) // 2}"
    return name.upper() if x < 0 else name


def generators(genus: int) -> list[int]:
    """Positive generators in the global order a1 < b1 < a2 < b2 < ..."""
    return list(range(1, 2 * genus + 1))


def letter_order(genus: int) -> list[int]:
    """All letters in the global order a1 < b1 < ... < A1 < B1 < ..."""
    gens = generators(genus)
    return gens + [-x for x in gens]


def order_key(x: int) -> tuple[int, int]:
    return (x < 0, abs(x))


def check_letters(w: Iterable[int], genus: int) -> None:
    for x in w:
        if x == 0 or abs(x) > 2 * genus:
            raise WordError(f"letter {x!r} out of range for genus {genus}")


# text format

def parse_word(text: str, genus: int | None = None) -> Word:
    """Parse whitespace separated tokens like ``"a1 B2"`` and freely reduce."""
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise WordError(f"bad token {tok!r}")
        fam, idx = m.group(1), int(m.group(2))
        letters.append(letter(fam.lower(), idx, inverted=fam.isupper()))
    if genus is not None:
        check_letters(letters, genus)
    return free_reduce(letters)


def format_word(w: Sequence[int]) -> str:
    return " ".join(letter_name(x) for x in w)


# free group algebra

def free_reduce(letters: Iterable[int], genus: int | None = None) -> Word:
    letters = list(letters)
    if genus is not None:
        check_letters(letters, genus)
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def concat(*words: Sequence[int]) -> Word:
    return free_reduce(x for w in words for x in w)


def power(w: Sequence[int], n: int) -> Word:
    if n < 0:
        return power(invert_word(w), -n)
    return free_reduce(tuple(w) * n)


def conjugate(w: Sequence[int], by: Sequence[int]) -> Word:
    """``by * w * by^-1``."""
    return concat(by, w, invert_word(by))


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i > 1 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def rotations(w: Sequence[int]) -> list[Word]:
    w = tuple(w)
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def abelianize(w: Iterable[int], genus: int) -> tuple[int, ...]:
    """Exponent sums of the 2g generators."""
    v = [0] * (2 * genus)
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


# the surface group

def surface_relator(genus: int) -> Word:
    if genus < 2:
        raise ValueError(f"genus must be at least 2, got {genus}")
    out: list[int] = []
    for i in range(1, genus + 1):
        a, b = 2 * i - 1, 2 * i
        out += [a, b, -a, -b]
    return tuple(out)


@dataclass(frozen=True)
class SurfaceGroup:
    genus: int

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError(f"genus must be at least 2, got {self.genus}")

    @property
    def relator(self) -> Word:
        return surface_relator(self.genus)

    @property
    def rank(self) -> int:
        return 2 * self.genus


_DEHN_CACHE: dict[int, dict[int, dict[Word, Word]]] = {}


def _dehn_table(genus: int) -> dict[int, dict[Word, Word]]:
    """For each length L > 2g, map relator pieces of length L to their shorter equals."""
    if genus in _DEHN_CACHE:
        return _DEHN_CACHE[genus]
    r = surface_relator(genus)
    n = len(r)
    table: dict[int, dict[Word, Word]] = {L: {} for L in range(n // 2 + 1, n + 1)}
    for rel in (r, invert_word(r)):
        for rot in rotations(rel):
            for L in table:
                table[L][rot[:L]] = invert_word(rot[L:])
    _DEHN_CACHE[genus] = table
    return table


def dehn_reduce(w: Sequence[int], genus: int) -> Word:
    """Dehn's algorithm on the cyclic word of ``w``; returns the final cyclic word."""
    table = _dehn_table(genus)
    lengths = sorted(table, reverse=True)
    cur = cyclic_reduce(w)
    while cur:
        n = len(cur)
        doubled = cur + cur
        hit = None
        for L in lengths:
            if L > n:
                continue
            pieces = table[L]
            for i in range(n):
                rep = pieces.get(doubled[i:i + L])
                if rep is not None:
                    hit = (i, L, rep)
                    break
            if hit:
                break
        if hit is None:
            break
        i, L, rep = hit
        rest = doubled[i + L:i + n]
        cur = cyclic_reduce(rep + rest)
    return cur


def dehn_is_trivial(S: Union[SurfaceGroup, int], w: Sequence[int]) -> bool:
    genus = S.genus if isinstance(S, SurfaceGroup) else S
    check_letters(w, genus)
    return not dehn_reduce(w, genus)


# automorphisms

ImageMap = Union["AutomorphismPair", Mapping[int, Sequence[int]], Sequence[Sequence[int]]]


@dataclass(frozen=True)
class AutomorphismPair:
    """An endomorphism of the surface group together with a claimed inverse.

    ``forward[j]`` and ``backward[j]`` are the images of generator ``j + 1``.
    """

    genus: int
    forward: tuple[Word, ...]
    backward: tuple[Word, ...]

    def __post_init__(self):
        n = 2 * self.genus
        if len(self.forward) != n or len(self.backward) != n:
            raise WordError("image map must cover every generator")
        for w in self.forward + self.backward:
            check_letters(w, self.genus)

    @classmethod
    def from_maps(cls, genus: int, forward: Mapping, backward: Mapping) -> "AutomorphismPair":
        """Build from maps keyed by generator (int or name), missing ones fixed."""

        def norm(m):
            out = {}
            for k, v in m.items():
                j = k if isinstance(k, int) else parse_word(k)[0]
                if j <= 0:
                    raise WordError(f"image key must be a positive generator, got {k!r}")
                out[j] = parse_word(v) if isinstance(v, str) else free_reduce(v)
            return tuple(out.get(j, (j,)) for j in generators(genus))

        return cls(genus, norm(forward), norm(backward))

    @classmethod
    def identity(cls, genus: int) -> "AutomorphismPair":
        ims = tuple((j,) for j in generators(genus))
        return cls(genus, ims, ims)

    def inverse(self) -> "AutomorphismPair":
        return AutomorphismPair(self.genus, self.backward, self.forward)

    def __call__(self, w: Sequence[int]) -> Word:
        return apply_endo(self, w)

    def __matmul__(self, other: "AutomorphismPair") -> "AutomorphismPair":
        return compose_automorphisms(self, other)

    def power(self, k: int) -> "AutomorphismPair":
        if k < 0:
            return self.inverse().power(-k)
        result = AutomorphismPair.identity(self.genus)
        for _ in range(k):
            result = compose_automorphisms(self, result)
        return result


def _images(phi: ImageMap) -> Mapping[int, Sequence[int]] | Sequence[Sequence[int]]:
    if isinstance(phi, AutomorphismPair):
        return phi.forward
    return phi


def apply_endo(phi: ImageMap, w: Sequence[int]) -> Word:
    """Substitute generator images into ``w`` and freely reduce."""
    ims = _images(phi)
    is_map = isinstance(ims, Mapping)
    out: list[int] = []
    for x in w:
        j = abs(x)
        im = ims[j] if is_map else ims[j - 1]
        seq = im if x > 0 else invert_word(im)
        for y in seq:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def compose_automorphisms(phi: AutomorphismPair, psi: AutomorphismPair) -> AutomorphismPair:
    """``phi o psi``: first ``psi``, then ``phi``."""
    if phi.genus != psi.genus:
        raise ValueError(f"genus mismatch: {phi.genus} vs {psi.genus}")
    fwd = tuple(apply_endo(phi, im) for im in psi.forward)
    bwd = tuple(apply_endo(psi.backward, im) for im in phi.backward)
    return AutomorphismPair(phi.genus, fwd, bwd)


def conjugation(genus: int, gamma: Sequence[int]) -> AutomorphismPair:
    """Inner automorphism x -> gamma x gamma^-1."""
    gamma = free_reduce(gamma)
    gi = invert_word(gamma)
    fwd = tuple(conjugate((j,), gamma) for j in generators(genus))
    bwd = tuple(conjugate((j,), gi) for j in generators(genus))
    return AutomorphismPair(genus, fwd, bwd)


def twist_about(S: Union[SurfaceGroup, int], handle: str | tuple[str, int]) -> AutomorphismPair:
    """Dehn twist about the curve a_i or b_i.

    About a_i: b_i -> b_i a_i.  About b_i: a_i -> a_i B_i.  Both twists have the
    same handedness, so T_a1 T_b1 T_a1 sends a1 to B1.
    """
    genus = S.genus if isinstance(S, SurfaceGroup) else S
    if isinstance(handle, str):
        m = _TOKEN.match(handle)
        if m is None or m.group(1).isupper():
            raise WordError(f"bad twist curve {handle!r}")
        fam, idx = m.group(1), int(m.group(2))
    else:
        fam, idx = handle
    if not 1 <= idx <= genus:
        raise WordError(f"twist index {idx} out of range for genus {genus}")
    a, b = letter("a", idx), letter("b", idx)
    if fam == "a":
        fwd = {b: (b, a)}
        bwd = {b: (b, -a)}
    else:
        fwd = {a: (a, -b)}
        bwd = {a: (a, b)}
    return AutomorphismPair.from_maps(genus, fwd, bwd)


def twist_generators(genus: int) -> list[AutomorphismPair]:
    return [twist_about(genus, (fam, i)) for i in range(1, genus + 1) for fam in ("a", "b")]


def twist_word(genus: int, names: Sequence[str]) -> AutomorphismPair:
    """Compose twists written left to right, applied right to left."""
    result = AutomorphismPair.identity(genus)
    for name in names:
        inv = name.startswith("-")
        t = twist_about(genus, name.lstrip("-"))
        result = result @ (t.inverse() if inv else t)
    return result


@dataclass(frozen=True)
class AutomorphismReport:
    relator_preserved: bool
    orientation: str
    inversion_ok: bool
    failed_generator: str | None = None

    @property
    def passed(self) -> bool:
        return self.relator_preserved and self.orientation == "preserving" and self.inversion_ok

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "relator_preserved": self.relator_preserved,
            "orientation": self.orientation,
            "inversion_ok": self.inversion_ok,
            "failed_generator": self.failed_generator,
        }


def check_automorphism(S: Union[SurfaceGroup, int], pair: AutomorphismPair) -> AutomorphismReport:
    genus = S.genus if isinstance(S, SurfaceGroup) else S
    if pair.genus != genus:
        raise ValueError(f"genus mismatch: {pair.genus} vs {genus}")
    r = surface_relator(genus)
    image = cyclic_reduce(apply_endo(pair, r))
    if image in set(rotations(r)):
        orientation = "preserving"
    elif image in set(rotations(invert_word(r))):
        orientation = "reversing"
    else:
        orientation = "none"
    failed = None
    for j in generators(genus):
        back = apply_endo(pair.backward, pair.forward[j - 1])
        if not dehn_is_trivial(genus, concat(back, (-j,))):
            failed = letter_name(j)
            break
    return AutomorphismReport(
        relator_preserved=orientation != "none",
        orientation=orientation,
        inversion_ok=failed is None,
        failed_generator=failed,
    )


def require_automorphism(S: Union[SurfaceGroup, int], pair: AutomorphismPair) -> None:
    rep = check_automorphism(S, pair)
    if not rep.relator_preserved:
        raise AutomorphismError("image of the relator is not conjugate to the relator", "relator")
    if rep.orientation == "reversing":
        raise OrientationReversingError("automorphism reverses orientation", "orientation")
    if not rep.inversion_ok:
        raise AutomorphismError(
            f"backward map does not invert forward map on {rep.failed_generator}",
            "inversion",
            rep.failed_generator,
        )


def fixes_curve(S: Union[SurfaceGroup, int], phi: AutomorphismPair, w: Sequence[int]) -> bool:
    """Whether phi(w) is conjugate to w or w^-1 (checked in the free group, then via Dehn)."""
    genus = S.genus if isinstance(S, SurfaceGroup) else S
    image = apply_endo(phi, w)
    if dehn_is_trivial(genus, concat(image, invert_word(w))):
        return True
    c_im = cyclic_reduce(image)
    c_w = cyclic_reduce(w)
    return c_im in set(rotations(c_w)) or c_im in set(rotations(invert_word(c_w)))

