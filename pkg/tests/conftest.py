import hypothesis.strategies as st
import pytest

from prymlab.covers import build_quotient, cycle, perm_mul
from prymlab.linalg import RationalMatrix
from prymlab.spectra import RationalPolynomial, companion, cyclotomic, totient
from prymlab.words import (
    AutomorphismPair,
    concat,
    conjugate,
    free_reduce,
    invert_word,
    surface_relator,
    twist_about,
)

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def letters(genus):
    n = 2 * genus
    return st.integers(min_value=-n, max_value=n).filter(lambda x: x != 0)


def raw_words(genus, max_size=12):
    return st.lists(letters(genus), max_size=max_size).map(tuple)


@st.composite
def twist_compositions(draw, genus, max_len=4):
    """Random products of library twists and their inverses."""
    names = [f"{f}{i}" for i in range(1, genus + 1) for f in "ab"]
    word = draw(st.lists(st.tuples(st.sampled_from(names), st.booleans()), max_size=max_len))
    phi = AutomorphismPair.identity(genus)
    for name, inv in word:
        t = twist_about(genus, name)
        phi = phi @ (t.inverse() if inv else t)
    return phi


def random_relator_product(rng, g, max_factors=5, conj_len=6):
    r = surface_relator(g)
    out = ()
    for _ in range(rng.randint(1, max_factors)):
        gamma = free_reduce(rng.choice([-1, 1]) * rng.randint(1, 2 * g) for _ in range(rng.randint(0, conj_len)))
        rel = r if rng.random() < 0.5 else invert_word(r)
        rot = rng.randrange(len(rel))
        out = concat(out, conjugate(rel[rot:] + rel[:rot], gamma))
    return out


def jordan(lam, n):
    return RationalMatrix([[lam if i == j else (1 if j == i + 1 else 0) for j in range(n)] for i in range(n)])


def random_block_matrix(rng, max_dim=8):
    """Block diagonal mix of cyclotomic companions, Jordan blocks and companions of other polynomials."""
    blocks, dim = [], 0
    while dim < max_dim:
        room = max_dim - dim
        kind = rng.choice(["cyc", "jordan", "other"])
        if kind == "cyc":
            d = rng.choice([d for d in (1, 2, 3, 4, 5, 6, 8, 10, 12) if totient(d) <= room])
            B = companion(cyclotomic(d))
        elif kind == "jordan":
            B = jordan(rng.choice([1, -1, 2, 0]), rng.randint(1, min(3, room)))
        else:
            # monic integer polynomials with a root off the unit circle
            choices = [RationalPolynomial(c) for c in ((-2, 1), (-1, -3, 1), (1, -3, 1), (1, 0, -3, 1))]
            p = rng.choice([c for c in choices if c.degree <= room])
            B = companion(p)
        blocks.append(B)
        dim += B.nrows
        if rng.random() < 0.3:
            break
    return RationalMatrix.block_diagonal(blocks)


def random_unimodular(rng, n, steps=6):
    P = RationalMatrix.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        E = [list(r) for r in RationalMatrix.identity(n).rows]
        E[i][j] = rng.choice([-2, -1, 1, 2])
        P = P @ RationalMatrix(E)
    return P


def s3_regular():
    """Right regular action of S3 on its 6 elements; returns (elements, perm-of-element)."""
    from itertools import permutations

    elems = sorted(permutations(range(3)))
    index = {e: i for i, e in enumerate(elems)}

    def regular(g):
        return tuple(index[perm_mul(e, g)] for e in elems)

    return elems, regular


@pytest.fixture
def s3():
    return s3_regular()


@pytest.fixture
def z3_b1():
    return build_quotient(2, 3, {"b1": cycle(3)})


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
