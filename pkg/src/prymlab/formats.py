"""JSON encodings of words, automorphisms, quotients, matrices and polynomials."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .covers import FiniteQuotient, build_quotient
from .linalg import RationalMatrix
from .spectra import RationalPolynomial
from .words import AutomorphismPair, format_word, generators, letter_name, parse_word


class FormatError(ValueError):
    pass


def load_json(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg})") from exc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def automorphism_to_dict(phi: AutomorphismPair) -> dict:
    return {
        "genus": phi.genus,
        "forward": {letter_name(j): format_word(phi.forward[j - 1]) for j in generators(phi.genus)},
        "backward": {letter_name(j): format_word(phi.backward[j - 1]) for j in generators(phi.genus)},
    }


def automorphism_from_dict(d: dict) -> AutomorphismPair:
    try:
        genus = int(d["genus"])
        fwd = {k: parse_word(v, genus) for k, v in d["forward"].items()}
        bwd = {k: parse_word(v, genus) for k, v in d["backward"].items()}
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad automorphism JSON: {exc}") from exc
    return AutomorphismPair.from_maps(genus, fwd, bwd)


def quotient_to_dict(q: FiniteQuotient) -> dict:
    return q.as_dict()


def quotient_from_dict(d: dict) -> FiniteQuotient:
    try:
        genus, degree, images = int(d["genus"]), int(d["degree"]), d["images"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad quotient JSON: {exc}") from exc
    if not isinstance(images, dict):
        raise FormatError("quotient images must be an object keyed by generator")
    return build_quotient(genus, degree, images)


def matrix_to_dict(M: RationalMatrix) -> dict:
    return {"rows": [[str(x) for x in r] for r in M.rows]}


def matrix_from_dict(d: dict) -> RationalMatrix:
    try:
        rows = d["rows"]
        if not rows:
            return RationalMatrix([], ncols=0)
        return RationalMatrix([[Fraction(str(x)) for x in r] for r in rows])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad matrix JSON: {exc}") from exc


def vector_to_dict(v) -> dict:
    return {"rows": [[str(x) for x in v]]}


def polynomial_from_dict(d: dict) -> RationalPolynomial:
    try:
        return RationalPolynomial(Fraction(str(c)) for c in d["coeffs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad polynomial JSON: {exc}") from exc
