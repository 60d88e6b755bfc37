"""Command-line front end.

Exit codes: 0 success or verified, 1 verification failed, 2 invalid input,
3 undetermined (invariance-power cap or enumeration guard exceeded).
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import formats
from .constructions import (
    DEFAULT_GUARD,
    ConstructionReport,
    CurveNotFixed,
    FeasibilityError,
    characteristic_refinement,
    cyclic_nonseparating_cover,
    cyclic_separating_cover,
    mapping_torus_h1_rank,
    verify_corollary_4_2,
    verify_lemma_2_2,
    verify_reducible_bound,
)
from .covers import (
    CapExceeded,
    NotInKernelError,
    QuotientError,
    kernel_presentation,
    minimal_invariant_power,
    schreier_system,
)
from .formats import FormatError
from .homology import (
    ContainmentError,
    InvarianceError,
    homology_chart,
    lift_classes,
    prym_matrix,
    span_dimension,
)
from .spectra import char_poly, finite_orbit_subspace, fixed_subspace, spectral_report
from .words import (
    AutomorphismError,
    AutomorphismPair,
    WordError,
    check_automorphism,
    compose_automorphisms,
    format_word,
    invert_word,
    parse_word,
    twist_about,
    twist_word,
)

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_UNDETERMINED = 0, 1, 2, 3

INVALID = (
    WordError,
    QuotientError,
    FormatError,
    AutomorphismError,
    CurveNotFixed,
    ContainmentError,
    InvarianceError,
    NotInKernelError,
    OSError,
    ValueError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def max_power() -> int:
    return int(os.environ.get("PRYMLAB_MAX_POWER", "64"))


def guard() -> int:
    return int(os.environ.get("PRYMLAB_GUARD", str(DEFAULT_GUARD)))


def existing_file(value: str) -> Path:
    p = Path(value)
    if not p.is_file():
        raise argparse.ArgumentTypeError(f"no such file: {value}")
    return p


def resolve_phi(arg: str, genus: int | None) -> AutomorphismPair:
    """``id``, ``twist:a1,twist:b1`` (rightmost applied first) or a JSON file."""
    arg = arg.strip()
    if arg in ("id", "identity") or arg.startswith("twist:"):
        if genus is None:
            raise ValueError("a genus is needed to interpret automorphism shorthand")
        if arg in ("id", "identity"):
            return AutomorphismPair.identity(genus)
        names = []
        for part in arg.split(","):
            part = part.strip()
            if not part.startswith("twist:"):
                raise ValueError(f"bad automorphism shorthand {part!r}")
            names.append(part[len("twist:"):])
        return twist_word(genus, names)
    path = Path(arg)
    if not path.is_file():
        raise ValueError(f"automorphism {arg!r} is neither shorthand nor an existing file")
    phi = formats.automorphism_from_dict(formats.load_json(path))
    if genus is not None and phi.genus != genus:
        raise ValueError(f"automorphism genus {phi.genus} does not match {genus}")
    return phi


def _quotient(path: Path):
    return formats.quotient_from_dict(formats.load_json(path))


def _matrix(path: Path):
    return formats.matrix_from_dict(formats.load_json(path))


def _report_result(rep: ConstructionReport):
    code = {"pass": EXIT_OK, "fail": EXIT_FAILED}.get(rep.verdict, EXIT_UNDETERMINED)
    return rep.as_dict(), code


def _summary(obj) -> str:
    if isinstance(obj, dict):
        if "verdict" in obj:
            computed = ", ".join(f"{k}={v}" for k, v in sorted(obj.get("computed", {}).items()))
            return f"{obj.get('construction', 'result')}: {obj['verdict']} ({computed})"
        scalars = {k: v for k, v in obj.items() if isinstance(v, (int, str, bool)) or v is None}
        return ", ".join(f"{k}={v}" for k, v in sorted(scalars.items())) or "done"
    return str(obj)


# handlers; each returns (json-able object, exit code)

def cmd_word(args):
    w = parse_word(args.word, args.g)
    out = w if args.action == "reduce" else invert_word(w)
    return {"word": format_word(out)}, EXIT_OK


def cmd_auto(args):
    if args.action == "twist":
        return formats.automorphism_to_dict(twist_about(args.g, args.curve)), EXIT_OK
    if args.action == "compose":
        phi = resolve_phi(args.phi, args.g)
        psi = resolve_phi(args.psi, args.g)
        return formats.automorphism_to_dict(compose_automorphisms(phi, psi)), EXIT_OK
    phi = resolve_phi(args.phi, args.g)
    rep = check_automorphism(phi.genus, phi)
    return rep.as_dict(), EXIT_OK if rep.passed else EXIT_FAILED


def cmd_cover(args):
    q = _quotient(args.file)
    if args.action == "build":
        return {"valid": True, **q.as_dict()}, EXIT_OK
    if args.action == "kernel":
        sys_ = schreier_system(q)
        pres = kernel_presentation(sys_)
        chart = homology_chart(sys_)
        return {
            "transversal": [format_word(t) for t in sys_.transversal],
            "generators": list(pres.generators),
            "relators": [list(r) for r in pres.relators],
            "num_generators": len(pres.generators),
            "num_relators": len(pres.relators),
            "rank": chart.rank,
        }, EXIT_OK
    phi = resolve_phi(args.phi, q.genus)
    k = minimal_invariant_power(q, phi, args.cap)
    return {"k": k}, EXIT_OK


def cmd_prym(args):
    q = _quotient(args.file)
    chart = homology_chart(q)
    if args.action == "lifts":
        alpha = parse_word(args.alpha, q.genus)
        vecs = lift_classes(chart, alpha)
        return {
            "lifts": len(vecs),
            "span_dim": span_dimension(vecs),
            "classes": [[str(x) for x in v] for v in vecs],
        }, EXIT_OK
    phi = resolve_phi(args.phi, q.genus)
    k = args.k if args.k is not None else minimal_invariant_power(q, phi, args.cap)
    M = prym_matrix(chart, phi, k)
    if args.action == "matrix":
        return {"k": k, **formats.matrix_to_dict(M)}, EXIT_OK
    rep = spectral_report(M)
    return {"k": k, "rank": chart.rank, "fo_dim": rep.fo_dim, "fixed_dim": rep.fixed_dim}, EXIT_OK


def cmd_spectra(args):
    M = _matrix(args.matrix)
    if args.action == "charpoly":
        return char_poly(M).as_dict(), EXIT_OK
    if args.action == "fo":
        S = finite_orbit_subspace(M)
        return {"fo_dim": S.dim, "basis": [[str(x) for x in v] for v in S.basis], "report": spectral_report(M).as_dict()}, EXIT_OK
    S = fixed_subspace(M)
    return {"fixed_dim": S.dim, "basis": [[str(x) for x in v] for v in S.basis]}, EXIT_OK


def cmd_construct(args):
    if args.action == "char-refine":
        q = _quotient(args.file)
        r = characteristic_refinement(q, args.guard if args.guard is not None else guard())
        return {"degree": r.degree, "quotient": r.as_dict()}, EXIT_OK
    if args.action == "cyclic-nonsep":
        q, curve = cyclic_nonseparating_cover(args.g, args.N)
    else:
        q, curve = cyclic_separating_cover(args.g, args.N, args.h)
    chart = homology_chart(q)
    lifts = lift_classes(chart, curve)
    return {
        "quotient": q.as_dict(),
        "curve": format_word(curve),
        "rank": chart.rank,
        "lifts": len(lifts),
        "span_dim": span_dimension(lifts),
    }, EXIT_OK


def cmd_verify(args):
    if args.action == "lemma32":
        phi = resolve_phi(args.phi, args.g)
        return _report_result(verify_reducible_bound("nonsep", args.g, args.N, phi, cap=args.cap))
    if args.action == "lemma33":
        phi = resolve_phi(args.phi, args.g)
        return _report_result(verify_reducible_bound("sep", args.g, args.N, phi, h=args.h, cap=args.cap))
    if args.action == "lemma22":
        q_sub, q_sup = _quotient(args.sub), _quotient(args.sup)
        phi = resolve_phi(args.phi, q_sub.genus)
        return _report_result(verify_lemma_2_2(q_sub, q_sup, phi, cap=args.cap))
    phi = resolve_phi(args.phi, args.g)
    return _report_result(verify_corollary_4_2(args.g, phi))


def cmd_torus(args):
    phi = resolve_phi(args.phi, args.g)
    return {"h1_rank": mapping_torus_h1_rank(args.g, phi)}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="append a human-readable summary")

    p = _Parser(prog="prymlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(group, name, handler, **kw):
        sp = group.add_parser(name, parents=[common], **kw)
        sp.set_defaults(handler=handler, action=name)
        return sp

    def cap_arg(sp):
        sp.add_argument("--cap", type=int, default=None, help="invariance power cap (env PRYMLAB_MAX_POWER)")

    g_word = sub.add_parser("word").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("reduce", "invert"):
        sp = leaf(g_word, name, cmd_word)
        sp.add_argument("word")
        sp.add_argument("--g", type=int, default=None)

    g_auto = sub.add_parser("auto").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    sp = leaf(g_auto, "check", cmd_auto)
    sp.add_argument("--phi", required=True)
    sp.add_argument("--g", type=int, default=None)
    sp = leaf(g_auto, "twist", cmd_auto)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--curve", required=True)
    sp = leaf(g_auto, "compose", cmd_auto)
    sp.add_argument("--g", type=int, default=None)
    sp.add_argument("--phi", required=True)
    sp.add_argument("--psi", required=True)

    g_cover = sub.add_parser("cover").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("build", "kernel", "invariant-power"):
        sp = leaf(g_cover, name, cmd_cover)
        sp.add_argument("--file", type=existing_file, required=True)
        if name == "invariant-power":
            sp.add_argument("--phi", required=True)
            cap_arg(sp)

    g_prym = sub.add_parser("prym").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("matrix", "fo-dim", "lifts"):
        sp = leaf(g_prym, name, cmd_prym)
        sp.add_argument("--file", type=existing_file, required=True)
        if name == "lifts":
            sp.add_argument("--alpha", required=True)
        else:
            sp.add_argument("--phi", required=True)
            sp.add_argument("--k", type=int, default=None)
            cap_arg(sp)

    g_spec = sub.add_parser("spectra").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("charpoly", "fo", "fixed"):
        sp = leaf(g_spec, name, cmd_spectra)
        sp.add_argument("--matrix", type=existing_file, required=True)

    g_con = sub.add_parser("construct").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    sp = leaf(g_con, "cyclic-nonsep", cmd_construct)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp = leaf(g_con, "cyclic-sep", cmd_construct)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp = leaf(g_con, "char-refine", cmd_construct)
    sp.add_argument("--file", type=existing_file, required=True)
    sp.add_argument("--guard", type=int, default=None, help="candidate tuple limit (env PRYMLAB_GUARD)")

    g_ver = sub.add_parser("verify").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    sp = leaf(g_ver, "lemma32", cmd_verify)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--phi", required=True)
    cap_arg(sp)
    sp = leaf(g_ver, "lemma33", cmd_verify)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--phi", required=True)
    cap_arg(sp)
    sp = leaf(g_ver, "lemma22", cmd_verify)
    sp.add_argument("--sub", type=existing_file, required=True)
    sp.add_argument("--sup", type=existing_file, required=True)
    sp.add_argument("--phi", required=True)
    cap_arg(sp)
    sp = leaf(g_ver, "cor42", cmd_verify)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--phi", required=True)

    g_torus = sub.add_parser("torus").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    sp = leaf(g_torus, "h1", cmd_torus)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--phi", required=True)
    return p


def _fail(tag: str, message: str) -> None:
    message = " ".join(str(message).split())
    print(f"prymlab: {tag}: {message}", file=sys.stderr)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _fail("usage", exc)
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.out and not Path(args.out).resolve().parent.is_dir():
        _fail("usage", f"output directory does not exist: {args.out}")
        return EXIT_INVALID
    if getattr(args, "cap", "unset") is None:
        args.cap = max_power()
    try:
        result, code = args.handler(args)
    except (CapExceeded, FeasibilityError) as exc:
        _fail("undetermined", exc)
        result, code = {"verdict": "undetermined", "reason": str(exc)}, EXIT_UNDETERMINED
    except INVALID as exc:
        _fail("invalid-input", exc)
        return EXIT_INVALID

    text = formats.dumps(result) + "\n"
    if args.pretty:
        text += _summary(result) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
