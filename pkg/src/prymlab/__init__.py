"""Prym representations of surface mapping classes on finite covers, computed exactly."""

from .covers import (
    FiniteQuotient,
    SchreierSystem,
    build_quotient,
    cyclic_quotient,
    is_invariant,
    kernel_contained,
    kernel_presentation,
    minimal_invariant_power,
    rewrite_in_kernel,
    schreier_system,
    trivial_quotient,
)
from .homology import (
    HomologyChart,
    class_of,
    homology_chart,
    inclusion_matrix,
    lift_classes,
    prym_matrix,
)
from .linalg import RationalMatrix, RationalSubspace, span_dimension
from .spectra import (
    RationalPolynomial,
    char_poly,
    cyclotomic,
    finite_orbit_subspace,
    fixed_subspace,
    fo_oracle,
    spectral_report,
    stabilized_power,
)
from .words import (
    AutomorphismPair,
    SurfaceGroup,
    apply_endo,
    check_automorphism,
    compose_automorphisms,
    dehn_is_trivial,
    format_word,
    free_reduce,
    invert_word,
    parse_word,
    surface_relator,
    twist_about,
)

__version__ = "0.1.0"

__all__ = [
    "AutomorphismPair",
    "FiniteQuotient",
    "HomologyChart",
    "RationalMatrix",
    "RationalPolynomial",
    "RationalSubspace",
    "SchreierSystem",
    "SurfaceGroup",
    "apply_endo",
    "build_quotient",
    "char_poly",
    "check_automorphism",
    "class_of",
    "compose_automorphisms",
    "cyclic_quotient",
    "cyclotomic",
    "dehn_is_trivial",
    "finite_orbit_subspace",
    "fixed_subspace",
    "fo_oracle",
    "format_word",
    "free_reduce",
    "homology_chart",
    "inclusion_matrix",
    "invert_word",
    "is_invariant",
    "kernel_contained",
    "kernel_presentation",
    "lift_classes",
    "minimal_invariant_power",
    "parse_word",
    "prym_matrix",
    "rewrite_in_kernel",
    "schreier_system",
    "span_dimension",
    "spectral_report",
    "stabilized_power",
    "surface_relator",
    "trivial_quotient",
    "twist_about",
]
