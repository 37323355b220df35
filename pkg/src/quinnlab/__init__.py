"""Exact arithmetic for quasi-inner automorphisms of GL_2 over function field rings."""

from .actions import (act_on_cusp, act_on_elliptic, order4_swap, orbit_length_on_pairs,
                      partition_elliptic, transitivity_report)
from .classtower import (ClassGroupData, build_class_tower, check_two_torsion_iso, cusp_ideal,
                         elliptic_point_ideal, norm_point)
from .coordring import (CoordRing, IdealHNF, MumfordForm, RingElement, cantor_reduce,
                        class_of_ideal, hnf_from_generators, ideal_product, principal_ideal)
from .curve import CurvePoint, PointGroup, SingularCurveError, WeierstrassCurve, enumerate_points, parse_point
from .errors import EnumerationCapExceeded, InexactDivisionError, InvariantViolation, MathPreconditionError
from .gf import FieldElement, base_field, prime_field, quadratic_tower
from .normlab import MatrixOverA, NormalizerReport, construct_normalizer, cremona_check, parse_matrix
from .polyf import Poly, factor, monic_irreducibles_up_to
from .quotgraph import (QuotientSkeleton, build_elliptic_skeleton, build_nagao_ray,
                        build_rational_line, emit, induced_automorphism)
from .ratring import RatRingSpec, g0_matrix, rat_cremona_check

__version__ = "0.1.0"

__all__ = [
    "act_on_cusp",
    "act_on_elliptic",
    "order4_swap",
    "orbit_length_on_pairs",
    "partition_elliptic",
    "transitivity_report",
    "ClassGroupData",
    "build_class_tower",
    "check_two_torsion_iso",
    "cusp_ideal",
    "elliptic_point_ideal",
    "norm_point",
    "CoordRing",
    "IdealHNF",
    "MumfordForm",
    "RingElement",
    "cantor_reduce",
    "class_of_ideal",
    "hnf_from_generators",
    "ideal_product",
    "principal_ideal",
    "CurvePoint",
    "PointGroup",
    "SingularCurveError",
    "WeierstrassCurve",
    "enumerate_points",
    "parse_point",
    "EnumerationCapExceeded",
    "InexactDivisionError",
    "InvariantViolation",
    "MathPreconditionError",
    "FieldElement",
    "base_field",
    "prime_field",
    "quadratic_tower",
    "MatrixOverA",
    "NormalizerReport",
    "construct_normalizer",
    "cremona_check",
    "parse_matrix",
    "Poly",
    "factor",
    "monic_irreducibles_up_to",
    "QuotientSkeleton",
    "build_elliptic_skeleton",
    "build_nagao_ray",
    "build_rational_line",
    "emit",
    "induced_automorphism",
    "RatRingSpec",
    "g0_matrix",
    "rat_cremona_check",
]
