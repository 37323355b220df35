"""Built-in regression checks for the two q = 7 curves and the genus-0 generator.

Each check returns a bool; :func:`run_selftest` collects ``(name, ok)``
pairs.  Graph checks compare against the DOT fixtures shipped in
``quinnlab/fixtures``.
"""

from __future__ import annotations

from importlib import resources
from typing import Callable, List, Tuple

from .actions import act_on_cusp, act_on_elliptic, order4_swap, partition_elliptic, transitivity_report
from .classtower import build_class_tower, check_two_torsion_iso
from .coordring import CoordRing
from .curve import WeierstrassCurve, halvings, parse_point
from .gf import prime_field
from .normlab import construct_normalizer, cremona_check, parse_matrix
from .quotgraph import (build_elliptic_skeleton, build_nagao_ray, build_rational_line, emit_dot,
                        induced_automorphism, label_preserving_automorphisms, line_involution)
from .ratring import RatRingSpec, g0_matrix, rat_cremona_check

__all__ = ["fixture_text", "fixture_names", "run_selftest", "CHECKS"]

CURVE_3X = ("x3-3x", -3, 0)
CURVE_X = ("x3-x", -1, 0)


def fixture_text(name: str) -> str:
    return resources.files("quinnlab").joinpath("fixtures", name).read_text(encoding="utf-8")


def fixture_names() -> dict:
    return {"x3-3x": "x3-3x_q7_depth3.dot", "x3-x": "x3-x_q7_depth3.dot", "line": "line_q7_delta2_depth2.dot"}


def _setup(a, b):
    E = WeierstrassCurve(a, b, prime_field(7))
    return E, build_class_tower(E), (lambda s: parse_point(E, s))


def _pts(E, texts, field=None) -> set:
    return {parse_point(E, s, field) for s in texts}


def _check_3x_groups() -> bool:
    E, d, P = _setup(-3, 0)
    base_ok = set(d.base) == _pts(E, ["inf", "(0,0)", "(2,3)", "(2,-3)", "(3,2)", "(3,-2)", "(6,3)", "(6,-3)"])
    kern = _pts(E, ["inf", "(0,0)", "(1,3i)", "(1,-3i)", "(4,2i)", "(4,-2i)", "(5,3i)", "(5,-3i)"], E.tower)
    return (base_ok and d.base.structure() == (1, 8) and set(d.quinn) == _pts(E, ["inf", "(0,0)"])
            and set(d.norm_kernel) == kern and d.n_E == 4 and d.l_poly == (1, 0, 7)
            and {Q for Q in d.norm_kernel if Q.order() == 4} == _pts(E, ["(5,3i)", "(5,-3i)"], E.tower))


def _check_3x_actions() -> bool:
    E, d, P = _setup(-3, 0)
    k = P("(0,0)")
    return (act_on_cusp(k, P("(3,2)")) == P("(6,3)") and act_on_cusp(k, P("(2,3)")) == P("(2,-3)")
            and act_on_elliptic(k, P("(1,3i)")) == P("(4,2i)") and order4_swap(k, P("(5,3i)"))
            and not order4_swap(k, P("(1,3i)")) and P("(2,3)").double() == k)


def _check_x_groups() -> bool:
    E, d, P = _setup(-1, 0)
    return (d.base.structure() == (2, 4) and len(d.quinn) == 4
            and set(halvings(P("(1,0)"), d.base)) == _pts(E, ["(4,2)", "(4,-2)", "(5,1)", "(5,-1)"])
            and set(d.norm_kernel) == _pts(E, ["inf", "(0,0)", "(1,0)", "(6,0)", "(2,i)", "(2,-i)",
                                              "(3,2i)", "(3,-2i)"], E.tower)
            and all(P(s).double() == parse_point(E, "(6,0)", E.tower)
                    for s in ["(2,i)", "(2,-i)", "(3,2i)", "(3,-2i)"]))


def _check_x_actions() -> bool:
    E, d, P = _setup(-1, 0)
    k1, k6 = P("(1,0)"), P("(6,0)")
    return (act_on_elliptic(k1, P("(2,i)")) == P("(3,-2i)") and act_on_cusp(k6, P("(5,1)")) == P("(4,-2)")
            and order4_swap(k6, P("(2,i)")) and order4_swap(k6, P("(3,2i)"))
            and order4_swap(k1, P("(4,2)")) and transitivity_report(d).transitive_on_ell_neq)


def _check_matrices() -> bool:
    ok = True
    E = WeierstrassCurve(-1, 0, prime_field(7))
    R = CoordRing(E)
    M0 = parse_matrix(R, "[[y,-x^2],[x,-y]]")
    M1 = parse_matrix(R, "[[y,-(x-1)(x+2)],[x-1,-y]]")
    for M, target in ((M0, "(0,0)"), (M1, "(1,0)"), (M0 @ M1, "(6,0)")):
        rep = cremona_check(M)
        ok &= rep.is_normalizer and rep.class_point == parse_point(E, target) and rep.m_squared_ok and rep.parity_ok
    ok &= construct_normalizer(E, parse_point(E, "(1,0)")) == M1
    E3 = WeierstrassCurve(-3, 0, prime_field(7))
    R3 = CoordRing(E3)
    for text in ("[[y,x^2],[x,y]]", "[[y,-x^2],[x,-y]]"):
        rep = cremona_check(parse_matrix(R3, text))
        ok &= rep.is_normalizer and rep.class_point == parse_point(E3, "(0,0)") and rep.m_squared_ok and rep.parity_ok
    ok &= construct_normalizer(E3, parse_point(E3, "(0,0)")) == parse_matrix(R3, "[[y,-x^2],[x,-y]]")
    return bool(ok)


def _check_rational() -> bool:
    spec = RatRingSpec(7, "t^2+1")
    rep = rat_cremona_check(g0_matrix(spec), spec)
    one = RatRingSpec(7, "t")
    return rep.is_normalizer and rep.class_residue == 1 and spec.quinn_order() == 2 and one.quinn_order() == 1


def _check_graphs() -> bool:
    ok = True
    for key, (_, a, b) in (("x3-3x", CURVE_3X), ("x3-x", CURVE_X)):
        E, d, P = _setup(a, b)
        sk = build_elliptic_skeleton(d, 3, figure_compat=True)
        ok &= emit_dot(sk) == fixture_text(fixture_names()[key])
        for k in d.quinn:
            rep = induced_automorphism(sk, k)
            ok &= rep.order == (1 if k.is_infinity else 2)
    line = build_rational_line(7, 2)
    ok &= emit_dot(line) == fixture_text(fixture_names()["line"])
    inv = line_involution(line)
    ok &= inv.is_automorphism and inv.preserves_labels and inv.order == 2
    ok &= len(label_preserving_automorphisms(build_nagao_ray(7))) == 1
    return bool(ok)


def _check_structure() -> bool:
    ok = True
    for _, a, b in (CURVE_3X, CURVE_X):
        E, d, P = _setup(a, b)
        part = partition_elliptic(d)
        ok &= check_two_torsion_iso(d) and len(part.equal_part) == len(d.quinn)
    return bool(ok)


CHECKS: List[Tuple[str, Callable[[], bool]]] = [
    ("x3-3x groups and norm kernel", _check_3x_groups),
    ("x3-3x actions", _check_3x_actions),
    ("x3-x groups and norm kernel", _check_x_groups),
    ("x3-x actions", _check_x_actions),
    ("two-torsion identification", _check_structure),
    ("normalizer matrices", _check_matrices),
    ("genus-0 generator", _check_rational),
    ("graph fixtures and involutions", _check_graphs),
]


def run_selftest() -> List[Tuple[str, bool]]:
    out = []
    for name, fn in CHECKS:
        try:
            ok = bool(fn())
        except Exception:  # any crash counts as a failure of that check
            ok = False
        out.append((name, ok))
    return out
