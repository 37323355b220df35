import math
from itertools import product

import pytest

from quinnlab.curve import (SingularCurveError, WeierstrassCurve, all_curves, enumerate_points, eval_l,
                            halvings, l_polynomial, parse_point, two_torsion)
from quinnlab.errors import MathPreconditionError
from quinnlab.gf import base_field, prime_field


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_group_axioms_exhaustive_on_one_curve(q):
    E = all_curves(base_field(q))[-1]
    G = list(enumerate_points(E))
    O = E.infinity()
    for P in G:
        assert P + O == P and P + (-P) == O
        assert P.double() == P + P
    for P, Q in product(G, repeat=2):
        assert P + Q == Q + P
    for P, Q, R in product(G[:6], repeat=3):
        assert (P + Q) + R == P + (Q + R)


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11])
def test_hasse_and_l_polynomial(q):
    for E in all_curves(base_field(q)):
        n = enumerate_points(E).order
        assert abs(q + 1 - n) <= 2 * math.isqrt(q) + 1
        L = l_polynomial(E)
        assert eval_l(L, 1) == n
        assert enumerate_points(E, E.tower).order == eval_l(L, 1) * eval_l(L, -1)


def test_structure_matches_torsion_counts():
    for E in all_curves(prime_field(7)):
        G = enumerate_points(E)
        n1, n2 = G.structure()
        assert n1 * n2 == G.order and n2 % n1 == 0
        assert len(G.torsion(2)) == (4 if n1 % 2 == 0 else (2 if n2 % 2 == 0 else 1))


def test_point_order_divides_group_order():
    E = WeierstrassCurve(-3, 0, prime_field(7))
    G = enumerate_points(E)
    for P in G:
        assert G.order % P.order() == 0
        assert (P * P.order()).is_infinity


def test_halvings_and_two_torsion():
    E = WeierstrassCurve(-1, 0, prime_field(7))
    G = enumerate_points(E)
    assert len(two_torsion(G)) == 4
    for P in G:
        for H in halvings(P, G):
            assert H.double() == P


@pytest.mark.parametrize("p", [3, 5, 7])
def test_singular_curves_rejected(p):
    F = prime_field(p)
    for a, b in product(F.elements(), repeat=2):
        disc = 4 * a ** 3 + 27 * b ** 2 if p != 3 else a  # char 3: x^3 + b is a cube
        if not disc:
            with pytest.raises(SingularCurveError):
                WeierstrassCurve(a, b, F)
        else:
            WeierstrassCurve(a, b, F)
    assert issubclass(SingularCurveError, MathPreconditionError)


def test_long_form_completing_the_square():
    F = prime_field(7)
    E = WeierstrassCurve.from_long(F, a1=1, a3=2, a2=3, a4=1, a6=5)
    short = WeierstrassCurve(E.a, E.b, F)
    n_long = 1 + sum(1 for x, y in product(F.elements(), repeat=2)
                     if y * y + x * y + 2 * y == x ** 3 + 3 * x ** 2 + x + 5)
    assert enumerate_points(short).order == n_long


def test_long_form_x2_term_in_char_3_rejected():
    with pytest.raises(ValueError):
        WeierstrassCurve.from_long(prime_field(3), a2=1, a4=1)


def test_parse_point():
    E = WeierstrassCurve(-3, 0, prime_field(7))
    assert parse_point(E, "inf").is_infinity
    P = parse_point(E, "(2,-3)")
    assert str(P) == "(2,4)"
    Q = parse_point(E, "(5,3i)")
    assert Q.field == E.tower and Q.frobenius() == -Q
    with pytest.raises(ValueError):
        parse_point(E, "(1,1)")
    with pytest.raises(ValueError):
        parse_point(E, "2,3")


def test_points_over_other_field_are_distinct_objects():
    E = WeierstrassCurve(-3, 0, prime_field(7))
    P = parse_point(E, "(0,0)")
    assert parse_point(E, "(0,0)", E.tower).to_base() == P
