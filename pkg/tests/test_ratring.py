import random

import pytest

from quinnlab.errors import MathPreconditionError
from quinnlab.polyf import Poly
from quinnlab.ratring import (INF_T, RatElement, RatRingSpec, g0_matrix, in_A, parse_rat_matrix, pi_valuation,
                              rat_class, rat_cremona_check, rat_valuations)


@pytest.fixture(scope="module")
def spec():
    return RatRingSpec(7, "t^2+1")


def test_g0_shape(spec):
    g0 = g0_matrix(spec)
    assert str(spec.tau) == "1" and str(spec.t_prime) == "t"
    assert g0.delta == spec.elem(spec.pi)
    rep = rat_cremona_check(g0, spec)
    assert rep.is_normalizer and rep.class_residue == 1
    assert rep.v_pi_delta == 1 and not rep.parity_ok  # odd at pi: g0 inverts an edge
    assert rep.q_ideal == {INF_T: -1}


def test_g0_for_other_degree_two_places():
    for pi in ("t^2+1", "t^2+t+3", "t^2+2"):
        s = RatRingSpec(7, pi)
        rep = rat_cremona_check(g0_matrix(s), s)
        assert rep.is_normalizer and rep.class_residue == 1


def test_degree_one_is_trivial():
    s = RatRingSpec(7, "t+2")
    assert s.quinn_order() == 1
    assert rat_cremona_check(g0_matrix(s), s).class_residue == 0


def test_degree_three_has_trivial_two_torsion():
    s = RatRingSpec(5, "t^3+t+1")
    assert s.delta == 3 and s.quinn_order() == 1


def test_reducible_pi_rejected():
    with pytest.raises(MathPreconditionError):
        RatRingSpec(7, "t^2-1")
    with pytest.raises(MathPreconditionError):
        RatRingSpec(7, "2*t+1")


def test_valuations(spec):
    t = spec.t
    e = (t * t * (t + spec.elem(1))) / (spec.elem(spec.pi) * (t + spec.elem(3)))
    v = rat_valuations(e, spec)
    x = Poly.x(spec.field, var="t")
    assert v[x] == 2 and v[x + 1] == 1 and v[x + 3] == -1
    assert INF_T not in v  # deg num = deg den
    assert rat_valuations(e * spec.t, spec)[INF_T] == -1
    assert pi_valuation(e, spec) == -1
    assert spec.pi not in v


def test_principal_ideals_have_trivial_class(spec):
    """(f) for f in F_q(t): sum of v(P) deg P over P != pi equals -v_pi(f) deg pi."""
    rng = random.Random(1)
    F = spec.field
    for _ in range(100):
        num = Poly(F, [rng.randrange(7) for _ in range(rng.randint(1, 5))], var="t")
        den = Poly(F, [rng.randrange(7) for _ in range(rng.randint(1, 4))], var="t")
        if not num or not den:
            continue
        e = RatElement(num, den)
        assert rat_class(rat_valuations(e, spec), spec) == 0


def test_in_A(spec):
    assert in_A(spec.elem(1) / spec.elem(spec.pi), spec)
    assert not in_A(spec.t, spec)  # pole at infinity_t
    assert not in_A(spec.elem(1) / spec.t, spec)


def test_non_normalizer_and_identity(spec):
    assert not rat_cremona_check(parse_rat_matrix(spec, "[[t,0],[0,1]]"), spec).is_normalizer
    rep = rat_cremona_check(parse_rat_matrix(spec, "[[1,0],[0,1]]"), spec)
    assert rep.is_normalizer and rep.class_residue == 0


def test_parse_rat_matrix_variables(spec):
    M = parse_rat_matrix(spec, "[[tau, t], [-t', 1]]")
    assert M == g0_matrix(spec)
    with pytest.raises(ZeroDivisionError):
        RatElement(Poly(spec.field, [1], var="t"), Poly(spec.field, [], var="t"))


def test_rat_element_normal_form(spec):
    F = spec.field
    a = RatElement(Poly(F, [2, 2], var="t"), Poly(F, [3, 3], var="t"))
    assert a.den == Poly(F, [1], var="t") and a.num == Poly(F, [F(2) / F(3)], var="t")
