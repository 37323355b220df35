import math

import pytest
from hypothesis import given, settings, strategies as st

from quinnlab.errors import EnumerationCapExceeded, InexactDivisionError
from quinnlab.gf import base_field, prime_field, quadratic_tower
from quinnlab.polyf import Poly, _irreducibles, factor, monic_irreducibles_up_to, parse_poly

F5 = prime_field(5)
F9 = base_field(9)


def polys(F, max_deg=6):
    return st.lists(st.integers(0, F.order - 1), max_size=max_deg + 1).map(
        lambda cs: Poly(F, [F.from_index(c) for c in cs]))


@pytest.mark.parametrize("F", [F5, F9], ids=str)
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_division_identity(F, data):
    a, b = data.draw(polys(F)), data.draw(polys(F, 3))
    if not b:
        with pytest.raises(ZeroDivisionError):
            a.divmod(b)
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@pytest.mark.parametrize("F", [F5, F9], ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_gcd_bezout(F, data):
    a, b = data.draw(polys(F, 5)), data.draw(polys(F, 5))
    g = a.gcd(b)
    if not a and not b:
        assert not g
        return
    assert g.is_monic() and g.divides(a) and g.divides(b)
    g2, s, t = a.xgcd(b)
    assert g2 == g and s * a + t * b == g
    if a and b:
        assert (a * b).monic() == g * a.lcm(b)


@settings(max_examples=60, deadline=None)
@given(f=polys(F5, 7))
def test_factor_reconstructs(f):
    if not f:
        return
    fac = factor(f)
    prod = Poly.const(F5, f.lc)
    for g, e in fac:
        assert g.is_monic() and factor(g) == [(g, 1)]
        prod = prod * g ** e
    assert prod == f
    assert [g.sort_key() for g, _ in fac] == sorted(g.sort_key() for g, _ in fac)


def _necklace(q, d):
    """Number of monic irreducibles of degree d over F_q (Gauss)."""
    mobius = {1: 1}

    def mu(n):
        if n not in mobius:
            k, m, res = 2, n, 1
            while k * k <= m:
                if m % k == 0:
                    m //= k
                    if m % k == 0:
                        return 0
                    res = -res
                k += 1
            mobius[n] = -res if m > 1 else res
        return mobius[n]

    return sum(mu(d // k) * q ** k for k in range(1, d + 1) if d % k == 0) // d


@pytest.mark.parametrize("q,d", [(3, 4), (5, 3), (7, 2), (9, 2)])
def test_irreducible_counts(q, d):
    irr = monic_irreducibles_up_to(base_field(q), d)
    for k in range(1, d + 1):
        assert sum(1 for g in irr if g.degree == k) == _necklace(q, k)


def test_exact_division_and_multiplicity():
    x = Poly.x(F5)
    f = (x - 1) ** 3 * (x + 2)
    assert f.exact_div(x - 1) == (x - 1) ** 2 * (x + 2)
    assert f.multiplicity(x - 1) == 3
    with pytest.raises(InexactDivisionError):
        f.exact_div(x - 2)


def test_degree_of_zero_is_minus_infinity():
    assert Poly.zero(F5).degree == -math.inf


def test_parse_poly():
    x = Poly.x(F5)
    assert parse_poly(F5, "3*x^2 + 4x + 1") == 3 * x ** 2 + 4 * x + 1
    assert parse_poly(F5, "(x-1)(x+2)") == (x - 1) * (x + 2)
    with pytest.raises(Exception):
        parse_poly(F5, "x + z")


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("QUINN_ENUM_CAP", "10")
    _irreducibles.cache_clear()
    try:
        with pytest.raises(EnumerationCapExceeded):
            monic_irreducibles_up_to(prime_field(11), 3)
    finally:
        monkeypatch.undo()
        _irreducibles.cache_clear()


def test_base_change_and_roots():
    F7 = prime_field(7)
    x = Poly.x(F7)
    f = x ** 2 + 1
    assert f.roots() == []
    T = quadratic_tower(F7)
    assert sorted(r.index() for r in f.base_change(T).roots()) == sorted([T.gen.index(), (-T.gen).index()])
