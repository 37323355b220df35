"""Genus 0: ``A`` is the ring of ``F_q(t)`` regular away from one place of degree δ.

That place is given by a monic irreducible ``pi``.  Every other place is
either a monic irreducible ``p != pi`` or the degree-one place ``INF_T`` at
``t = oo``.  A fractional ideal is a finite valuation vector over these places.
``Cl(A) = Z/δ`` via ``sum v(P) deg P mod δ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Dict, Optional

from ._parse import parse_expression, split_matrix
from .errors import MathPreconditionError
from .gf import Field, base_field
from .polyf import Poly, factor, parse_poly

__all__ = [
    "INF_T",
    "RatRingSpec",
    "RatElement",
    "RatMatrix",
    "RatCremonaReport",
    "rat_valuations",
    "in_A",
    "pi_valuation",
    "rat_cremona_check",
    "rat_class",
    "g0_matrix",
    "parse_rat_matrix",
]

INF_T = "inf_t"


class RatRingSpec:
    def __init__(self, q: int, pi, field: Optional[Field] = None):
        self.field = field or base_field(q)
        self.q = self.field.order
        if isinstance(pi, str):
            pi = parse_poly(self.field, pi, var="t")
        if not pi.is_monic() or pi.degree < 1:
            raise MathPreconditionError(f"{pi} must be monic of positive degree")
        fac = factor(pi)
        if len(fac) != 1 or fac[0][1] != 1:
            raise MathPreconditionError(f"{pi} is not irreducible over {self.field}")
        self.pi = pi
        self.delta = pi.degree

    def __repr__(self):
        return f"RatRingSpec(q={self.q}, pi={self.pi})"

    def poly(self, coeffs=()) -> Poly:
        return Poly(self.field, coeffs, var="t")

    def elem(self, num, den=None) -> "RatElement":
        num = num if isinstance(num, Poly) else self.poly([self.field(num)])
        return RatElement(num, den if den is not None else self.poly([1]))

    @cached_property
    def t(self) -> "RatElement":
        return self.elem(Poly.x(self.field, var="t"))

    @cached_property
    def tau(self) -> "RatElement":
        """Constant term of ``pi``."""
        return self.elem(self.pi[0])

    @cached_property
    def t_prime(self) -> "RatElement":
        """``t'`` with ``pi = t t' + tau``."""
        return self.elem((self.pi - self.pi[0]).exact_div(Poly.x(self.field, var="t")))

    def quinn_order(self) -> int:
        """``|Cl(A)_2| = gcd(2, δ)``."""
        return gcd(2, self.delta)


class RatElement:
    """``num/den`` in ``F_q(t)``, coprime with ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = num, Poly(den.field, [1], var=den.var)
            return
        g = num.gcd(den)
        num, den = num // g, den // g
        lc = den.lc
        self.num, self.den = num * lc.inverse(), den * lc.inverse()

    def __add__(self, o):
        return RatElement(self.num * o.den + o.num * self.den, self.den * o.den)

    def __neg__(self):
        return RatElement(-self.num, self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return RatElement(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        if not o.num:
            raise ZeroDivisionError("division by zero in F_q(t)")
        return RatElement(self.num * o.den, self.den * o.num)

    def __eq__(self, o):
        return isinstance(o, RatElement) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _mult(f: Poly, p: Poly) -> int:
    return f.multiplicity(p) if f else 0


def rat_valuations(e: RatElement, spec: RatRingSpec) -> Dict[object, int]:
    """Nonzero valuations of ``e`` at every place other than ``pi``."""
    if not e:
        raise MathPreconditionError("the zero element has no valuation vector")
    out = {}
    for poly in (e.num, e.den):
        for p, _ in factor(poly):
            if p == spec.pi or p in out:
                continue
            v = _mult(e.num, p) - _mult(e.den, p)
            if v:
                out[p] = v
    v_inf = e.den.degree - e.num.degree
    if v_inf:
        out[INF_T] = v_inf
    return out


def pi_valuation(e: RatElement, spec: RatRingSpec) -> int:
    """Valuation at the excluded place, computed directly from multiplicities."""
    return _mult(e.num, spec.pi) - _mult(e.den, spec.pi)


def in_A(e: RatElement, spec: RatRingSpec) -> bool:
    return not e or all(v >= 0 for v in rat_valuations(e, spec).values())


def place_degree(place) -> int:
    return 1 if place == INF_T else place.degree


def rat_class(ideal: Dict[object, int], spec: RatRingSpec) -> int:
    return sum(v * place_degree(p) for p, v in ideal.items()) % spec.delta


@dataclass(frozen=True)
class RatMatrix:
    a: RatElement
    b: RatElement
    c: RatElement
    d: RatElement

    @cached_property
    def delta(self) -> RatElement:
        return self.a * self.d - self.b * self.c

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, N: "RatMatrix") -> "RatMatrix":
        M = self
        return RatMatrix(M.a * N.a + M.b * N.c, M.a * N.b + M.b * N.d,
                         M.c * N.a + M.d * N.c, M.c * N.b + M.d * N.d)

    def to_json(self) -> list:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]


@dataclass(frozen=True)
class RatCremonaReport:
    is_normalizer: bool
    q_ideal: dict
    ledger: dict  # place -> (2 * min entry valuation, v(delta))
    class_residue: int
    delta: RatElement
    v_pi_delta: int
    parity_ok: bool

    def to_json(self) -> dict:
        return {
            "is_normalizer": self.is_normalizer,
            "q_ideal": {str(p): v for p, v in sorted(self.q_ideal.items(), key=_place_key)},
            "ledger": {str(p): list(v) for p, v in sorted(self.ledger.items(), key=_place_key)},
            "class": self.class_residue,
            "delta": str(self.delta),
            "v_pi_delta": self.v_pi_delta,
            "parity_ok": self.parity_ok,
        }


def _place_key(item):
    p = item[0]
    return (1, ()) if p == INF_T else (0, p.sort_key())


def rat_cremona_check(M: RatMatrix, spec: RatRingSpec) -> RatCremonaReport:
    """``q(M)^2 = (det M)`` checked place by place: ``2 min v(m_i) = v(det M)``."""
    D = M.delta
    if not D:
        raise MathPreconditionError("matrix has zero determinant")
    vals = [rat_valuations(e, spec) for e in M.entries() if e]
    vD = rat_valuations(D, spec)
    places = set(vD)
    for v in vals:
        places.update(v)
    q_ideal, ledger = {}, {}
    for p in places:
        m = min(v.get(p, 0) for v in vals)
        if m:
            q_ideal[p] = m
        ledger[p] = (2 * m, vD.get(p, 0))
    ok = all(lhs == rhs for lhs, rhs in ledger.values())
    v_pi = pi_valuation(D, spec)
    return RatCremonaReport(ok, q_ideal, ledger, rat_class(q_ideal, spec), D, v_pi, v_pi % 2 == 0)


def g0_matrix(spec: RatRingSpec) -> RatMatrix:
    """``[[tau, t], [-t', 1]]``, whose determinant is ``pi``."""
    return RatMatrix(spec.tau, spec.t, -spec.t_prime, spec.elem(1))


class _RatAlgebra:
    def __init__(self, spec: RatRingSpec):
        self.spec = spec

    def const(self, n): return self.spec.elem(n)

    def var(self, name):
        return {"t": self.spec.t, "tau": self.spec.tau, "t'": self.spec.t_prime}[name]

    def add(self, a, b): return a + b
    def sub(self, a, b): return a - b
    def mul(self, a, b): return a * b
    def div(self, a, b): return a / b
    def neg(self, a): return -a

    def pow(self, a, n, _tok):
        out = self.spec.elem(1)
        for _ in range(n):
            out = out * a
        return out


def parse_rat_matrix(spec: RatRingSpec, text: str) -> RatMatrix:
    """Entries may use ``t``, ``tau``, ``t'`` and ``/``."""
    alg = _RatAlgebra(spec)
    cells = [parse_expression(e, alg, {"t", "tau", "t'"}) for row in split_matrix(text) for e in row]
    return RatMatrix(*cells)
