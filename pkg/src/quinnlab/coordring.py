"""The coordinate ring ``A = F[x, y]/(y^2 - f(x))`` of a short Weierstrass curve.

Elements are ``a(x) + b(x) y``.  Nonzero ideals are stored by their canonical
F[x]-module basis in the basis ``{1, y}``::

    [[a, 0],        row 1:  a(x)
     [c, d]]        row 2:  c(x) + d(x) y

with ``a`` and ``d`` monic and ``deg c < deg a``.  Two ideals are equal
exactly when these matrices are equal.  Classes are read off by Cantor
reduction to a Mumford pair ``(u, v)`` with ``deg u <= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .curve import CurvePoint, WeierstrassCurve
from .errors import InvariantViolation
from .gf import Field, FieldElement
from .polyf import InexactDivisionError, Poly

__all__ = [
    "CoordRing",
    "RingElement",
    "IdealHNF",
    "MumfordForm",
    "hnf_from_generators",
    "ideal_product",
    "ideal_equal",
    "principal_ideal",
    "cantor_reduce",
    "class_of_ideal",
    "prime_ideal",
]


class CoordRing:
    """``A`` (``field`` = the curve's base field) or ``A~`` (its tower)."""

    def __init__(self, curve: WeierstrassCurve, field: Optional[Field] = None):
        self.curve = curve
        self.field = field or curve.field
        if not self.field.contains_subfield(curve.field):
            raise ValueError(f"{self.field} does not contain {curve.field}")
        self.f = curve.f.base_change(self.field)

    def __eq__(self, other):
        return isinstance(other, CoordRing) and self.curve == other.curve and self.field == other.field

    def __hash__(self):
        return hash((self.curve, self.field))

    def __repr__(self):
        return f"CoordRing({self.curve.label()} over {self.field})"

    def poly(self, coeffs=()) -> Poly:
        return Poly(self.field, coeffs)

    @cached_property
    def zero(self) -> "RingElement":
        return RingElement(self, self.poly(), self.poly())

    @cached_property
    def one(self) -> "RingElement":
        return RingElement(self, self.poly([1]), self.poly())

    @cached_property
    def x(self) -> "RingElement":
        return RingElement(self, Poly.x(self.field), self.poly())

    @cached_property
    def y(self) -> "RingElement":
        return RingElement(self, self.poly(), self.poly([1]))

    def __call__(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            return self.embed(value)
        if isinstance(value, Poly):
            return RingElement(self, value.base_change(self.field) if value.field != self.field else value,
                               self.poly())
        if isinstance(value, (int, FieldElement)):
            return RingElement(self, self.poly([self.field(value)]), self.poly())
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def element(self, a, b=None) -> "RingElement":
        a = a if isinstance(a, Poly) else self.poly(a)
        b = self.poly() if b is None else (b if isinstance(b, Poly) else self.poly(b))
        return RingElement(self, a, b)

    def embed(self, e: "RingElement") -> "RingElement":
        """Image of ``e`` under ``A -> A~`` (identity if already here)."""
        if e.ring == self:
            return e
        if e.ring.curve != self.curve or not self.field.contains_subfield(e.ring.field):
            raise ValueError(f"cannot embed {e.ring} into {self}")
        return RingElement(self, e.a.base_change(self.field), e.b.base_change(self.field))

    def parse(self, text: str) -> "RingElement":
        """Parse ``"y - 3*x^2 + 1"``.  Powers ``y^k`` with ``k >= 2`` are rejected."""
        from ._parse import parse_expression

        alg = _RingAlgebra(self)
        return parse_expression(text, alg, {"x", "y", *alg.scalars})


class RingElement:
    """``a(x) + b(x) y`` in a :class:`CoordRing`."""

    __slots__ = ("ring", "a", "b")

    def __init__(self, ring: CoordRing, a: Poly, b: Poly):
        self.ring = ring
        self.a = a
        self.b = b

    def _lift(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring == self.ring:
                return other
            return self.ring.embed(other)
        if isinstance(other, (int, FieldElement, Poly)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, -self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.ring.f
        return RingElement(self.ring, self.a * o.a + self.b * o.b * f, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.ring.one
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, RingElement) or other.ring != self.ring else other
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_zero(self) -> bool:
        return not self

    def conj(self) -> "RingElement":
        """``a - b y``."""
        return RingElement(self.ring, self.a, -self.b)

    def norm(self) -> Poly:
        """``(a + by)(a - by) = a^2 - b^2 f``."""
        return self.a * self.a - self.b * self.b * self.ring.f

    def exact_div(self, d) -> "RingElement":
        """``self / d`` in ``A``; raises :class:`InexactDivisionError` otherwise."""
        d = self._lift(d)
        if not d:
            raise ZeroDivisionError("division by zero in the coordinate ring")
        n = d.norm()
        num = self * d.conj()
        try:
            return RingElement(self.ring, num.a.exact_div(n), num.b.exact_div(n))
        except InexactDivisionError:
            raise InexactDivisionError(f"{d} does not divide {self} in {self.ring}") from None

    def divides(self, other) -> bool:
        try:
            self._lift(other).exact_div(self)
        except InexactDivisionError:
            return False
        return True

    def frobenius(self) -> "RingElement":
        """Conjugate every coefficient (tower ring only)."""
        return RingElement(self.ring, self.ring.poly([c.frobenius() for c in self.a.coeffs]),
                           self.ring.poly([c.frobenius() for c in self.b.coeffs]))

    def infinity_valuation(self):
        """Valuation at the point at infinity: ``-max(2 deg a, 3 + 2 deg b)``."""
        if not self:
            return float("inf")
        return -max(2 * self.a.degree, 3 + 2 * self.b.degree)

    def is_unit(self) -> bool:
        return bool(self) and self.norm().degree == 0

    def __repr__(self):
        if not self.b:
            return str(self.a)
        btxt = str(self.b)
        yterm = "y" if self.b == 1 else (f"({btxt})*y" if " " in btxt or "-" in btxt else f"{btxt}*y")
        if not self.a:
            return yterm
        return f"{yterm} + {self.a}"

    __str__ = __repr__


def infinity_valuation(e: RingElement):
    return e.infinity_valuation()


class _RingAlgebra:
    def __init__(self, ring: CoordRing):
        self.ring = ring
        from .gf import _FieldAlgebra

        self.scalars = _FieldAlgebra(ring.field).gens

    def const(self, n): return self.ring(n)

    def var(self, name):
        if name == "x":
            return self.ring.x
        if name == "y":
            return self.ring.y
        return self.ring(self.scalars[name])

    def add(self, a, b): return a + b
    def sub(self, a, b): return a - b
    def mul(self, a, b): return a * b
    def div(self, a, b): return a.exact_div(b)
    def neg(self, a): return -a

    def pow(self, a, n, tok):
        if tok == ("name", "y") and n >= 2:
            from ._parse import ParseError

            raise ParseError("ring elements are written with y-degree at most 1")
        return a ** n


# ---------------------------------------------------------------------------
# ideals

@dataclass(frozen=True, eq=False)
class IdealHNF:
    """Nonzero ideal with canonical basis ``{a, c + d y}`` over F[x]."""

    ring: CoordRing
    a: Poly
    c: Poly
    d: Poly

    def __post_init__(self):
        a, c, d = self.a, self.c, self.d
        if not a or not d:
            raise ValueError("ideal basis must have full rank")
        if not (a.is_monic() and d.is_monic()) or c.degree >= a.degree:
            raise ValueError("basis is not in canonical form")
        if not self._closed_under_y():
            raise ValueError("span is not closed under multiplication by y")

    def _closed_under_y(self) -> bool:
        # y*a = a y and y*(c + d y) = d f + c y must lie in the span
        return self.contains(self.ring.element(self.poly0(), self.a)) and \
            self.contains(self.ring.element(self.d * self.ring.f, self.c))

    def poly0(self) -> Poly:
        return self.ring.poly()

    def matrix(self) -> tuple:
        z = self.ring.poly()
        return ((self.a, z), (self.c, self.d))

    def basis(self) -> tuple:
        R = self.ring
        return (R.element(self.a), R.element(self.c, self.d))

    def contains(self, e: RingElement) -> bool:
        e = self.ring(e)
        k, r = e.b.divmod(self.d)
        if r:
            return False
        rest = e.a - k * self.c
        return self.a.divides(rest)

    def __eq__(self, other):
        if not isinstance(other, IdealHNF):
            return NotImplemented
        return self.ring == other.ring and (self.a, self.c, self.d) == (other.a, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.c, self.d))

    def __mul__(self, other: "IdealHNF") -> "IdealHNF":
        return ideal_product(self, other)

    def __pow__(self, n: int) -> "IdealHNF":
        result = hnf_from_generators([self.ring.one])
        for _ in range(n):
            result = result * self
        return result

    def is_unit(self) -> bool:
        return self.a.degree == 0 and self.d.degree == 0

    def norm_degree(self) -> int:
        """``dim_F A/I = deg a + deg d``."""
        return self.a.degree + self.d.degree

    def is_principal(self) -> bool:
        return class_of_ideal(self).is_infinity

    def conjugate(self) -> "IdealHNF":
        """Galois conjugate of an ideal of the tower ring."""
        return hnf_from_generators([g.frobenius() for g in self.basis()])

    def extend(self, ring: CoordRing) -> "IdealHNF":
        """The extended ideal ``I A~``."""
        return hnf_from_generators([ring.embed(g) for g in self.basis()], ring=ring)

    def to_json(self) -> list:
        return [[str(p) for p in row] for row in self.matrix()]

    def __repr__(self):
        return f"Ideal({self.a}, {self.ring.element(self.c, self.d)})"


def hnf_from_generators(gens: Sequence[RingElement], ring: Optional[CoordRing] = None) -> IdealHNF:
    """Canonical basis of the ideal generated by ``gens``.

    The rows are the coordinates of ``g`` and ``y g`` for every generator;
    they are brought to triangular form by Euclidean row operations over
    F[x] (gcd elimination in the ``y`` column first, then in the ``1``
    column) and finally normalised.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("the zero ideal has no canonical basis")
    ring = ring or gens[0].ring
    gens = [ring(g) for g in gens]
    rows = []
    for g in gens:
        rows.append((g.a, g.b))
        yg = g * ring.y
        rows.append((yg.a, yg.b))
    rows = [r for r in rows if r[0] or r[1]]

    # y column: Euclid until a single row carries a nonzero y-coefficient
    while True:
        live = [r for r in rows if r[1]]
        if len(live) <= 1:
            break
        pivot = min(live, key=lambda r: r[1].degree)
        new_rows = [pivot]
        for r in rows:
            if r is pivot:
                continue
            if r[1]:
                q = r[1] // pivot[1]
                r = (r[0] - q * pivot[0], r[1] - q * pivot[1])
            if r[0] or r[1]:
                new_rows.append(r)
        rows = new_rows
    live = [r for r in rows if r[1]]
    if not live:
        raise ValueError("generators do not span a rank-2 module")
    c, d = live[0]
    a = ring.poly()
    for r in rows:
        if not r[1]:
            a = a.gcd(r[0]) if a else r[0]
    if not a:
        raise ValueError("generators do not span a rank-2 module")
    a = a.monic()
    inv = d.lc.inverse()
    c, d = c * inv, d * inv
    c = c % a
    return IdealHNF(ring, a, c, d)


def principal_ideal(g: RingElement) -> IdealHNF:
    return hnf_from_generators([g])


def unit_ideal(ring: CoordRing) -> IdealHNF:
    return hnf_from_generators([ring.one])


def ideal_product(I: IdealHNF, J: IdealHNF) -> IdealHNF:
    if I.ring != J.ring:
        raise ValueError("ideals of different rings")
    return hnf_from_generators([g * h for g in I.basis() for h in J.basis()], ring=I.ring)


def ideal_sum(I: IdealHNF, J: IdealHNF) -> IdealHNF:
    return hnf_from_generators(list(I.basis()) + list(J.basis()), ring=I.ring)


def ideal_equal(I: IdealHNF, J: IdealHNF) -> bool:
    return I == J


def prime_ideal(P: CurvePoint, ring: CoordRing) -> IdealHNF:
    """``(x - x0, y - y0)`` for an affine point over ``ring.field``."""
    if P.is_infinity:
        return unit_ideal(ring)
    x0, y0 = ring.field.embed(P.x), ring.field.embed(P.y)
    return hnf_from_generators([ring.x - x0, ring.y - y0], ring=ring)


@dataclass(frozen=True)
class MumfordForm:
    """``(u, v)`` with ``u`` monic, ``deg v < deg u`` and ``u | f - v^2``."""

    u: Poly
    v: Poly

    def __post_init__(self):
        if not self.u.is_monic():
            raise ValueError("u must be monic")
        if self.v.degree >= self.u.degree:
            raise ValueError("deg v must be below deg u")

    def is_reduced(self) -> bool:
        return self.u.degree <= 1


def content_split(I: IdealHNF) -> tuple:
    """``I = d * I'`` with ``I'`` primitive (contains an element ``c' + y``).

    Closure under ``y`` forces ``d | a`` and ``d | c``.  The factor ``d`` is
    an element of F[x], so it generates a principal ideal and dropping it
    does not change the class.
    """
    a, c, d = I.a, I.c, I.d
    return d, a.exact_div(d), c.exact_div(d)


def cantor_reduce(I: IdealHNF) -> MumfordForm:
    """Reduced Mumford pair in the class of ``I``.

    Strip the content, read ``(u, v) = (a/d, -c/d mod u)`` and iterate
    ``u <- monic((f - v^2)/u)``, ``v <- -v mod u`` until ``deg u <= 1``.
    """
    f = I.ring.f
    _, u, c = content_split(I)
    v = (-c) % u
    if (f - v * v) % u:
        raise InvariantViolation("Mumford condition u | f - v^2 violated")
    while u.degree > 1:
        u = (f - v * v).exact_div(u).monic()
        v = (-v) % u
    if u.degree == 0:
        return MumfordForm(u, I.ring.poly())
    return MumfordForm(u, v)


def class_of_ideal(I: IdealHNF) -> CurvePoint:
    """Point of ``E(L)`` representing the class of ``I``.

    The ideal ``(x - x0, y - y0)`` maps to ``(x0, y0)``; principal ideals map
    to infinity.
    """
    m = cantor_reduce(I)
    ring = I.ring
    if m.u.degree == 0:
        return ring.curve.infinity(ring.field)
    x0 = -m.u[0]
    return CurvePoint(ring.curve, ring.field, x0, m.v(x0))
