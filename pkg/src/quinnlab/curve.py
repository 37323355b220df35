"""Short Weierstrass curves ``y^2 = x^3 + a*x + b`` over F_q and F_{q^2}.

The rational points of the curve over ``F_q`` (resp. the tower ``F_{q^2}``)
realise the ideal class group of the coordinate ring ``A`` (resp. its
constant field extension).  Points are enumerated by brute force; group
structure comes from torsion counts, never from random generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional

from .errors import MathPreconditionError
from .gf import Field, FieldElement, QuadraticField, parse_element, quadratic_tower
from .polyf import EnumerationCapExceeded, Poly, enumeration_cap

__all__ = [
    "SingularCurveError",
    "WeierstrassCurve",
    "CurvePoint",
    "PointGroup",
    "enumerate_points",
    "group_structure",
    "two_torsion",
    "halvings",
    "l_polynomial",
    "frobenius_point",
    "embed_point",
    "parse_point",
    "all_curves",
]


class SingularCurveError(MathPreconditionError):
    """The discriminant ``4a^3 + 27b^2`` vanishes."""


class WeierstrassCurve:
    """``y^2 = x^3 + a x + b`` over ``field`` (odd characteristic)."""

    def __init__(self, a, b, field: Field):
        self.field = field
        self.a = field(a)
        self.b = field(b)
        disc = self.a ** 3 * 4 + self.b ** 2 * 27
        if not disc:
            raise SingularCurveError(f"y^2 = x^3 + {self.a}x + {self.b} is singular over {field}")
        self.f = Poly(field, [self.b, self.a, 0, 1])

    @classmethod
    def from_long(cls, field: Field, a1=0, a2=0, a3=0, a4=0, a6=0) -> "WeierstrassCurve":
        """Short model of ``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``.

        Completing the square in ``y`` and, when ``p != 3``, the cube in ``x``.
        In characteristic 3 an ``x^2`` term cannot be removed; such input is
        rejected.
        """
        a1, a2, a3, a4, a6 = (field(c) for c in (a1, a2, a3, a4, a6))
        # y -> y - (a1 x + a3)/2 gives y^2 = x^3 + b2/4 x^2 + b4/2 x + b6/4
        b2 = a1 * a1 + a2 * 4
        b4 = a1 * a3 + a4 * 2
        b6 = a3 * a3 + a6 * 4
        c2, c1, c0 = b2 / 4, b4 / 2, b6 / 4
        if not c2:
            return cls(c1, c0, field)
        if field.p == 3:
            raise ValueError("cannot remove the x^2 term in characteristic 3")
        # x -> x - c2/3
        s = c2 / 3
        a = c1 - c2 * s
        b = c0 - c1 * s + c2 * s * s - s * s * s
        return cls(a, b, field)

    def __repr__(self):
        return f"y^2 = x^3 + {self.a}*x + {self.b} over {self.field}"

    def __eq__(self, other):
        return (isinstance(other, WeierstrassCurve) and self.field == other.field
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.field, self.a.value, self.b.value))

    def label(self) -> str:
        return f"a={self.a},b={self.b}"

    @cached_property
    def tower(self) -> QuadraticField:
        return quadratic_tower(self.field)

    def rhs(self, x: FieldElement) -> FieldElement:
        return x * x * x + self.a * x + self.b

    def contains(self, x: FieldElement, y: FieldElement) -> bool:
        return y * y == self.rhs(x)

    def point(self, x, y, field: Optional[Field] = None) -> "CurvePoint":
        field = field or (x.field if isinstance(x, FieldElement) else self.field)
        return CurvePoint(self, field, field(x), field(y))

    def infinity(self, field: Optional[Field] = None) -> "CurvePoint":
        return CurvePoint(self, field or self.field, None, None)

    def group(self, field: Optional[Field] = None) -> "PointGroup":
        return enumerate_points(self, field or self.field)


class CurvePoint:
    """A point of ``E(L)`` for ``L`` the curve's base field or its tower.

    ``x is None`` denotes the point at infinity.  ``+``, unary ``-`` and
    integer ``*`` implement the chord-tangent group law.
    """

    __slots__ = ("curve", "field", "x", "y")

    def __init__(self, curve: WeierstrassCurve, field: Field, x, y):
        self.curve = curve
        self.field = field
        self.x = x
        self.y = y
        if x is not None and not curve.contains(x, y):
            raise ValueError(f"({x},{y}) is not on {curve}")

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return (self.field == other.field and self.x == other.x and self.y == other.y
                and self.curve == other.curve)

    def __hash__(self):
        if self.x is None:
            return hash("inf")
        return hash((self.x.value, self.y.value))

    def sort_key(self):
        if self.x is None:
            return (0, 0, 0)
        return (1, self.x.index(), self.y.index())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __neg__(self):
        if self.x is None:
            return self
        return CurvePoint(self.curve, self.field, self.x, -self.y)

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("points over different fields; embed first")
        if self.x is None:
            return other
        if other.x is None:
            return self
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if y1 == -y2:
                return self.curve.infinity(self.field)
            return self.double()
        lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return CurvePoint(self.curve, self.field, x3, y3)

    def __sub__(self, other):
        return self + (-other)

    def double(self) -> "CurvePoint":
        if self.x is None or not self.y:
            return self.curve.infinity(self.field)
        x1, y1 = self.x, self.y
        a = self.field.embed(self.curve.a)
        lam = (x1 * x1 * 3 + a) / (y1 * 2)
        x3 = lam * lam - x1 * 2
        y3 = lam * (x1 - x3) - y1
        return CurvePoint(self.curve, self.field, x3, y3)

    def __mul__(self, n: int) -> "CurvePoint":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (-self) * (-n)
        result = self.curve.infinity(self.field)
        addend = self
        while n:
            if n & 1:
                result = result + addend
            addend = addend.double()
            n >>= 1
        return result

    __rmul__ = __mul__

    def order(self) -> int:
        """Order by repeated addition."""
        n, P = 1, self
        while not P.is_infinity:
            P = P + self
            n += 1
        return n

    def frobenius(self) -> "CurvePoint":
        return frobenius_point(self)

    def is_base_rational(self) -> bool:
        if self.x is None or self.field == self.curve.field:
            return True
        return self.x.frobenius() == self.x and self.y.frobenius() == self.y

    def to_base(self) -> "CurvePoint":
        """Same point viewed over the curve's base field (must be rational)."""
        if self.field == self.curve.field:
            return self
        if self.x is None:
            return self.curve.infinity()
        tower = self.field
        return CurvePoint(self.curve, self.curve.field, tower.to_base(self.x), tower.to_base(self.y))

    def __repr__(self):
        if self.x is None:
            return "inf"
        return f"({self.x},{self.y})"

    __str__ = __repr__


def embed_point(P: CurvePoint, field: Field) -> CurvePoint:
    """Image of ``P`` under the inclusion ``E(F_q) -> E(L)``."""
    if P.field == field:
        return P
    if P.x is None:
        return P.curve.infinity(field)
    return CurvePoint(P.curve, field, field.embed(P.x), field.embed(P.y))


def frobenius_point(P: CurvePoint) -> CurvePoint:
    """Coordinatewise Galois conjugate ``(x, y) -> (x^q, y^q)``."""
    if P.x is None:
        return P
    return CurvePoint(P.curve, P.field, P.x.frobenius(), P.y.frobenius())


@dataclass(frozen=True)
class PointGroup:
    curve: WeierstrassCurve
    field: Field
    points: tuple
    order: int = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "order", len(self.points))

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return self.order

    def __contains__(self, P):
        return P in self._point_set

    @cached_property
    def _point_set(self) -> frozenset:
        return frozenset(self.points)

    @property
    def identity(self) -> CurvePoint:
        return self.curve.infinity(self.field)

    def torsion(self, n: int) -> list:
        return [P for P in self.points if (P * n).is_infinity]

    def structure(self) -> tuple:
        return group_structure(self)


def enumerate_points(curve: WeierstrassCurve, field: Optional[Field] = None) -> PointGroup:
    """All points of ``E(field)``: infinity first, then ``x`` then ``y`` in field order."""
    field = field or curve.field
    if not field.contains_subfield(curve.field):
        raise ValueError(f"{field} does not contain {curve.field}")
    if field.order > enumeration_cap():
        raise EnumerationCapExceeded(f"|{field}| = {field.order} exceeds the enumeration cap")
    a, b = field.embed(curve.a), field.embed(curve.b)
    pts = [curve.infinity(field)]
    for x in field.elements():
        for y in field.sqrt(x * x * x + a * x + b):
            pts.append(CurvePoint(curve, field, x, y))
    return PointGroup(curve, field, tuple(pts))


def group_structure(G: PointGroup) -> tuple:
    """Invariant factors ``(d1, d2)`` with ``d1 | d2`` and ``d1*d2 = |G|``.

    ``G[d]`` has ``d^2`` elements exactly when ``d | d1``, so ``d1`` is the
    largest such divisor of ``|G|``.
    """
    n = G.order
    d1 = 1
    for d in range(1, n + 1):
        if n % d == 0 and d * d <= n and len(G.torsion(d)) == d * d:
            d1 = max(d1, d)
    d2 = n // d1
    assert d2 % d1 == 0
    return (d1, d2)


def two_torsion(G: PointGroup) -> list:
    return sorted(G.torsion(2))


def halvings(P: CurvePoint, G: PointGroup) -> list:
    """All ``Q in G`` with ``2Q = P``."""
    return sorted(Q for Q in G.points if Q.double() == P)


def l_polynomial(curve: WeierstrassCurve) -> tuple:
    """Coefficients ``(1, -a_E, q)`` of ``L(t) = 1 - a_E t + q t^2``."""
    q = curve.field.order
    n = enumerate_points(curve).order
    a_E = q + 1 - n
    return (1, -a_E, q)


def eval_l(coeffs: tuple, t: int) -> int:
    return sum(c * t ** k for k, c in enumerate(coeffs))


def parse_point(curve: WeierstrassCurve, text: str, field: Optional[Field] = None) -> CurvePoint:
    """Parse ``"inf"``, ``"(3,2)"`` or ``"(5,3i)"``.

    Without an explicit ``field`` the point lives over the base field unless a
    coordinate mentions the tower generator.
    """
    s = text.strip()
    if s.lower() in ("inf", "(inf,inf)", "infinity", "(∞,∞)", "∞"):
        return curve.infinity(field)
    if not (s.startswith("(") and s.endswith(")")) or s.count(",") != 1:
        raise ValueError(f"cannot parse point {text!r}")
    xs, ys = s[1:-1].split(",")
    if field is None:
        tower = curve.tower
        field = tower if (tower.gen_name in xs or tower.gen_name in ys) else curve.field
    return CurvePoint(curve, field, parse_element(field, xs), parse_element(field, ys))


def all_curves(field: Field) -> list:
    """Every nonsingular short Weierstrass curve over ``field`` in (a, b) field order."""
    out = []
    for a in field.elements():
        for b in field.elements():
            try:
                out.append(WeierstrassCurve(a, b, field))
            except SingularCurveError:
                continue
    return out
