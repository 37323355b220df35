"""Univariate polynomials over a finite field.

Coefficients are stored low degree first with trailing zeros stripped.  The
zero polynomial has degree ``-inf``.

Polynomial order
----------------
``Poly.sort_key`` orders polynomials by degree, then by coefficients from the
leading one down, each compared by field order.  Enumerations
(:func:`monic_irreducibles_up_to`, search routines) follow this order.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache
from itertools import product
from typing import Iterable

from .gf import Field, FieldElement

__all__ = [
    "Poly",
    "InexactDivisionError",
    "EnumerationCapExceeded",
    "monic_irreducibles_up_to",
    "factor",
    "parse_poly",
    "enumeration_cap",
]

DEFAULT_ENUM_CAP = 2500


class InexactDivisionError(ArithmeticError):
    """Raised when an exact division has a nonzero remainder."""


class EnumerationCapExceeded(ValueError):
    """Raised when a brute-force enumeration would exceed the configured cap."""


def enumeration_cap() -> int:
    return int(os.environ.get("QUINN_ENUM_CAP", DEFAULT_ENUM_CAP))


class Poly:
    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field: Field, coeffs: Iterable = (), var: str = "x"):
        cs = [field(c) if not (isinstance(c, FieldElement) and c.field is field) else c
              for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self.var = var

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field, var="x"):
        return cls(field, (), var)

    @classmethod
    def one(cls, field, var="x"):
        return cls(field, (field.one,), var)

    @classmethod
    def const(cls, field, c, var="x"):
        return cls(field, (c,), var)

    @classmethod
    def x(cls, field, var="x"):
        return cls(field, (field.zero, field.one), var)

    @classmethod
    def monomial(cls, field, n, c=1, var="x"):
        return cls(field, [0] * n + [c], var)

    def _new(self, coeffs):
        return Poly(self.field, coeffs, self.var)

    def _from_values(self, values: list) -> "Poly":
        """Build from raw field values (hot path: no coercion)."""
        F = self.field
        z = F.zero.value
        n = len(values)
        while n and values[n - 1] == z:
            n -= 1
        out = object.__new__(Poly)
        out.field, out.var = F, self.var
        out.coeffs = tuple(FieldElement(F, v) for v in values[:n])
        return out

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field is self.field or other.field == self.field:
                return other
            if self.field.contains_subfield(other.field):
                return self._new([self.field.embed(c) for c in other.coeffs])
            raise TypeError(f"cannot combine polynomials over {self.field} and {other.field}")
        if isinstance(other, (int, FieldElement)):
            return self._new((self.field(other),))
        return NotImplemented

    def base_change(self, field: Field) -> "Poly":
        return Poly(field, [field.embed(c) for c in self.coeffs], self.var)

    # basic properties ---------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def lc(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, k: int) -> FieldElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = self.coeffs[-1].inverse()
        return self._new([c * inv for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElement)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(c.value for c in self.coeffs))

    def sort_key(self):
        return (len(self.coeffs), tuple(c.index() for c in reversed(self.coeffs)))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.field._add
        nb = len(b)
        return self._from_values([add(a[k].value, b[k].value) if k < nb else a[k].value
                                  for k in range(len(a))])

    __radd__ = __add__

    def __neg__(self):
        neg = self.field._neg
        return self._from_values([neg(c.value) for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new(())
        F = self.field
        out = [F.zero.value] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            av = ai.value
            for j, bj in enumerate(b):
                out[i + j] = F._add(out[i + j], F._mul(av, bj.value))
        return self._from_values(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self._new((self.field.one,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other) -> tuple:
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        mul, sub, z = F._mul, F._sub, F.zero.value
        rem = [c.value for c in self.coeffs]
        bs = [c.value for c in other.coeffs]
        db = len(bs) - 1
        inv_lc = F._inv(bs[-1])
        quot = [z] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c == z:
                continue
            c = mul(c, inv_lc)
            quot[k] = c
            for j, bj in enumerate(bs):
                rem[k + j] = sub(rem[k + j], mul(c, bj))
        return self._from_values(quot), self._from_values(rem[:db] if db > 0 else [])

    __divmod__ = divmod

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other) -> "Poly":
        quot, rem = self.divmod(other)
        if rem:
            raise InexactDivisionError(f"{other} does not divide {self}")
        return quot

    def divides(self, other) -> bool:
        if not self:
            return not other
        return not (self._lift(other) % self)

    def gcd(self, other) -> "Poly":
        a, b = self, self._lift(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other) -> tuple:
        """``(g, s, t)`` with ``g = s*self + t*other`` and ``g`` monic (or zero)."""
        other = self._lift(other)
        r0, r1 = self, other
        s0, s1 = self._new((self.field.one,)), self._new(())
        t0, t1 = self._new(()), self._new((self.field.one,))
        while r1:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0:
            inv = r0.lc.inverse()
            r0, s0, t0 = r0 * inv, s0 * inv, t0 * inv
        return r0, s0, t0

    def lcm(self, other) -> "Poly":
        other = self._lift(other)
        if not self or not other:
            return self._new(())
        return (self * other).exact_div(self.gcd(other)).monic()

    def __call__(self, a):
        """Horner evaluation; ``a`` may live in an extension field."""
        if isinstance(a, int):
            a = self.field(a)
        acc = a.field.zero if isinstance(a, FieldElement) else self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    evaluate = __call__

    def derivative(self) -> "Poly":
        return self._new([c * k for k, c in enumerate(self.coeffs)][1:])

    def compose(self, other: "Poly") -> "Poly":
        acc = self._new(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def roots(self) -> list:
        return [a for a in self.field.elements() if not self(a)]

    def multiplicity(self, p: "Poly") -> int:
        if not self:
            raise ValueError("multiplicity in the zero polynomial")
        k, rest = 0, self
        while True:
            q, r = rest.divmod(p)
            if r:
                return k
            k, rest = k + 1, q

    # text ---------------------------------------------------------------
    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            ctext = str(c)
            if k and ("+" in ctext or "-" in ctext):
                ctext = f"({ctext})"
            if k == 0:
                terms.append(ctext)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                terms.append(mono if c == self.field.one else f"{ctext}*{mono}")
        return " + ".join(terms)

    __str__ = __repr__


def _all_monic(field: Field, d: int, var: str):
    """Monic polynomials of exact degree ``d`` in polynomial order."""
    elems = list(field.elements())
    for tail in product(elems, repeat=d):
        # tail is (c_{d-1}, ..., c_0) so lexicographic order matches sort_key
        yield Poly(field, list(reversed(tail)) + [field.one], var)


@lru_cache(maxsize=None)
def _irreducibles(field: Field, d: int, var: str) -> tuple:
    if field.order ** d > enumeration_cap():
        raise EnumerationCapExceeded(
            f"{field.order}^{d} monic polynomials exceeds the enumeration cap")
    found: list = []
    for deg in range(1, d + 1):
        lower = [g for g in found if 2 * g.degree <= deg]
        for f in _all_monic(field, deg, var):
            if all(f % g for g in lower):
                found.append(f)
    return tuple(found)


def monic_irreducibles_up_to(field: Field, d: int, var: str = "x") -> list:
    """All monic irreducibles of degree ``1..d`` over ``field`` in polynomial order."""
    if d < 1:
        raise ValueError("degree bound must be at least 1")
    return list(_irreducibles(field, d, var))


def factor(f: Poly) -> list:
    """Factor ``f`` by trial division.

    Returns ``[(g, e), ...]`` with monic irreducible ``g`` in polynomial order;
    ``f == f.lc * prod(g**e)``.  Constants give ``[]``.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    out = []
    rest = f.monic()
    d = 1
    while rest.degree >= 1:
        if 2 * d > rest.degree:
            out.append((rest, 1))
            break
        for _, g in sorted((g.sort_key(), g) for g in _degree_irreducibles(f.field, d, f.var)):
            e = 0
            while True:
                q, r = rest.divmod(g)
                if r:
                    break
                rest, e = q, e + 1
            if e:
                out.append((g, e))
        d += 1
    # merge the leftover (if any) and restore the documented order
    merged: dict = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda ge: ge[0].sort_key())


@lru_cache(maxsize=None)
def _degree_irreducibles(field: Field, d: int, var: str) -> tuple:
    return tuple(g for g in _irreducibles(field, d, var) if g.degree == d)


class _PolyAlgebra:
    def __init__(self, field, var):
        self.field, self.v = field, var
        from .gf import _FieldAlgebra

        self.scalars = _FieldAlgebra(field).gens

    def const(self, n): return Poly.const(self.field, self.field(n), self.v)

    def var(self, name):
        if name == self.v:
            return Poly.x(self.field, self.v)
        return Poly.const(self.field, self.scalars[name], self.v)

    def add(self, a, b): return a + b
    def sub(self, a, b): return a - b
    def mul(self, a, b): return a * b

    def div(self, a, b):
        return a.exact_div(b)

    def neg(self, a): return -a
    def pow(self, a, n, _tok): return a ** n


def parse_poly(field: Field, text: str, var: str = "x") -> Poly:
    """Parse ``"3*x^2 + 4*x + 1"``.  Any variable other than ``var`` (and the
    field's generator names) is rejected."""
    from ._parse import parse_expression

    alg = _PolyAlgebra(field, var)
    return parse_expression(text, alg, {var, *alg.scalars})
