"""Cremona's normalizer criterion for ``GL_2(A)`` and everything around it.

A matrix ``M`` over ``A`` normalizes ``GL_2(A)`` (up to scalars) exactly when
``q(M)^2 = (det M)``, where ``q(M)`` is the ideal generated by the entries.
The class of ``q(M)`` is then 2-torsion and identifies the quasi-inner
automorphism that ``M`` induces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Optional

from ._parse import parse_expression, split_matrix
from .coordring import (CoordRing, IdealHNF, RingElement, class_of_ideal,
                        hnf_from_generators, principal_ideal)
from .curve import CurvePoint, WeierstrassCurve, embed_point
from .errors import InvariantViolation, MathPreconditionError
from .polyf import InexactDivisionError, Poly

__all__ = [
    "MatrixOverA",
    "NormalizerReport",
    "q_of_matrix",
    "cremona_check",
    "normalizer_class",
    "construct_normalizer",
    "search_normalizer",
    "matrix_product",
    "transform_pair",
    "check_multiplication",
    "parse_matrix",
]


@dataclass(frozen=True)
class MatrixOverA:
    a: RingElement
    b: RingElement
    c: RingElement
    d: RingElement

    def __post_init__(self):
        if not self.delta:
            raise MathPreconditionError("matrix has zero determinant")

    @property
    def ring(self) -> CoordRing:
        return self.a.ring

    @cached_property
    def delta(self) -> RingElement:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls, ring: CoordRing) -> "MatrixOverA":
        return cls(ring.one, ring.zero, ring.zero, ring.one)

    @classmethod
    def from_rows(cls, ring: CoordRing, rows) -> "MatrixOverA":
        (a, b), (c, d) = rows
        return cls(*(ring(e) for e in (a, b, c, d)))

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "MatrixOverA") -> "MatrixOverA":
        return matrix_product(self, other)

    def scale(self, e: RingElement) -> "MatrixOverA":
        return MatrixOverA(*(e * x for x in self.entries()))

    def embed(self, ring: CoordRing) -> "MatrixOverA":
        return MatrixOverA(*(ring.embed(x) for x in self.entries()))

    def to_json(self) -> list:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]

    def __str__(self):
        return "[[{}, {}], [{}, {}]]".format(*self.entries())


def matrix_product(M: MatrixOverA, N: MatrixOverA) -> MatrixOverA:
    return MatrixOverA(M.a * N.a + M.b * N.c, M.a * N.b + M.b * N.d,
                       M.c * N.a + M.d * N.c, M.c * N.b + M.d * N.d)


def q_of_matrix(M: MatrixOverA) -> IdealHNF:
    return hnf_from_generators(list(M.entries()), ring=M.ring)


@dataclass(frozen=True)
class NormalizerReport:
    is_normalizer: bool
    qM: IdealHNF
    class_point: CurvePoint
    delta: RingElement
    row_col_ok: bool
    m_squared_ok: bool
    v_infinity_delta: int
    parity_ok: bool

    def to_json(self) -> dict:
        return {
            "is_normalizer": self.is_normalizer,
            "qM": self.qM.to_json(),
            "class": str(self.class_point),
            "delta": str(self.delta),
            "row_col_ok": self.row_col_ok,
            "m_squared_ok": self.m_squared_ok,
            "v_infinity_delta": self.v_infinity_delta,
            "parity_ok": self.parity_ok,
        }


def _pair_ideal(u: RingElement, w: RingElement, ring: CoordRing) -> Optional[IdealHNF]:
    gens = [g for g in (u, w) if g]
    return hnf_from_generators(gens, ring=ring) if gens else None


def _m_squared_ok(M: MatrixOverA) -> bool:
    """Whether ``M^2 / det M`` has entries in ``A`` and determinant 1."""
    M2 = M @ M
    try:
        N = MatrixOverA(*(e.exact_div(M.delta) for e in M2.entries()))
    except (InexactDivisionError, MathPreconditionError):
        return False
    return N.delta == M.ring.one


def cremona_check(M: MatrixOverA) -> NormalizerReport:
    ring = M.ring
    qM = q_of_matrix(M)
    is_norm = qM * qM == principal_ideal(M.delta)
    a, b, c, d = M.entries()
    sums = [_pair_ideal(*pair, ring) for pair in ((a, b), (a, c), (d, b), (d, c))]
    row_col = all(s == qM for s in sums)
    v = M.delta.infinity_valuation()
    rep = NormalizerReport(
        is_normalizer=is_norm,
        qM=qM,
        class_point=class_of_ideal(qM),
        delta=M.delta,
        row_col_ok=row_col,
        m_squared_ok=_m_squared_ok(M),
        v_infinity_delta=v,
        parity_ok=v % 2 == 0,
    )
    if is_norm:
        if not row_col:
            raise InvariantViolation(f"criterion holds but rows/columns do not generate q(M) for {M}")
        if not ((rep.class_point * 2).is_infinity and rep.m_squared_ok and rep.parity_ok):
            raise InvariantViolation(f"criterion holds but a consequence fails for {M}")
    return rep


def normalizer_class(M: MatrixOverA) -> CurvePoint:
    rep = cremona_check(M)
    if not rep.is_normalizer:
        raise MathPreconditionError(f"{M} does not normalize GL_2(A)")
    return rep.class_point


def construct_normalizer(curve: WeierstrassCurve, target: CurvePoint) -> MatrixOverA:
    """``[[y, f'(a) - f/(x-a)], [x-a, -y]]`` for the 2-torsion point ``(a, 0)``.

    Its determinant is ``-f'(a)(x-a)``.  The result is verified before it is
    returned.  The trivial class is represented by the identity.
    """
    ring = CoordRing(curve)
    if target.is_infinity:
        return MatrixOverA.identity(ring)
    if target.field != curve.field or target.y:
        raise MathPreconditionError(f"{target} is not a rational 2-torsion point")
    x_a = ring.x - target.x
    h = curve.f.exact_div(x_a.a)
    b = ring(curve.f.derivative()(target.x)) - ring(h)
    M = MatrixOverA(ring.y, b, x_a, -ring.y)
    rep = cremona_check(M)
    if not rep.is_normalizer or rep.class_point != target:
        raise InvariantViolation(f"constructed matrix for {target} fails verification")
    return M


def _polys(field, max_degree: int, monic: bool) -> Iterator[Poly]:
    elems = list(field.elements())
    for deg in range(0 if not monic else 1, max_degree + 1):
        if monic:
            for low in product(elems, repeat=deg):
                yield Poly(field, list(reversed(low)) + [field.one])
        else:
            for lead in elems[1:] if deg else elems:
                for low in product(elems, repeat=deg):
                    yield Poly(field, list(reversed(low)) + [lead])


def search_normalizer(curve: WeierstrassCurve, target: CurvePoint, max_degree: int = 2) -> Optional[MatrixOverA]:
    """First ``[[y, b], [c, -y]]`` (``c`` monic, degrees bounded) with class ``target``.

    Enumeration runs over ``c`` then ``b`` by increasing degree and
    lexicographic coefficients.  This is an independent cross-check of
    :func:`construct_normalizer`.
    """
    ring = CoordRing(curve)
    F = curve.field
    for c in _polys(F, max_degree, monic=True):
        for b in _polys(F, max_degree, monic=False):
            delta = -(curve.f + b * c)
            if not delta:
                continue
            M = MatrixOverA(ring.y, ring(b), ring(c), -ring.y)
            rep = cremona_check(M)
            if rep.is_normalizer and rep.class_point == target:
                return M
    return None


def transform_pair(M: MatrixOverA, u: RingElement, w: RingElement) -> tuple:
    """``(a u + b w, c u + d w)``, computed in the ring of ``u``."""
    R = u.ring
    a, b, c, d = (R.embed(e) for e in M.entries())
    return a * u + b * w, c * u + d * w


def check_multiplication(M: MatrixOverA, u: RingElement, w: RingElement) -> bool:
    """Whether ``[(M(u, w))] = [q(M)] + [(u, w)]`` in the class group of ``u``'s ring.

    Over ``A`` this is the cusp statement; over the tower with
    ``(u, w) = (epsilon + s, t)`` it is the elliptic one.
    """
    R = u.ring
    u2, w2 = transform_pair(M, u, w)
    lhs = class_of_ideal(hnf_from_generators([u2, w2], ring=R))
    rhs = embed_point(class_of_ideal(q_of_matrix(M)), R.field) + \
        class_of_ideal(hnf_from_generators([u, w], ring=R))
    return lhs == rhs


# ---------------------------------------------------------------------------
# text input

class _FracAlgebra:
    """Elements of ``Frac(A)`` as ``(numerator in A, denominator in F[x])``."""

    def __init__(self, ring: CoordRing):
        from .coordring import _RingAlgebra

        self.ring = ring
        self.inner = _RingAlgebra(ring)
        self.scalars = self.inner.scalars

    def _one(self):
        return self.ring.poly([1])

    def const(self, n): return (self.ring(n), self._one())
    def var(self, name): return (self.inner.var(name), self._one())

    def _reduced(self, num, den):
        if not num:
            return (num, self._one())
        g = num.a.gcd(num.b).gcd(den)
        lc = den.exact_div(g).lc
        return (self.ring.element(num.a.exact_div(g), num.b.exact_div(g)) * self.ring(lc.inverse()),
                den.exact_div(g).monic())

    def add(self, p, q):
        return self._reduced(p[0] * q[1] + q[0] * p[1], p[1] * q[1])

    def sub(self, p, q): return self.add(p, self.neg(q))
    def mul(self, p, q): return self._reduced(p[0] * q[0], p[1] * q[1])
    def neg(self, p): return (-p[0], p[1])

    def div(self, p, q):
        num, den = q
        if not num:
            raise ZeroDivisionError("division by zero in a matrix entry")
        # 1/(a + b y) = (a - b y) / N(a + b y)
        return self._reduced(p[0] * num.conj() * self.ring(den), p[1] * num.norm())

    def pow(self, p, n, tok):
        self.inner.pow(p[0], n, tok)  # rejects y^k with k >= 2
        out = self.const(1)
        for _ in range(n):
            out = self.mul(out, p)
        return out


def parse_matrix(ring: CoordRing, text: str) -> MatrixOverA:
    """Parse ``"[[y,-x^2],[x,-y]]"``; fractional entries are scaled into ``A``.

    Entries may contain ``/``.  The whole matrix is multiplied by the lcm of
    the denominators, which changes neither the criterion nor the class.
    """
    alg = _FracAlgebra(ring)
    names = {"x", "y", *alg.scalars}
    cells = [parse_expression(e, alg, names) for row in split_matrix(text) for e in row]
    L = ring.poly([1])
    for _, den in cells:
        L = L.lcm(den)
    ents = [num * ring(L.exact_div(den)) for num, den in cells]
    return MatrixOverA(*ents)
