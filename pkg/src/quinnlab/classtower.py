"""Class groups of ``A`` and of its constant field extension ``A~ = A (x) F_{q^2}``.

``Cl(A) = E(F_q)`` embeds in ``Cl(A~) = E(F_{q^2})`` as the Galois-fixed
points.  The norm ``N(P) = P + conj(P)`` has kernel ``{P : conj(P) = -P}``,
which is in bijection with the elliptic points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator

from .coordring import CoordRing, IdealHNF, RingElement, class_of_ideal, hnf_from_generators
from .curve import CurvePoint, PointGroup, WeierstrassCurve, embed_point, enumerate_points, l_polynomial
from .errors import InvariantViolation, MathPreconditionError
from .polyf import InexactDivisionError, Poly

__all__ = [
    "InvariantViolation",
    "ClassGroupData",
    "build_class_tower",
    "norm_point",
    "check_two_torsion_iso",
    "elliptic_point_ideal",
    "cusp_ideal",
    "residues_mod",
    "valid_elliptic_pairs",
    "random_elliptic_pair",
]


@dataclass(frozen=True)
class ClassGroupData:
    curve: WeierstrassCurve
    base: PointGroup
    tower: PointGroup
    quinn: tuple
    norm_kernel: tuple
    n_E: int
    l_poly: tuple

    @cached_property
    def ring(self) -> CoordRing:
        return CoordRing(self.curve)

    @cached_property
    def tower_ring(self) -> CoordRing:
        return CoordRing(self.curve, self.tower.field)

    def iota(self, P: CurvePoint) -> CurvePoint:
        return embed_point(P, self.tower.field)

    @property
    def q(self) -> int:
        return self.curve.field.order

    def to_json(self) -> dict:
        return {
            "curve": self.curve.label(),
            "q": self.q,
            "cl_order": self.base.order,
            "cl_structure": list(self.base.structure()),
            "points": [str(P) for P in self.base],
            "tower_order": self.tower.order,
            "quinn": [str(P) for P in self.quinn],
            "norm_kernel": [str(P) for P in self.norm_kernel],
            "n_E": self.n_E,
            "l_polynomial": list(self.l_poly),
        }


def build_class_tower(curve: WeierstrassCurve) -> ClassGroupData:
    base = enumerate_points(curve)
    tower = enumerate_points(curve, curve.tower)
    quinn = tuple(sorted(base.torsion(2)))
    kernel = tuple(sorted(P for P in tower if P.frobenius() == -P))
    n_E, rem = divmod(len(kernel), len(quinn))
    if rem:
        raise InvariantViolation("iota(quinn) does not divide the norm kernel")
    return ClassGroupData(curve, base, tower, quinn, kernel, n_E, l_polynomial(curve))


def norm_point(P: CurvePoint) -> CurvePoint:
    """``P + conj(P)`` as a point over the base field."""
    N = P + P.frobenius()
    if not N.is_base_rational():
        raise InvariantViolation(f"norm of {P} is not rational")
    return N.to_base()


def check_two_torsion_iso(data: ClassGroupData) -> bool:
    kernel_2 = {P for P in data.norm_kernel if (P * 2).is_infinity}
    return kernel_2 == {data.iota(P) for P in data.quinn}


def elliptic_point_ideal(s: RingElement, t: RingElement,
                         epsilon=None) -> tuple:
    """``J = A~(epsilon + s) + A~ t`` and its class.

    ``epsilon`` defaults to the tower generator.  Raises
    :class:`MathPreconditionError` unless ``t`` divides ``(conj(epsilon)+s)(epsilon+s)``.
    """
    ring = s.ring
    curve = ring.curve
    tower = curve.tower
    T = CoordRing(curve, tower)
    eps = tower.gen if epsilon is None else tower(epsilon)
    if tower.is_base(eps):
        raise ValueError("epsilon must lie outside the base field")
    if not t:
        raise ValueError("t must be nonzero")
    st, tt = T.embed(s), T.embed(t)
    prod = (st + eps.frobenius()) * (st + eps)
    try:
        prod.exact_div(tt)
    except InexactDivisionError:
        raise MathPreconditionError(f"{t} does not divide (conj(eps)+s)(eps+s)") from None
    J = hnf_from_generators([st + eps, tt], ring=T)
    return J, class_of_ideal(J)


def cusp_ideal(u: RingElement, w: RingElement) -> CurvePoint:
    """Class of the ideal ``(u, w)`` attached to the cusp ``(u : w)``."""
    if not u and not w:
        raise MathPreconditionError("a cusp needs a nonzero coordinate")
    return class_of_ideal(hnf_from_generators([u, w], ring=u.ring))


def residues_mod(I: IdealHNF) -> Iterator[RingElement]:
    """A complete set of representatives of ``A/I``.

    With canonical basis ``{a, c + d y}`` every class has a unique
    representative ``e0 + e1 y`` with ``deg e0 < deg a`` and ``deg e1 < deg d``.
    """
    R = I.ring
    F = R.field
    elems = list(F.elements())
    da, dd = I.a.degree, I.d.degree
    for c1 in product(elems, repeat=dd):
        for c0 in product(elems, repeat=da):
            yield R.element(Poly(F, c0), Poly(F, c1))


def valid_elliptic_pairs(t: RingElement) -> list:
    """All ``s`` modulo ``t`` with ``t | s^2 - sigma`` (``sigma = epsilon^2``)."""
    ring = t.ring
    sigma = ring.curve.tower.s
    It = hnf_from_generators([t], ring=ring)
    if It.d.degree == 0:
        # y = -c modulo (t), so A/(t) = F[x]/(a) and the test runs in F[x]
        return [s for s in residues_mod(It) if not (s.a * s.a - sigma) % It.a]
    if t.b:
        return [s for s in residues_mod(It) if It.contains(s * s - sigma)]
    # t = g(x): s0 + s1 y qualifies iff g | 2 s0 s1 and g | s0^2 + f s1^2 - sigma
    g = It.a
    reps = [Poly(ring.field, c) for c in product(list(ring.field.elements()), repeat=g.degree)]
    roots = {}
    for s0 in reps:
        roots.setdefault((s0 * s0) % g, []).append(s0)
    out = []
    for s1 in reps:
        for s0 in roots.get((sigma - ring.f * s1 * s1) % g, ()):
            if not (s0 * s1 * 2) % g:
                out.append(ring.element(s0, s1))
    return out


def _random_element(ring: CoordRing, rng: random.Random, deg_a: int, deg_b: int) -> RingElement:
    F = ring.field
    a = Poly(F, [F.from_index(rng.randrange(F.order)) for _ in range(deg_a + 1)])
    b = Poly(F, [F.from_index(rng.randrange(F.order)) for _ in range(deg_b + 1)]) if deg_b >= 0 else Poly(F)
    return ring.element(a, b)


def random_elliptic_pair(ring: CoordRing, rng: random.Random, max_norm_degree: int = 4) -> tuple:
    """Random ``(s, t)`` meeting the divisibility precondition.

    ``t`` is drawn with small norm and ``s`` uniformly among the valid
    residues; ``t`` is redrawn when none exist.  Random multiples of ``t``
    are added to ``s`` so the generators are not always reduced.
    """
    while True:
        shape = rng.randrange(3)
        if shape == 2:
            t = ring.y + _random_element(ring, rng, 1, -1)
        else:
            t = _random_element(ring, rng, shape + 1, -1)
        if t.norm().degree < 1 or t.norm().degree > max_norm_degree:
            continue
        choices = valid_elliptic_pairs(t)
        if not choices:
            continue
        s = rng.choice(choices)
        s = s + t * _random_element(ring, rng, 1, 0)
        return s, t
