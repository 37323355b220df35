"""Actions of the 2-torsion group on cusps and on elliptic points.

A quasi-inner class is a 2-torsion point ``kappa`` of ``E(F_q)``.  It moves
a cusp ``c`` to ``kappa + c`` and a norm-kernel point ``P`` to
``iota(kappa) + P``.  Since ``kappa = -kappa`` the second action descends to
unordered pairs ``{P, -P}``.

Every predicate in :func:`transitivity_report` is computed twice, once from
``n_E`` and once by enumerating orbits, and the two must agree.  An action
counts as transitive when it has exactly one orbit, so an action on the
empty set is not transitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .classtower import ClassGroupData
from .errors import InvariantViolation
from .curve import CurvePoint, embed_point

__all__ = [
    "QuinnElement",
    "EllipticPartition",
    "TransitivityReport",
    "act_on_cusp",
    "act_on_elliptic",
    "act_on_pair",
    "partition_elliptic",
    "order4_swap",
    "order4_cusp_swap",
    "orbit",
    "orbit_length_on_pairs",
    "pair_label",
    "is_free",
    "transitivity_report",
    "action_tables",
]


@dataclass(frozen=True)
class QuinnElement:
    point: CurvePoint

    def __post_init__(self):
        if self.point.field != self.point.curve.field:
            raise ValueError("quasi-inner classes are points over the base field")
        if not (self.point * 2).is_infinity:
            raise ValueError(f"{self.point} is not 2-torsion")

    @property
    def is_trivial(self) -> bool:
        return self.point.is_infinity

    def __mul__(self, other: "QuinnElement") -> "QuinnElement":
        return QuinnElement(self.point + other.point)

    def __repr__(self):
        return f"κ{self.point}"


def _kappa(k) -> CurvePoint:
    return k.point if isinstance(k, QuinnElement) else QuinnElement(k).point


def act_on_cusp(kappa, c: CurvePoint) -> CurvePoint:
    return _kappa(kappa) + c


def act_on_elliptic(kappa, P: CurvePoint) -> CurvePoint:
    return embed_point(_kappa(kappa), P.field) + P


def act_on_pair(kappa, pair: frozenset) -> frozenset:
    return frozenset(act_on_elliptic(kappa, P) for P in pair)


def pair_label(pair) -> str:
    """Display label of an elliptic pair: its common x-coordinate."""
    (P, *_) = pair
    return str(P.x)


@dataclass(frozen=True)
class EllipticPartition:
    equal_part: tuple
    unequal_part: tuple
    pairs: tuple  # of frozensets, sorted by their smaller point

    def pair_of(self, P: CurvePoint) -> frozenset:
        return frozenset((P, -P))


def partition_elliptic(data: ClassGroupData) -> EllipticPartition:
    equal = tuple(P for P in data.norm_kernel if P == -P)
    unequal = tuple(P for P in data.norm_kernel if P != -P)
    seen, pairs = set(), []
    for P in unequal:
        if P not in seen:
            seen.update((P, -P))
            pairs.append(frozenset((P, -P)))
    part = EllipticPartition(equal, unequal, tuple(pairs))
    k, n = len(equal), data.n_E
    if len(data.norm_kernel) != n * k or len(unequal) != (n - 1) * k or len(unequal) != 2 * len(pairs):
        raise InvariantViolation("elliptic partition counts disagree with n_E")
    return part


def order4_swap(kappa, P: CurvePoint) -> bool:
    """Whether ``kappa`` sends ``P`` to ``-P``.

    The action side and the torsion side (``P`` of order 4 with
    ``2P = iota(kappa)``) are evaluated separately; a disagreement raises.
    """
    if P == -P:
        raise ValueError(f"{P} lies in the equal part")
    k = embed_point(_kappa(kappa), P.field)
    action_side = k + P == -P
    torsion_side = P.order() == 4 and P * 2 == k
    if action_side != torsion_side:
        raise InvariantViolation(f"order-4 lemma fails for {k}, {P}")
    return action_side


def order4_cusp_swap(kappa, c: CurvePoint) -> bool:
    if c == -c:
        raise ValueError(f"{c} is 2-torsion")
    return order4_swap(kappa, c)


def orbit(group: Iterable, x, act) -> frozenset:
    return frozenset(act(k, x) for k in group)


def orbit_length_on_pairs(kappa, pair: frozenset, data: ClassGroupData) -> tuple:
    """``(length of the <kappa>-orbit, length of the full orbit)`` of ``pair``."""
    sub = [data.curve.infinity(), _kappa(kappa)]
    small = len(orbit(sub, pair, act_on_pair))
    full = len(orbit(data.quinn, pair, act_on_pair))
    P = next(iter(pair))
    halved = P.order() == 4 and (P * 2) in {data.iota(k) for k in data.quinn}
    predicted = len(data.quinn) // 2 if halved else len(data.quinn)
    if full != predicted:
        raise InvariantViolation(f"orbit of {sorted(pair)} has length {full}, expected {predicted}")
    return small, full


def is_free(group: Iterable, xs: Iterable, act) -> bool:
    group, xs = list(group), list(xs)
    return all(act(k, x) != x for k in group if not k.is_infinity for x in xs)


def _single_orbit(group, xs, act) -> bool:
    xs = list(xs)
    return bool(xs) and orbit(group, xs[0], act) == frozenset(xs)


@dataclass(frozen=True)
class TransitivityReport:
    n_E: int
    transitive_on_ell_neq: bool
    transitive_on_V: bool
    free_on_V: bool
    free_and_transitive_on_V: bool
    transitive_on_cusps: bool
    quinn_nontrivial: bool
    free_on_cusps: bool
    free_on_ell: bool
    transitive_on_ell_eq: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def transitivity_report(data: ClassGroupData) -> TransitivityReport:
    part = partition_elliptic(data)
    Q, n = data.quinn, data.n_E
    predicted = {
        "transitive_on_ell_neq": n == 2,
        "transitive_on_V": n in (2, 3),
        "free_on_V": n % 2 == 1,
        "free_and_transitive_on_V": n == 3,
        "transitive_on_cusps": len(Q) == data.base.order,
        "quinn_nontrivial": data.base.order % 2 == 0,
        "free_on_cusps": True,
        "free_on_ell": True,
        "transitive_on_ell_eq": True,
    }
    free_V = is_free(Q, part.pairs, act_on_pair)
    trans_V = _single_orbit(Q, part.pairs, act_on_pair)
    observed = {
        "transitive_on_ell_neq": _single_orbit(Q, part.unequal_part, act_on_elliptic),
        "transitive_on_V": trans_V,
        "free_on_V": free_V,
        "free_and_transitive_on_V": free_V and trans_V,
        "transitive_on_cusps": _single_orbit(Q, data.base, act_on_cusp),
        "quinn_nontrivial": len(Q) > 1,
        "free_on_cusps": is_free(Q, data.base, act_on_cusp),
        "free_on_ell": is_free(Q, data.norm_kernel, act_on_elliptic),
        "transitive_on_ell_eq": is_free(Q, part.equal_part, act_on_elliptic)
        and _single_orbit(Q, part.equal_part, act_on_elliptic),
    }
    bad = [k for k in predicted if predicted[k] != observed[k]]
    if bad:
        raise InvariantViolation(f"orbit enumeration contradicts n_E={n} for {bad}")
    return TransitivityReport(n_E=n, **observed)


def action_tables(data: ClassGroupData) -> dict:
    """``{kappa: {point: image}}`` on cusps, on the norm kernel and on pairs."""
    part = partition_elliptic(data)
    out = {"cusps": {}, "elliptic": {}, "pairs": {}}
    for k in data.quinn:
        key = str(k)
        out["cusps"][key] = {str(c): str(act_on_cusp(k, c)) for c in data.base}
        out["elliptic"][key] = {str(P): str(act_on_elliptic(k, P)) for P in data.norm_kernel}
        out["pairs"][key] = {pair_label(p): pair_label(act_on_pair(k, p)) for p in part.pairs}
    return out
