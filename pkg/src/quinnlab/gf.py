"""Exact arithmetic in F_q (q = p or p^2, p odd) and the quadratic tower F_{q^2}.

A field is either a :class:`PrimeField` or a :class:`QuadraticField` built as
``base[T]/(T^2 - s)`` for a non-square ``s`` of the base.  Elements are
:class:`FieldElement` instances wrapping a raw value (an ``int`` for prime
fields, a pair of base raw values for quadratic fields).  Raw values are
always reduced, so equality of elements is structural.

Field order
-----------
Every field carries a fixed total order on its elements, exposed through
:meth:`Field.index`.  For ``F_p`` it is ``0, 1, ..., p-1``; for a quadratic
field ``a + b*T`` has index ``index(a) + |base| * index(b)``, so the base
field comes first.  All deterministic tie-breaking in the package uses it.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterator, Union

__all__ = [
    "Field",
    "PrimeField",
    "QuadraticField",
    "FieldElement",
    "prime_field",
    "base_field",
    "quadratic_tower",
    "is_prime",
    "parse_element",
]

Raw = Union[int, tuple]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Common interface of the two field kinds."""

    p: int
    order: int
    degree: int
    gen_name: str

    # raw-level arithmetic, implemented by subclasses
    def _add(self, u, v): raise NotImplementedError
    def _sub(self, u, v): raise NotImplementedError
    def _mul(self, u, v): raise NotImplementedError
    def _neg(self, u): raise NotImplementedError
    def _inv(self, u): raise NotImplementedError
    def _from_int(self, n: int): raise NotImplementedError
    def _from_index(self, k: int): raise NotImplementedError
    def _index(self, u) -> int: raise NotImplementedError
    def _format(self, u) -> str: raise NotImplementedError

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return self.embed(value)
        if isinstance(value, int):
            return FieldElement(self, self._from_int(value))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    @cached_property
    def zero(self) -> "FieldElement":
        return FieldElement(self, self._from_int(0))

    @cached_property
    def one(self) -> "FieldElement":
        return FieldElement(self, self._from_int(1))

    def elements(self) -> Iterator["FieldElement"]:
        """All elements in field order."""
        for k in range(self.order):
            yield FieldElement(self, self._from_index(k))

    @cached_property
    def _element_list(self) -> list:
        return list(self.elements())

    def from_index(self, k: int) -> "FieldElement":
        return self._element_list[k]

    def index(self, a: "FieldElement") -> int:
        return self._index(a.value)

    def subfields(self) -> tuple:
        """This field followed by the chain of subfields it was built on."""
        return (self,)

    def contains_subfield(self, other: "Field") -> bool:
        return any(f == other for f in self.subfields())

    def embed(self, a: "FieldElement") -> "FieldElement":
        """Image of ``a`` (an element of this field or a subfield)."""
        if a.field == self:
            return a
        raise ValueError(f"{a.field} is not a subfield of {self}")

    @cached_property
    def _sqrt_table(self) -> dict:
        table: dict = {}
        for r in self._element_list:
            table.setdefault((r * r).value, []).append(r)
        return table

    def sqrt(self, a: "FieldElement") -> list:
        """All square roots of ``a`` in this field, in field order."""
        roots = self._sqrt_table.get(self.embed(a).value, [])
        return sorted(roots, key=self.index)

    def is_square(self, a: "FieldElement") -> bool:
        return bool(self.sqrt(a))

    def nonsquare(self) -> "FieldElement":
        """Canonical non-square used to build the quadratic tower.

        ``-1`` is tried first, then the remaining elements in field order.
        For ``q = 3 mod 4`` this makes the tower generator a square root of -1.
        """
        minus_one = -self.one
        if not self.is_square(minus_one):
            return minus_one
        for a in self._element_list:
            if a.value != self.zero.value and not self.is_square(a):
                return a
        raise ValueError(f"{self} has no non-squares")


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        self.p = p
        self.order = p
        self.degree = 1
        self.gen_name = ""
        self.modulus = None

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def _add(self, u, v): return (u + v) % self.p
    def _sub(self, u, v): return (u - v) % self.p
    def _mul(self, u, v): return (u * v) % self.p
    def _neg(self, u): return (-u) % self.p

    def _inv(self, u):
        if u == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return pow(u, -1, self.p)

    def _from_int(self, n): return n % self.p
    def _from_index(self, k): return k
    def _index(self, u): return u
    def _format(self, u): return str(u)


class QuadraticField(Field):
    """``base[T]/(T^2 - s)`` for a non-square ``s`` of ``base``."""

    def __init__(self, base: Field, s: "FieldElement", gen_name: str = "i"):
        s = base.embed(s)
        if base.is_square(s):
            raise ValueError(f"{s} is a square in {base}; T^2 - s is reducible")
        self.base = base
        self.s = s
        self.p = base.p
        self.order = base.order ** 2
        self.degree = base.degree * 2
        self.gen_name = gen_name
        # T^2 - s over the base, coefficients low to high
        self.modulus = (-s, base.zero, base.one)

    def __repr__(self):
        return f"{self.base!r}[{self.gen_name}]/({self.gen_name}^2-{self.s})"

    def __eq__(self, other):
        return (isinstance(other, QuadraticField) and other.base == self.base
                and other.s == self.s)

    def __hash__(self):
        return hash(("Quad", self.base, self.s.value))

    def subfields(self) -> tuple:
        return (self,) + self.base.subfields()

    def embed(self, a):
        if a.field == self:
            return a
        b = self.base.embed(a)
        return FieldElement(self, (b.value, self.base.zero.value))

    @cached_property
    def gen(self) -> "FieldElement":
        return FieldElement(self, (self.base.zero.value, self.base.one.value))

    def make(self, a: "FieldElement", b: "FieldElement") -> "FieldElement":
        """The element ``a + b*T``."""
        return FieldElement(self, (self.base.embed(a).value, self.base.embed(b).value))

    def coords(self, u: "FieldElement") -> tuple:
        a, b = u.value
        return FieldElement(self.base, a), FieldElement(self.base, b)

    def is_base(self, u: "FieldElement") -> bool:
        return u.value[1] == self.base.zero.value

    def to_base(self, u: "FieldElement") -> "FieldElement":
        if not self.is_base(u):
            raise ValueError(f"{u} does not lie in {self.base}")
        return FieldElement(self.base, u.value[0])

    def conjugate(self, u: "FieldElement") -> "FieldElement":
        a, b = u.value
        return FieldElement(self, (a, self.base._neg(b)))

    def _add(self, u, v):
        B = self.base
        return (B._add(u[0], v[0]), B._add(u[1], v[1]))

    def _sub(self, u, v):
        B = self.base
        return (B._sub(u[0], v[0]), B._sub(u[1], v[1]))

    def _neg(self, u):
        B = self.base
        return (B._neg(u[0]), B._neg(u[1]))

    def _mul(self, u, v):
        B = self.base
        a, b = u
        c, d = v
        ac = B._mul(a, c)
        bd = B._mul(b, d)
        return (B._add(ac, B._mul(bd, self.s.value)),
                B._add(B._mul(a, d), B._mul(b, c)))

    def _inv(self, u):
        B = self.base
        a, b = u
        norm = B._sub(B._mul(a, a), B._mul(self.s.value, B._mul(b, b)))
        n_inv = B._inv(norm)  # raises on zero
        return (B._mul(a, n_inv), B._neg(B._mul(b, n_inv)))

    def _from_int(self, n):
        return (self.base._from_int(n), self.base._from_int(0))

    def _from_index(self, k):
        q = self.base.order
        return (self.base._from_index(k % q), self.base._from_index(k // q))

    def _index(self, u):
        return self.base._index(u[0]) + self.base.order * self.base._index(u[1])

    def _format(self, u):
        B = self.base
        a, b = u
        zero = B._from_int(0)
        g = self.gen_name

        def wrap(text):
            return f"({text})" if ("+" in text or "-" in text[1:]) else text

        a_txt = B._format(a)
        if b == zero:
            return a_txt
        b_txt = B._format(b)
        if b == B._from_int(1):
            term = g
        elif isinstance(B, PrimeField):
            term = b_txt + g
        else:
            term = wrap(b_txt) + "*" + g
        if a == zero:
            return term
        return f"{a_txt}+{term}"


class FieldElement:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: Raw):
        self.field = field
        self.value = value

    def _coerce(self, other) -> Raw:
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other.value
            if self.field.contains_subfield(other.field):
                return self.field.embed(other).value
            raise TypeError(f"cannot combine elements of {self.field} and {other.field}")
        if isinstance(other, int):
            return self.field._from_int(other)
        return NotImplemented

    def _promote(self, other):
        # when other lives in an extension of self.field, compute there
        if (isinstance(other, FieldElement) and other.field is not self.field
                and other.field != self.field
                and other.field.contains_subfield(self.field)):
            return other.field.embed(self)
        return None

    def __add__(self, other):
        up = self._promote(other)
        if up is not None:
            return up + other
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        up = self._promote(other)
        if up is not None:
            return up - other
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(v, self.value))

    def __mul__(self, other):
        up = self._promote(other)
        if up is not None:
            return up * other
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field._inv(self.value))

    def __truediv__(self, other):
        up = self._promote(other)
        if up is not None:
            return up / other
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, self.field._inv(v)))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(v, self.field._inv(self.value)))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one.value
        base = self.value
        F = self.field
        while n:
            if n & 1:
                result = F._mul(result, base)
            base = F._mul(base, base)
            n >>= 1
        return FieldElement(F, result)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return self.value == other.value
            return False
        if isinstance(other, int):
            return self.value == self.field._from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != self.field.zero.value

    def is_zero(self) -> bool:
        return not self

    def index(self) -> int:
        return self.field._index(self.value)

    def frobenius(self) -> "FieldElement":
        """``a^q`` for an element of the tower over ``F_q``.

        On a quadratic field this is conjugation ``a + bT -> a - bT``; on a
        prime field it is the identity.
        """
        if isinstance(self.field, QuadraticField):
            return self.field.conjugate(self)
        return self

    def sqrt(self) -> list:
        return self.field.sqrt(self)

    def __repr__(self):
        return self.field._format(self.value)

    __str__ = __repr__


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def base_field(q: int) -> Field:
    """``F_q`` for ``q = p`` or ``q = p^2`` with ``p`` an odd prime."""
    if is_prime(q):
        return prime_field(q)
    for p in range(3, int(q ** 0.5) + 2):
        if is_prime(p) and p * p == q:
            Fp = prime_field(p)
            return QuadraticField(Fp, Fp.nonsquare(), gen_name="w")
    raise ValueError(f"q={q} must be an odd prime or the square of one")


@lru_cache(maxsize=None)
def quadratic_tower(F: Field) -> QuadraticField:
    """``F_{q^2}`` over ``F``, generated by a square root of ``F.nonsquare()``."""
    return QuadraticField(F, F.nonsquare(), gen_name="i")


class _FieldAlgebra:
    def __init__(self, field: Field):
        self.field = field
        self.gens = {}
        for f in field.subfields():
            if isinstance(f, QuadraticField):
                self.gens[f.gen_name] = field.embed(f.gen)

    def const(self, n): return self.field(n)
    def var(self, name): return self.gens[name]
    def add(self, a, b): return a + b
    def sub(self, a, b): return a - b
    def mul(self, a, b): return a * b
    def div(self, a, b): return a / b
    def neg(self, a): return -a
    def pow(self, a, n, _tok): return a ** n


def parse_element(field: Field, text: str) -> FieldElement:
    """Parse ``"3"``, ``"5+2i"``, ``"3*i"``, ``"-i"`` ... into ``field``."""
    from ._parse import parse_expression

    alg = _FieldAlgebra(field)
    return parse_expression(text, alg, alg.gens.keys())
