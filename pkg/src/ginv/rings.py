"""Concrete rings with unit and their immutable elements.

Four kinds of ring are supported: square matrices over the rationals,
square matrices over a prime field, the residue ring Z/n and finite
direct products of any of these.  Every element carries its payload in
canonical form, so structural equality is ring equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm, prod
from typing import Any, Iterator, Sequence

from .errors import InvalidRingSpec, NotEnumerable, NotIdempotent, RingMismatch

DEFAULT_ENUMERATION_BOUND = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# scalars


@dataclass(frozen=True)
class Rationals:
    """The field Q with ``Fraction`` values."""

    name = "Q"
    is_field = True
    cardinality = None

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        return Fraction(x)

    def canon(self, x):
        return x if isinstance(x, Fraction) else Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / Fraction(x)

    def div(self, x, y):
        return Fraction(x) / y

    def values(self):
        raise NotEnumerable("Q is infinite")


@dataclass(frozen=True)
class Residues:
    """Integers modulo ``modulus``, stored as least non-negative residues."""

    modulus: int

    @property
    def name(self):
        return f"Z/{self.modulus}"

    @property
    def is_field(self):
        return is_prime(self.modulus)

    @property
    def cardinality(self):
        return self.modulus

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.modulus

    def coerce(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
            x = x.numerator
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        return int(x) % self.modulus

    def canon(self, x):
        return x % self.modulus

    def inv(self, x):
        try:
            return pow(x, -1, self.modulus)
        except ValueError:
            raise ZeroDivisionError(f"{x} is not a unit mod {self.modulus}") from None

    def div(self, x, y):
        return x * self.inv(y) % self.modulus

    def values(self):
        return range(self.modulus)


def _integer_lines(lines):
    """Each vector of Fractions as (common denominator, integer numerators)."""
    out = []
    for v in lines:
        d = lcm(*(x.denominator for x in v)) if v else 1
        out.append((d, [x.numerator * (d // x.denominator) for x in v]))
    return out


def rational_matmul(a, b) -> tuple:
    """Product of Fraction matrices with one Fraction built per entry."""
    rows = _integer_lines(a)
    cols = _integer_lines(tuple(zip(*b)))
    return tuple(tuple(Fraction(sum(x * y for x, y in zip(ri, cj)), dr * dc) for dc, cj in cols)
                 for dr, ri in rows)


# ---------------------------------------------------------------------------
# rings


class Ring:
    """Common behaviour of the concrete rings.

    Subclasses implement payload-level arithmetic (``_add``, ``_sub``,
    ``_mul``, ``_neg``), canonicalization and enumeration.
    """

    bound: int

    # -- metadata
    @property
    def cardinality(self) -> int | None:
        raise NotImplementedError

    @property
    def enumerable(self) -> bool:
        c = self.cardinality
        return c is not None and c <= self.bound

    def descriptor(self) -> dict:
        raise NotImplementedError

    # -- element construction
    def element(self, data) -> "Element":
        return Element(self, self.canonical(data))

    def zero(self) -> "Element":
        return Element(self, self._zero())

    def one(self) -> "Element":
        return Element(self, self._one())

    def scalar(self, k) -> "Element":
        """``k`` times the unit."""
        return Element(self, self._scalar(k))

    def elements(self) -> Iterator["Element"]:
        if not self.enumerable:
            raise NotEnumerable(f"{self!r} has cardinality {self.cardinality}, bound {self.bound}")
        for payload in self._payloads():
            yield Element(self, payload)

    # -- payload hooks
    def canonical(self, data):
        raise NotImplementedError

    def _payloads(self):
        raise NotImplementedError


@dataclass(frozen=True)
class MatrixRing(Ring):
    """n x n matrices over ``scalars`` (Q or a prime field)."""

    scalars: Any
    n: int
    bound: int = field(default=DEFAULT_ENUMERATION_BOUND, compare=False, repr=False)

    @property
    def is_field_matrix(self) -> bool:
        return self.scalars.is_field

    @property
    def cardinality(self):
        c = self.scalars.cardinality
        return None if c is None else c ** (self.n * self.n)

    def descriptor(self):
        if isinstance(self.scalars, Rationals):
            return {"ring": "Q", "n": self.n}
        return {"ring": {"Fp": self.scalars.modulus}, "n": self.n}

    def canonical(self, data):
        K = self.scalars
        rows = tuple(tuple(K.coerce(x) for x in row) for row in data)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"expected a {self.n}x{self.n} matrix")
        return rows

    def _zero(self):
        z = self.scalars.zero
        return tuple((z,) * self.n for _ in range(self.n))

    def _one(self):
        return self._scalar(1)

    def _scalar(self, k):
        K = self.scalars
        z, v = K.zero, K.coerce(k)
        return tuple(tuple(v if i == j else z for j in range(self.n)) for i in range(self.n))

    def _add(self, a, b):
        c = self.scalars.canon
        return tuple(tuple(c(x + y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def _sub(self, a, b):
        c = self.scalars.canon
        return tuple(tuple(c(x - y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def _neg(self, a):
        c = self.scalars.canon
        return tuple(tuple(c(-x) for x in r) for r in a)

    def _mul(self, a, b):
        if isinstance(self.scalars, Rationals):
            return rational_matmul(a, b)
        m = self.scalars.modulus
        cols = tuple(zip(*b))
        return tuple(tuple(sum(x * y for x, y in zip(r, col)) % m for col in cols) for r in a)

    def _payloads(self):
        vals = list(self.scalars.values())
        n = self.n
        for flat in itertools.product(vals, repeat=n * n):
            yield tuple(flat[i * n:(i + 1) * n] for i in range(n))

    def __str__(self):
        return f"M{self.n}({self.scalars.name})"


@dataclass(frozen=True)
class ModularIntRing(Ring):
    """The residue ring Z/n with integer payloads."""

    modulus: int
    bound: int = field(default=DEFAULT_ENUMERATION_BOUND, compare=False, repr=False)

    @property
    def scalars(self):
        return Residues(self.modulus)

    @property
    def cardinality(self):
        return self.modulus

    def descriptor(self):
        return {"ring": {"Zmod": self.modulus}, "n": 1}

    def canonical(self, data):
        if isinstance(data, (tuple, list)):
            # accept the [[r]] matrix-style encoding
            (row,) = data
            (data,) = row
        return self.scalars.coerce(data)

    def _zero(self):
        return 0

    def _one(self):
        return 1 % self.modulus

    def _scalar(self, k):
        return self.scalars.coerce(k)

    def _add(self, a, b):
        return (a + b) % self.modulus

    def _sub(self, a, b):
        return (a - b) % self.modulus

    def _neg(self, a):
        return -a % self.modulus

    def _mul(self, a, b):
        return a * b % self.modulus

    def _payloads(self):
        return iter(range(self.modulus))

    def __str__(self):
        return f"Z/{self.modulus}"


@dataclass(frozen=True)
class ProductRing(Ring):
    """Finite direct product of rings; arithmetic is componentwise."""

    factors: tuple
    bound: int = field(default=DEFAULT_ENUMERATION_BOUND, compare=False, repr=False)

    @property
    def cardinality(self):
        cards = [f.cardinality for f in self.factors]
        if any(c is None for c in cards):
            return None
        return prod(cards)

    def descriptor(self):
        return {"ring": {"product": [f.descriptor() for f in self.factors]}, "n": len(self.factors)}

    def canonical(self, data):
        data = tuple(data)
        if len(data) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} components")
        return tuple(f.canonical(d) for f, d in zip(self.factors, data))

    def _zero(self):
        return tuple(f._zero() for f in self.factors)

    def _one(self):
        return tuple(f._one() for f in self.factors)

    def _scalar(self, k):
        return tuple(f._scalar(k) for f in self.factors)

    def _add(self, a, b):
        return tuple(f._add(x, y) for f, x, y in zip(self.factors, a, b))

    def _sub(self, a, b):
        return tuple(f._sub(x, y) for f, x, y in zip(self.factors, a, b))

    def _neg(self, a):
        return tuple(f._neg(x) for f, x in zip(self.factors, a))

    def _mul(self, a, b):
        return tuple(f._mul(x, y) for f, x, y in zip(self.factors, a, b))

    def _payloads(self):
        return itertools.product(*(list(f._payloads()) for f in self.factors))

    def component(self, a: "Element", i: int) -> "Element":
        return Element(self.factors[i], a.payload[i])

    def __str__(self):
        return " x ".join(str(f) for f in self.factors)


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class Element:
    ring: Ring
    payload: Any

    def _check(self, other) -> "Element":
        if not isinstance(other, Element):
            if isinstance(other, (int, Fraction)):
                return self.ring.scalar(other)
            return NotImplemented
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, self.ring._add(self.payload, other.payload))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, self.ring._sub(self.payload, other.payload))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, self.ring._sub(other.payload, self.payload))

    def __neg__(self):
        return Element(self.ring, self.ring._neg(self.payload))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, self.ring._mul(self.payload, other.payload))

    def __rmul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, self.ring._mul(other.payload, self.payload))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def is_zero(self) -> bool:
        return self.payload == self.ring._zero()

    @property
    def is_one(self) -> bool:
        return self.payload == self.ring._one()

    @property
    def rows(self):
        """Matrix entries (matrix rings only)."""
        if not isinstance(self.ring, MatrixRing):
            raise TypeError(f"{self.ring} elements are not matrices")
        return self.payload

    def __repr__(self):
        return f"Element({self.ring}, {format_payload(self.payload)})"


def format_payload(payload) -> str:
    if isinstance(payload, tuple):
        return "(" + ", ".join(format_payload(x) for x in payload) + ")"
    return str(payload)


# ---------------------------------------------------------------------------
# idempotents


@dataclass(frozen=True)
class Idempotent:
    value: Element

    def __post_init__(self):
        if self.value * self.value != self.value:
            raise NotIdempotent(f"{self.value!r} squared differs from itself")

    @property
    def ring(self):
        return self.value.ring

    @property
    def complement(self) -> "Idempotent":
        return Idempotent(self.ring.one() - self.value)


def make_idempotent(e: Element) -> Idempotent:
    return Idempotent(e)


def as_element(x) -> Element:
    return x.value if isinstance(x, Idempotent) else x


# ---------------------------------------------------------------------------
# constructors


def make_ring(spec, bound: int = DEFAULT_ENUMERATION_BOUND) -> Ring:
    """Build a ring from a descriptor.

    Accepted descriptors are the JSON ring encodings (``{"ring": "Q", "n": 3}``,
    ``{"ring": {"Fp": 5}, "n": 2}``, ``{"ring": {"Zmod": 6}}``,
    ``{"ring": {"product": [...]}}``) or the tuple forms
    ``("Q", n)``, ``("Fp", p, n)``, ``("Zmod", n)``, ``("product", [specs])``.
    """
    if isinstance(spec, Ring):
        return spec
    if isinstance(spec, dict):
        kind = spec.get("ring")
        n = spec.get("n", 1)
        if kind == "Q":
            return make_ring(("Q", n), bound)
        if isinstance(kind, dict) and len(kind) == 1:
            (key, val), = kind.items()
            if key == "Fp":
                return make_ring(("Fp", val, n), bound)
            if key == "Zmod":
                return make_ring(("Zmod", val), bound)
            if key == "product":
                return make_ring(("product", val), bound)
        raise InvalidRingSpec(f"unrecognized ring descriptor {spec!r}")
    if not isinstance(spec, (tuple, list)) or not spec:
        raise InvalidRingSpec(f"unrecognized ring descriptor {spec!r}")
    kind, *args = spec
    try:
        if kind == "Q":
            (n,) = args
            _check_dim(n)
            return MatrixRing(Rationals(), n, bound)
        if kind == "Fp":
            p, n = args
            _check_dim(n)
            if not isinstance(p, int) or not is_prime(p):
                raise InvalidRingSpec(f"{p} is not prime")
            return MatrixRing(Residues(p), n, bound)
        if kind == "Zmod":
            (m,) = args
            if not isinstance(m, int) or m < 2:
                raise InvalidRingSpec(f"modulus must be >= 2, got {m}")
            return ModularIntRing(m, bound)
        if kind == "product":
            (factors,) = args
            factors = tuple(make_ring(f, bound) for f in factors)
            if not factors:
                raise InvalidRingSpec("empty product")
            return ProductRing(factors, bound)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidRingSpec):
            raise
        raise InvalidRingSpec(f"malformed ring descriptor {spec!r}: {exc}") from None
    raise InvalidRingSpec(f"unknown ring kind {kind!r}")


def _check_dim(n):
    if not isinstance(n, int) or n < 1:
        raise InvalidRingSpec(f"dimension must be >= 1, got {n!r}")


def enumerate_elements(r: Ring) -> Iterator[Element]:
    return r.elements()


def ring_arithmetic(a: Element, b: Element, op: str) -> Element:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def matrix(ring: MatrixRing, rows: Sequence[Sequence]) -> Element:
    return ring.element(rows)


def diag(ring: Ring, values: Sequence) -> Element:
    """Diagonal matrix, or for a product ring the tuple of scalar components."""
    if isinstance(ring, MatrixRing):
        n = ring.n
        if len(values) != n:
            raise ValueError(f"expected {n} diagonal entries")
        return ring.element([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])
    if isinstance(ring, ProductRing):
        return ring.element([f._scalar(v) for f, v in zip(ring.factors, values)])
    raise TypeError(f"diag is not defined for {ring}")


def sum_elements(ring: Ring, xs) -> Element:
    return reduce(lambda a, b: a + b, xs, ring.zero())
