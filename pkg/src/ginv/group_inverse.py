"""Group inverses, Drazin inverses and spectral idempotents.

Two independent routes compute ``a#``:

* field matrices: ``a = F G`` (full-rank factorization); ``a#`` exists iff
  ``rank(a) == rank(a^2)``, and then ``a# = F (G F)^-2 G``;
* enumerable rings: scan every candidate ``c`` for ``aca = a, cac = c,
  ac = ca``.  The scan runs to the end so uniqueness is asserted, not
  assumed.

Product rings are handled componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from . import linalg
from .errors import NoGroupInverse, NotEnumerable, RingMismatch, UnsupportedRing
from .rings import Element, MatrixRing, ProductRing, as_element


@dataclass(frozen=True)
class GroupInverseResult:
    element: Element
    inverse: Element | None = None
    witness: dict | None = None
    method: str = ""

    @property
    def exists(self) -> bool:
        return self.inverse is not None

    @property
    def status(self) -> str:
        return "exists" if self.exists else "not-exists"

    @property
    def spectral_idempotent(self) -> Element | None:
        if self.inverse is None:
            return None
        return self.element.ring.one() - self.element * self.inverse


def is_group_inverse(a, c) -> bool:
    a, c = as_element(a), as_element(c)
    if a.ring != c.ring:
        raise RingMismatch(f"{a.ring} vs {c.ring}")
    ac = a * c
    return ac == c * a and ac * a == a and c * a * c == c


def is_15_inverse(a, x) -> bool:
    """x commutes with a and x a x = x."""
    a, x = as_element(a), as_element(x)
    if a.ring != x.ring:
        raise RingMismatch(f"{a.ring} vs {x.ring}")
    xa = x * a
    return xa == a * x and xa * x == x


def _is_field_matrix(ring) -> bool:
    return isinstance(ring, MatrixRing) and ring.is_field_matrix


def _factorization(a: Element) -> GroupInverseResult:
    ring = a.ring
    K = ring.scalars
    rows = a.rows
    r = linalg.rank_rows(rows, K)
    r2 = linalg.rank_rows(linalg.mat_mul(rows, rows, K), K)
    if r != r2:
        return GroupInverseResult(a, None, {"kind": "rank", "rank": r, "rank_square": r2}, "factorization")
    if r == 0:
        return GroupInverseResult(a, ring.zero(), None, "factorization")
    fac = linalg.factorize_rows(rows, K)
    gf_inv = linalg.inverse_rows(linalg.mat_mul(fac.G, fac.F, K), K)
    mid = linalg.mat_mul(gf_inv, gf_inv, K)
    c = ring.element(linalg.mat_mul(linalg.mat_mul(fac.F, mid, K), fac.G, K))
    return GroupInverseResult(a, c, None, "factorization")


def brute_force_group_inverse(a: Element) -> GroupInverseResult:
    """Exhaustive search over the whole (enumerable) ring."""
    ring = a.ring
    if not ring.enumerable:
        raise NotEnumerable(f"{ring} is not enumerable")
    found = None
    count = 0
    for c in ring.elements():
        count += 1
        if is_group_inverse(a, c):
            if found is not None:
                raise AssertionError(f"two group inverses of {a!r}: {found!r}, {c!r}")
            found = c
    if found is None:
        return GroupInverseResult(a, None, {"kind": "exhaustion", "candidates": count}, "brute-force")
    return GroupInverseResult(a, found, None, "brute-force")


def _product(a: Element) -> GroupInverseResult:
    ring = a.ring
    parts = [group_inverse(ring.component(a, i)) for i in range(len(ring.factors))]
    for i, part in enumerate(parts):
        if not part.exists:
            return GroupInverseResult(a, None, {"kind": "component", "index": i, "witness": part.witness}, "componentwise")
    c = Element(ring, tuple(part.inverse.payload for part in parts))
    return GroupInverseResult(a, c, None, "componentwise")


@lru_cache(maxsize=8192)
def _compute(a: Element, method: str) -> GroupInverseResult:
    ring = a.ring
    if method == "brute-force":
        result = brute_force_group_inverse(a)
    elif method == "factorization" or (method == "auto" and _is_field_matrix(ring)):
        if not _is_field_matrix(ring):
            raise UnsupportedRing(f"factorization needs a field matrix ring, got {ring}")
        result = _factorization(a)
    elif isinstance(ring, ProductRing):
        result = _product(a)
    elif ring.enumerable:
        result = brute_force_group_inverse(a)
    else:
        raise UnsupportedRing(f"no group inverse algorithm for {ring}")
    if result.exists and not is_group_inverse(a, result.inverse):
        raise AssertionError(f"computed group inverse of {a!r} fails the defining equations")
    return result


def group_inverse(a, method: str = "auto") -> GroupInverseResult:
    """Group inverse of ``a`` with a non-existence witness when absent.

    ``method`` is ``"auto"``, ``"factorization"`` or ``"brute-force"``.
    """
    return _compute(as_element(a), method)


def ginv(a) -> Element:
    """The group inverse itself; raises NoGroupInverse when absent."""
    res = group_inverse(a)
    if not res.exists:
        raise NoGroupInverse(f"{as_element(a)!r} is not group invertible: {res.witness}")
    return res.inverse


def spectral_idempotent(a) -> Element:
    a = as_element(a)
    return a.ring.one() - a * ginv(a)


def corner_pi(a, e) -> Element:
    """Spectral idempotent of ``a`` taken inside the corner ring ``eRe``."""
    a, e = as_element(a), as_element(e)
    return e - a * ginv(a)


class DrazinResult(NamedTuple):
    inverse: Element
    index: int


def index(a: Element) -> int:
    """Smallest k with rank(a^k) == rank(a^(k+1)) (field matrices)."""
    a = as_element(a)
    if not _is_field_matrix(a.ring):
        raise UnsupportedRing(f"index is only defined here for field matrices, got {a.ring}")
    k, power = 0, a.ring.one()
    r = linalg.rank(power)
    while True:
        nxt = power * a
        r_next = linalg.rank(nxt)
        if r_next == r:
            return k
        k, power, r = k + 1, nxt, r_next


def drazin_inverse(a) -> DrazinResult:
    """Drazin inverse by iterated full-rank factorization.

    ``a = F1 G1``, ``G1 F1 = F2 G2``, ... until ``Gk Fk`` is invertible or
    zero; then ``a^D = F1..Fk (Gk Fk)^-(k+1) Gk..G1``.
    """
    a = as_element(a)
    ring = a.ring
    if not _is_field_matrix(ring):
        raise UnsupportedRing(f"Drazin inverse needs a field matrix ring, got {ring}")
    K = ring.scalars
    ind = index(a)
    Fs, Gs = [], []
    current = a.rows
    while True:
        fac = linalg.factorize_rows(current, K)
        if fac.r == 0:
            return DrazinResult(ring.zero(), ind)
        Fs.append(fac.F)
        Gs.append(fac.G)
        gf = linalg.mat_mul(fac.G, fac.F, K)
        if linalg.rank_rows(gf, K) == fac.r:
            break
        current = gf
    k = len(Fs)
    inv = linalg.inverse_rows(gf, K)
    core = linalg.identity_rows(len(gf), K)
    for _ in range(k + 1):
        core = linalg.mat_mul(core, inv, K)
    left = Fs[0]
    for F in Fs[1:]:
        left = linalg.mat_mul(left, F, K)
    right = Gs[-1]
    for G in reversed(Gs[:-1]):
        right = linalg.mat_mul(right, G, K)
    return DrazinResult(ring.element(linalg.mat_mul(linalg.mat_mul(left, core, K), right, K)), ind)


def pi_decomposition_check(a) -> bool:
    """Exhaustively verify R = (a^pi)° (+) a^pi R.

    Every x splits as (1 - a^pi) x + a^pi x with the first part annihilated
    by a^pi and the second in a^pi R, and the two summands meet only in 0.
    """
    a = as_element(a)
    ring = a.ring
    if not ring.enumerable:
        raise NotEnumerable(f"{ring} is not enumerable")
    pi = spectral_idempotent(a)
    one = ring.one()
    elements = list(ring.elements())
    annihilator = {y for y in elements if (pi * y).is_zero}
    ideal = {pi * y for y in elements}
    for x in elements:
        left, right = (one - pi) * x, pi * x
        if left + right != x or left not in annihilator or right not in ideal:
            return False
    return annihilator & ideal == {ring.zero()}
