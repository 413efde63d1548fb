"""Pierce decomposition with respect to one idempotent.

Blocks are stored full size: ``a11 = p a p``, ``a12 = p a (1-p)``,
``a21 = (1-p) a p``, ``a22 = (1-p) a (1-p)``.  The complement ``1 - p`` is
always recomputed, never stored.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import MismatchedIdempotent, RingMismatch
from .rings import Element, Idempotent, MatrixRing, ProductRing, as_element


@dataclass(frozen=True)
class PierceBlocks:
    p: Idempotent
    a11: Element
    a12: Element
    a21: Element
    a22: Element

    @property
    def total(self) -> Element:
        return self.a11 + self.a12 + self.a21 + self.a22

    # names used when the decomposed element is an idempotent q
    q1 = property(lambda self: self.a11)
    q2 = property(lambda self: self.a12)
    q3 = property(lambda self: self.a21)
    q4 = property(lambda self: self.a22)

    def corners_ok(self) -> bool:
        p = self.p.value
        pb = p.ring.one() - p
        return (p * self.a11 * p == self.a11 and p * self.a12 * pb == self.a12
                and pb * self.a21 * p == self.a21 and pb * self.a22 * pb == self.a22)


def _idem(p) -> Idempotent:
    return p if isinstance(p, Idempotent) else Idempotent(p)


def decompose(a, p) -> PierceBlocks:
    a, p = as_element(a), _idem(p)
    if a.ring != p.ring:
        raise RingMismatch(f"{a.ring} vs {p.ring}")
    e = p.value
    eb = a.ring.one() - e
    ae, aeb = a * e, a * eb
    return PierceBlocks(p, e * ae, e * aeb, eb * ae, eb * aeb)


def recompose(blocks: PierceBlocks) -> Element:
    return blocks.total


def block_multiply(x: PierceBlocks, y: PierceBlocks) -> PierceBlocks:
    if x.p != y.p:
        raise MismatchedIdempotent("blocks taken with respect to different idempotents")
    return PierceBlocks(
        x.p,
        x.a11 * y.a11 + x.a12 * y.a21,
        x.a11 * y.a12 + x.a12 * y.a22,
        x.a21 * y.a11 + x.a22 * y.a21,
        x.a21 * y.a12 + x.a22 * y.a22,
    )


def idempotent_block_relations(q, p) -> bool:
    """The four block identities forced by q^2 = q."""
    b = decompose(q, p)
    q1, q2, q3, q4 = b.q1, b.q2, b.q3, b.q4
    return (q1 * q1 + q2 * q3 == q1 and q1 * q2 + q2 * q4 == q2
            and q3 * q1 + q4 * q3 == q3 and q3 * q2 + q4 * q4 == q4)


@dataclass(frozen=True)
class AssumptionProfile:
    thm21i: bool
    thm21ii: bool
    thm22_upper: bool
    thm22_lower: bool
    thm33ii_extra: bool
    corner_confined: bool
    # commutation of p with each block, for the commutator theorem
    commutes: tuple = (True, True, True, True)
    clauses: dict = field(default=None, compare=False, repr=False)

    def as_dict(self) -> dict:
        return {
            "thm21i": self.thm21i,
            "thm21ii": self.thm21ii,
            "thm22_upper": self.thm22_upper,
            "thm22_lower": self.thm22_lower,
            "thm33ii_extra": self.thm33ii_extra,
            "corner_confined": self.corner_confined,
            "p_commutes_with": {f"q{i + 1}": c for i, c in enumerate(self.commutes)},
        }


def assumption_clauses(b: PierceBlocks) -> dict:
    """Every individual equation behind the profile flags."""
    p = b.p.value
    pb = p.ring.one() - p
    q1, q2, q3, q4 = b.q1, b.q2, b.q3, b.q4
    zero = p.ring.zero()
    return {
        "p q1 = q1": p * q1 == q1,
        "q1 p = q1": q1 * p == q1,
        "p q2 = q2": p * q2 == q2,
        "q3 p = q3": q3 * p == q3,
        "pb q4 = q4": pb * q4 == q4,
        "q4 pb = q4": q4 * pb == q4,
        "q2 pb = q2": q2 * pb == q2,
        "pb q3 = q3": pb * q3 == q3,
        "p q1 = q1 p": p * q1 == q1 * p,
        "p q2 = q2 p": p * q2 == q2 * p,
        "p q3 = q3 p": p * q3 == q3 * p,
        "p q4 = q4 p": p * q4 == q4 * p,
        "q2 p = 0": q2 * p == zero,
        "q4 p = 0": q4 * p == zero,
        "q in pRp": q2.is_zero and q3.is_zero and q4.is_zero and p * q1 * p == q1,
    }


THM21I = ("p q1 = q1", "q1 p = q1", "p q2 = q2", "q3 p = q3")
THM21II = ("pb q4 = q4", "q4 pb = q4", "q2 pb = q2", "pb q3 = q3")
THM22_UPPER = ("p q1 = q1 p", "p q2 = q2 p")
THM22_LOWER = ("p q3 = q3 p", "p q4 = q4 p")
THM33II = ("q2 p = 0", "q4 p = 0")


def assumption_profile(q, p) -> AssumptionProfile:
    b = decompose(q, p)
    c = assumption_clauses(b)
    return AssumptionProfile(
        thm21i=all(c[k] for k in THM21I),
        thm21ii=all(c[k] for k in THM21II),
        thm22_upper=all(c[k] for k in THM22_UPPER),
        thm22_lower=all(c[k] for k in THM22_LOWER),
        thm33ii_extra=all(c[k] for k in THM33II),
        corner_confined=c["q in pRp"],
        commutes=tuple(c[f"p q{i} = q{i} p"] for i in range(1, 5)),
        clauses=c,
    )


def corner_unit_check(p, samples: int = 100, seed: int = 0) -> bool:
    """p acts as a two-sided unit on every x = p a p.

    Exhaustive on enumerable rings; otherwise ``samples`` random matrices
    with entries in [-9, 9].
    """
    p = _idem(p)
    e = p.value
    ring = e.ring
    if ring.enumerable:
        candidates = ring.elements()
    else:
        rng = random.Random(seed)
        candidates = (_random_element(ring, rng) for _ in range(samples))
    for a in candidates:
        x = e * a * e
        if e * x != x or x * e != x:
            return False
    return True


def _random_element(ring, rng):
    if isinstance(ring, MatrixRing):
        return ring.element([[rng.randint(-9, 9) for _ in range(ring.n)] for _ in range(ring.n)])
    if isinstance(ring, ProductRing):
        return Element(ring, tuple(_random_element(f, rng).payload for f in ring.factors))
    return ring.scalar(rng.randint(-9, 9))
