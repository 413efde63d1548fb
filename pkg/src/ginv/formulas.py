"""Closed-form group inverses and existence criteria for idempotent expressions.

Every operation returns a ``FormulaOutcome`` carrying the hypothesis
breakdown, the theorem's own existence verdict (``criterion``), the direct
oracle verdict (``exists``), the formula value and whether that value was
certified by the defining equations *and* matched the oracle.

With ``strict=True`` (the default) an operation refuses to run when its
hypotheses fail; ``strict=False`` evaluates anyway and reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial

from . import linalg
from .errors import (AssumptionViolated, CornerViolation, HypothesisFailed,
                     NoGroupInverse, NotInvertible, ShapeMismatch)
from .group_inverse import GroupInverseResult, group_inverse, is_15_inverse, is_group_inverse
from .pierce import THM21I, THM21II, THM22_LOWER, THM22_UPPER, THM33II, assumption_clauses, decompose
from .rings import Element, Idempotent, MatrixRing, ProductRing, as_element


@dataclass
class FormulaOutcome:
    name: str
    hypotheses: dict
    target: Element | None = None
    value: Element | None = None
    verified: bool = False
    criterion: bool | None = None
    exists: bool | None = None
    checks: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def agrees(self) -> bool:
        return self.criterion is None or self.exists is None or self.criterion == self.exists

    @property
    def ok(self) -> bool:
        return self.agrees and all(self.checks.values()) and (self.value is None or self.verified)

    def problems(self) -> list:
        out = []
        if not self.agrees:
            out.append(f"criterion says {self.criterion}, direct existence is {self.exists}")
        if self.value is not None and not self.verified:
            out.append("formula value failed verification")
        out += [f"check failed: {k}" for k, v in self.checks.items() if not v]
        return out

    def certify(self, value: Element, oracle: GroupInverseResult):
        """Record ``value`` as the claimed group inverse of ``target``."""
        self.value = value
        self.verified = (is_group_inverse(self.target, value)
                         and oracle.exists and oracle.inverse == value)


def _require(outcome: FormulaOutcome, strict: bool, exc=AssumptionViolated):
    if strict and not outcome.hypotheses_hold:
        failed = [k for k, v in outcome.hypotheses.items() if not v]
        raise exc(f"{outcome.name}: hypotheses fail: {', '.join(failed)}")


def _idem(x) -> Idempotent:
    return x if isinstance(x, Idempotent) else Idempotent(x)


class _Pair:
    """p, q, their complements and the Pierce blocks of q."""

    def __init__(self, p, q):
        self.P, self.Q = _idem(p).value, _idem(q).value
        self.one = self.P.ring.one()
        self.Pb, self.Qb = self.one - self.P, self.one - self.Q
        self.blocks = decompose(self.Q, self.P)
        self.q1, self.q2, self.q3, self.q4 = (self.blocks.q1, self.blocks.q2,
                                              self.blocks.q3, self.blocks.q4)
        self.clauses = assumption_clauses(self.blocks)

    def hyp(self, keys) -> dict:
        return {k: self.clauses[k] for k in keys}


def _pi(res: GroupInverseResult) -> Element:
    return res.spectral_idempotent


# ---------------------------------------------------------------------------
# lemma-level formulas


def antidiag_group_inverse(a, b, p, strict: bool = True) -> FormulaOutcome:
    """m = a + b with a in pR(1-p), b in (1-p)Rp."""
    a, b = as_element(a), as_element(b)
    e = _idem(p).value
    eb = e.ring.one() - e
    if e * a * eb != a or eb * b * e != b:
        raise CornerViolation("need a = p a (1-p) and b = (1-p) b p")
    m = a + b
    rab, rba = group_inverse(a * b), group_inverse(b * a)
    direct = group_inverse(m)
    parts = {"ab group invertible": rab.exists, "ba group invertible": rba.exists}
    if rab.exists:
        pi = _pi(rab)
        parts["(ab)^pi a = 0"] = (pi * a).is_zero
        parts["b (ab)^pi = 0"] = (b * pi).is_zero
    out = FormulaOutcome("antidiag", {"corner data": True}, target=m,
                         criterion=len(parts) == 4 and all(parts.values()),
                         exists=direct.exists, notes={"criterion": parts, "witness": direct.witness})
    if out.criterion:
        first = rab.inverse * a + b * rab.inverse
        second = a * rba.inverse + rba.inverse * b
        out.checks["both displayed forms agree"] = first == second
        out.certify(first, direct)
    return out


def cline_group(a, b, strict: bool = True) -> FormulaOutcome:
    """(ab)# = a ((ba)#)^2 b."""
    a, b = as_element(a), as_element(b)
    rab, rba = group_inverse(a * b), group_inverse(b * a)
    out = FormulaOutcome("cline", {"ab group invertible": rab.exists, "ba group invertible": rba.exists},
                         target=a * b, exists=rab.exists)
    _require(out, strict, HypothesisFailed)
    if out.hypotheses_hold:
        gba = rba.inverse
        out.checks["(ab)# a = a (ba)#"] = rab.inverse * a == a * gba
        out.checks["b (ab)# = (ba)# b"] = b * rab.inverse == gba * b
        out.certify(a * gba * gba * b, rab)
    return out


def commuting_outcome(a, b, strict: bool = True) -> FormulaOutcome:
    a, b = as_element(a), as_element(b)
    ra, rb = group_inverse(a), group_inverse(b)
    out = FormulaOutcome("commuting", {"ab = ba": a * b == b * a, "a group invertible": ra.exists,
                                       "b group invertible": rb.exists}, target=a * b)
    _require(out, strict, HypothesisFailed)
    if out.hypotheses_hold:
        ga, gb = ra.inverse, rb.inverse
        rab = group_inverse(a * b)
        out.exists = rab.exists
        out.checks["(ab)# = b# a#"] = rab.exists and rab.inverse == gb * ga
        out.checks["b# a# = a# b#"] = gb * ga == ga * gb
        out.checks["a# b = b a#"] = ga * b == b * ga
        out.checks["b# a = a b#"] = gb * a == a * gb
        out.certify(gb * ga, rab)
    return out


def commuting_product_identities(a, b) -> bool:
    return commuting_outcome(a, b, strict=True).ok


# ---------------------------------------------------------------------------
# differences and the commutator


def diff_group_inverse(p, q, strict: bool = True) -> FormulaOutcome:
    """(p - q)# from p - q1 and q4."""
    s = _Pair(p, q)
    out = FormulaOutcome("thm21i", s.hyp(THM21I), target=s.P - s.Q)
    _require(out, strict)
    d = s.P - s.q1
    rd, r4 = group_inverse(d), group_inverse(s.q4)
    parts = {"p - q1 group invertible": rd.exists, "q4 group invertible": r4.exists}
    if rd.exists and r4.exists:
        dg, dpi, g4, pi4 = rd.inverse, _pi(rd), r4.inverse, _pi(r4)
        q2, q3 = s.q2, s.q3
        parts.update({
            "(p-q1)# q2 = q2 q4#": dg * q2 == q2 * g4,
            "q2 q4^pi = 0": (q2 * pi4).is_zero,
            "(p-q1)^pi q2 = 0": (dpi * q2).is_zero,
            "q3 (p-q1)# = q4# q3": q3 * dg == g4 * q3,
            "q4^pi q3 = 0": (pi4 * q3).is_zero,
            "q3 (p-q1)^pi = 0": (q3 * dpi).is_zero,
        })
    direct = group_inverse(out.target)
    out.criterion = all(parts.values())
    out.exists = direct.exists
    out.notes.update(criterion=parts, witness=direct.witness)
    if out.criterion:
        left = dg * d - dg * q2 - g4 * q3 - g4 * s.q4
        right = d * dg - q2 * g4 - q3 * dg - s.q4 * g4
        out.checks["left and right block forms agree"] = left == right
        out.checks["(p-q1)# lies in pRp"] = s.P * dg * s.P == dg
        out.certify(left, direct)
    return out


def comp_diff_group_inverse(p, q, strict: bool = True) -> FormulaOutcome:
    """(pb - q)# from q1 and pb - q4."""
    s = _Pair(p, q)
    out = FormulaOutcome("thm21ii", s.hyp(THM21II), target=s.Pb - s.Q)
    _require(out, strict)
    e4 = s.Pb - s.q4
    r1, re = group_inverse(s.q1), group_inverse(e4)
    parts = {"q1 group invertible": r1.exists, "pb - q4 group invertible": re.exists}
    if r1.exists and re.exists:
        g1, pi1, ge, pie = r1.inverse, _pi(r1), re.inverse, _pi(re)
        q2, q3 = s.q2, s.q3
        parts.update({
            "(pb-q4)# q3 = q3 q1#": ge * q3 == q3 * g1,
            "q3 q1^pi = 0": (q3 * pi1).is_zero,
            "(pb-q4)^pi q3 = 0": (pie * q3).is_zero,
            "q2 (pb-q4)# = q1# q2": q2 * ge == g1 * q2,
            "q1^pi q2 = 0": (pi1 * q2).is_zero,
            "q2 (pb-q4)^pi = 0": (q2 * pie).is_zero,
        })
    direct = group_inverse(out.target)
    out.criterion = all(parts.values())
    out.exists = direct.exists
    out.notes.update(criterion=parts, witness=direct.witness)
    # pb - q = -(p - qb)
    red = group_inverse(s.P - s.Qb)
    out.checks["reduction pb - q = -(p - qb)"] = red.exists == direct.exists and (
        not red.exists or -red.inverse == direct.inverse)
    if out.criterion:
        left = -(g1 * s.q1) - g1 * q2 - ge * q3 + ge * e4
        right = -(s.q1 * g1) - q2 * ge - q3 * g1 + e4 * ge
        out.checks["left and right block forms agree"] = left == right
        out.certify(left, direct)
    return out


def commutator_group_inverse(p, q, strict: bool = True) -> FormulaOutcome:
    """(pq - qp)# when p - q and pb - q are both group invertible."""
    s = _Pair(p, q)
    r_diff, r_comp = group_inverse(s.P - s.Q), group_inverse(s.Pb - s.Q)
    hyp = s.hyp(THM21I + THM21II)
    hyp.update({"p - q group invertible": r_diff.exists, "pb - q group invertible": r_comp.exists})
    out = FormulaOutcome("thm21iii", hyp, target=s.P * s.Q - s.Q * s.P)
    _require(out, strict, HypothesisFailed)
    direct = group_inverse(out.target)
    out.exists = direct.exists
    if not out.hypotheses_hold:
        return out
    q1, q2, q3, q4 = s.q1, s.q2, s.q3, s.q4
    r1, rd = group_inverse(q1), group_inverse(s.P - q1)
    r4, re = group_inverse(q4), group_inverse(s.Pb - q4)
    out.checks["pq - qp group invertible"] = direct.exists
    if not (r1.exists and rd.exists and r4.exists and re.exists):
        out.checks["q1, p-q1, q4, pb-q4 group invertible"] = False
        return out
    g1, dg = r1.inverse, rd.inverse
    r23, r32 = group_inverse(q2 * q3), group_inverse(q3 * q2)
    out.checks["(q2 q3)# = q1# (p-q1)#"] = r23.exists and r23.inverse == g1 * dg
    out.checks["q1# (p-q1)# = (p-q1)# q1#"] = g1 * dg == dg * g1
    out.checks["(q3 q2)# = q4# (pb-q4)#"] = r32.exists and r32.inverse == r4.inverse * re.inverse
    if r23.exists and r32.exists:
        out.checks["(q2 q3)^pi q2 = 0"] = (_pi(r23) * q2).is_zero
        out.checks["(q3 q2)^pi q3 = 0"] = (_pi(r32) * q3).is_zero
    out.certify(-(g1 * dg * q2) + q3 * g1 * dg, direct)
    return out


def _corner_pi_or_none(x: Element, e: Element):
    r = group_inverse(x)
    return e - x * r.inverse if r.exists else None


def spectral_sum_outcome(p, q, strict: bool = True) -> FormulaOutcome:
    """Spectral idempotents of p - q, pb - q and pq - qp as corner sums."""
    s = _Pair(p, q)
    h1, h2 = all(s.hyp(THM21I).values()), all(s.hyp(THM21II).values())
    r_diff, r_comp = group_inverse(s.P - s.Q), group_inverse(s.Pb - s.Q)
    items = {"(i)": h1 and r_diff.exists, "(ii)": h2 and r_comp.exists}
    items["(iii)"] = items["(i)"] and items["(ii)"]
    out = FormulaOutcome("cor21", {"some item applicable": any(items.values())}, notes={"items": items})
    _require(out, strict, HypothesisFailed)
    P, Pb, q1, q4 = s.P, s.Pb, s.q1, s.q4

    def corner_sum(x, y):
        a, b = _corner_pi_or_none(x, P), _corner_pi_or_none(y, Pb)
        return None if a is None or b is None else a + b

    if items["(i)"]:
        out.checks["(p-q)^pi = (p-q1)^pi + q4^pi"] = _pi(r_diff) == corner_sum(P - q1, q4)
    if items["(ii)"]:
        out.checks["(pb-q)^pi = q1^pi + (pb-q4)^pi"] = _pi(r_comp) == corner_sum(q1, Pb - q4)
    if items["(iii)"]:
        rc = group_inverse(P * s.Q - s.Q * P)
        out.checks["(pq-qp)^pi = (q1^2-q1)^pi + (q4-q4^2)^pi"] = (
            rc.exists and _pi(rc) == corner_sum(q1 * q1 - q1, q4 - q4 * q4))
    return out


def spectral_sum_decomposition(p, q) -> bool:
    return spectral_sum_outcome(p, q, strict=True).ok


# ---------------------------------------------------------------------------
# products


_VARIANTS = ("pq", "pbq", "pqb", "pbqb")


def product_group_invertibility(p, q, variant: str = "pq", strict: bool = True) -> FormulaOutcome:
    """Group invertibility of pq, pb q, p qb or pb qb from one corner block.

    Each product is block triangular with one nonzero row of blocks
    ``[A, B]`` (in a suitable order); it is group invertible iff ``A`` is
    and ``A^pi B = 0``, and then its group inverse is ``A# + (A#)^2 B``.
    For pb q and pb qb the corner is (1-p)R(1-p); the literal statement
    with p in place of pb is recorded in ``notes["literal"]``.
    """
    if variant not in _VARIANTS:
        raise ValueError(f"variant must be one of {_VARIANTS}")
    s = _Pair(p, q)
    P, Pb, Q, Qb = s.P, s.Pb, s.Q, s.Qb
    q1, q2, q3, q4 = s.q1, s.q2, s.q3, s.q4
    if variant == "pq":
        target, keys = P * Q, THM22_UPPER
        A, B, lit_A, lit_B = P * q1, P * q2, P * q1, P * q2
    elif variant == "pbq":
        target, keys = Pb * Q, THM22_UPPER
        A, B, lit_A, lit_B = Pb * q4, Pb * q3, P * q4, P * q3
    elif variant == "pqb":
        target, keys = P * Qb, THM22_LOWER
        A, B, lit_A, lit_B = P - P * q1, -(P * q2), P - P * q1, P * q2
    else:
        target, keys = Pb * Qb, THM22_LOWER
        A, B, lit_A, lit_B = Pb - Pb * q4, -(Pb * q3), P - P * q4, P * q3
    out = FormulaOutcome(f"thm22-{variant}", s.hyp(keys), target=target)
    _require(out, strict)

    def criterion(x, y):
        r = group_inverse(x)
        return r, r.exists and (_pi(r) * y).is_zero

    rA, out.criterion = criterion(A, B)
    out.notes["literal"] = criterion(lit_A, lit_B)[1]
    direct = group_inverse(target)
    out.exists = direct.exists
    out.notes["witness"] = direct.witness
    if out.criterion:
        gA = rA.inverse
        out.certify(gA + gA * gA * B, direct)
    return out


def cao_triangular(a, b, c) -> FormulaOutcome:
    """M = [[A, B], [0, C]] over a field.

    ``a`` and ``c`` are square field matrices (``Element``), ``b`` is the
    r x s coupling block as nested rows.
    """
    A, C = as_element(a), as_element(c)
    if not (isinstance(A.ring, MatrixRing) and isinstance(C.ring, MatrixRing)
            and A.ring.scalars == C.ring.scalars and A.ring.is_field_matrix):
        raise ShapeMismatch("A and C must be matrices over the same field")
    K = A.ring.scalars
    r, s_ = A.ring.n, C.ring.n
    B = b.rows if isinstance(b, Element) else tuple(tuple(K.coerce(x) for x in row) for row in b)
    if len(B) != r or any(len(row) != s_ for row in B):
        raise ShapeMismatch(f"B must be {r}x{s_}")
    ring = MatrixRing(K, r + s_)

    def assemble(tl, tr, br):
        top = linalg.hstack(tl, tr)
        bottom = linalg.hstack(linalg.zero_rows(s_, r, K), br)
        return ring.element(linalg.vstack(top, bottom))

    M = assemble(A.rows, B, C.rows)
    rA, rC, direct = group_inverse(A), group_inverse(C), group_inverse(M)
    parts = {"A group invertible": rA.exists, "C group invertible": rC.exists}
    mul = partial(linalg.mat_mul, K=K)
    if rA.exists and rC.exists:
        Ag, Cg = rA.inverse.rows, rC.inverse.rows
        Api, Cpi = _pi(rA).rows, _pi(rC).rows
        Cpi_right = (C.ring.one() - rC.inverse * C).rows
        parts["(1 - AA#) B (1 - C#C) = 0"] = linalg.is_zero_rows(mul(mul(Api, B), Cpi_right))
    out = FormulaOutcome("cao", {"block upper triangular": True}, target=M,
                         criterion=all(parts.values()), exists=direct.exists,
                         notes={"criterion": parts, "witness": direct.witness})
    if out.criterion:
        Y = linalg.mat_add(
            linalg.mat_add(mul(mul(mul(Ag, Ag), B), Cpi), mul(mul(Api, B), mul(Cg, Cg)), K),
            tuple(tuple(K.canon(-x) for x in row) for row in mul(mul(Ag, B), Cg)), K)
        out.certify(assemble(Ag, Y, Cg), direct)
    return out


def commutator_criterion(p, q, strict: bool = True) -> FormulaOutcome:
    """Group invertibility of pq - qp through q1 - q1^2 = q2 q3 and q4 - q4^2 = q3 q2.

    pq - qp is anti-diagonal with corner entries q2 and -q3, so the
    anti-diagonal criterion applies with ab = -(q1 - q1^2).  The literal
    statement, with p wrapped around every factor, is kept in
    ``notes["literal"]``.
    """
    s = _Pair(p, q)
    P, q1, q2, q3, q4 = s.P, s.q1, s.q2, s.q3, s.q4
    commutes = {f"p commutes with q{i}": s.clauses[f"p q{i} = q{i} p"] for i in range(1, 5)}
    hyp = {k: commutes[k] for k in ("p commutes with q1", "p commutes with q2", "p commutes with q3")}
    out = FormulaOutcome("commutator", hyp, target=P * s.Q - s.Q * P, notes={"commutes": commutes})
    _require(out, strict)
    x1, x4 = q1 - q1 * q1, q4 - q4 * q4
    r1, r4 = group_inverse(x1), group_inverse(x4)
    parts = {"q1 - q1^2 group invertible": r1.exists, "q4 - q4^2 group invertible": r4.exists}
    if r1.exists:
        parts["(q1 - q1^2)^pi q2 = 0"] = (_pi(r1) * q2).is_zero
        parts["q3 (q1 - q1^2)^pi = 0"] = (q3 * _pi(r1)).is_zero
    out.criterion = all(parts.values())
    # literal reading
    l1, l4 = group_inverse(P * x1 * P), group_inverse(P * x4 * P)
    out.notes["literal"] = bool(l1.exists and l4.exists and (_pi(l1) * P * q2).is_zero
                                and (P * q3 * _pi(l4)).is_zero)
    out.notes["criterion"] = parts
    direct = group_inverse(out.target)
    out.exists = direct.exists
    out.checks["q2 q3 = q1 - q1^2"] = q2 * q3 == x1
    out.checks["q3 q2 = q4 - q4^2"] = q3 * q2 == x4
    if out.criterion:
        g = r1.inverse
        out.certify(-(g * q2) + q3 * g, direct)
    return out


def anticommutator_outcome(p, q, strict: bool = True) -> FormulaOutcome:
    s = _Pair(p, q)
    P, Q, Pb = s.P, s.Q, s.Pb
    anti = P * Q + Q * P
    out = FormulaOutcome("anticommutator", {}, target=anti)
    out.checks["pq + qp = -(p+q)(pb-q)"] = anti == -((P + Q) * (Pb - Q))
    out.checks["pq + qp = -(pb-q)(p+q)"] = anti == -((Pb - Q) * (P + Q))
    r_sum, r_comp = group_inverse(P + Q), group_inverse(Pb - Q)
    direct = group_inverse(anti)
    out.exists = direct.exists
    if r_sum.exists and r_comp.exists:
        out.checks["pq + qp group invertible"] = direct.exists
        value = -(r_comp.inverse * r_sum.inverse)
        out.checks["(p+q)# and (pb-q)# commute"] = value == -(r_sum.inverse * r_comp.inverse)
        out.certify(value, direct)
    return out


def anticommutator_identity(p, q) -> bool:
    return anticommutator_outcome(p, q).ok


# ---------------------------------------------------------------------------
# f, g, h


@dataclass(frozen=True)
class FghTriple:
    f: Element
    g: Element
    h: Element


def _triple(s: _Pair) -> tuple[FghTriple, Element]:
    r = group_inverse(s.P - s.Q)
    if not r.exists:
        raise NoGroupInverse(f"p - q is not group invertible: {r.witness}")
    a = r.inverse
    return FghTriple(s.P * a, a * s.P, a * (s.P - s.Q)), a


def right_ideal_equal(x: Element, y: Element) -> bool:
    """xR = yR."""
    ring = x.ring
    if isinstance(ring, MatrixRing) and ring.is_field_matrix:
        return linalg.column_space_equal(x, y)
    if isinstance(ring, ProductRing):
        return all(right_ideal_equal(ring.component(x, i), ring.component(y, i))
                   for i in range(len(ring.factors)))
    els = list(ring.elements())
    return {x * r for r in els} == {y * r for r in els}


def annihilator_equal(x: Element, y: Element) -> bool:
    """x° = y° for right annihilators."""
    ring = x.ring
    if isinstance(ring, MatrixRing) and ring.is_field_matrix:
        return linalg.right_annihilator_equal(x, y)
    if isinstance(ring, ProductRing):
        return all(annihilator_equal(ring.component(x, i), ring.component(y, i))
                   for i in range(len(ring.factors)))
    els = list(ring.elements())
    return {r for r in els if (x * r).is_zero} == {r for r in els if (y * r).is_zero}


def annihilator_is_ideal(x: Element, y: Element) -> bool:
    """x° = yR."""
    ring = x.ring
    if isinstance(ring, MatrixRing) and ring.is_field_matrix:
        return (x * y).is_zero and linalg.rank(x) + linalg.rank(y) == ring.n
    if isinstance(ring, ProductRing):
        return all(annihilator_is_ideal(ring.component(x, i), ring.component(y, i))
                   for i in range(len(ring.factors)))
    els = list(ring.elements())
    return {r for r in els if (x * r).is_zero} == {y * r for r in els}


def fgh_outcome(p, q, strict: bool = True) -> FormulaOutcome:
    s = _Pair(p, q)
    r = group_inverse(s.P - s.Q)
    hyp = s.hyp(THM21I)
    hyp["p - q group invertible"] = r.exists
    out = FormulaOutcome("fgh", hyp, target=s.P - s.Q, exists=r.exists)
    _require(out, strict, NoGroupInverse if all(s.hyp(THM21I).values()) else AssumptionViolated)
    if not out.hypotheses_hold:
        return out
    t, a = _triple(s)
    f, g, h = t.f, t.g, t.h
    P, Q = s.P, s.Q
    out.notes["triple"] = t
    c = out.checks
    c["f idempotent"] = f * f == f
    c["g idempotent"] = g * g == g
    c["h idempotent"] = h * h == h
    d = P - s.q1
    rd, r4 = group_inverse(d), group_inverse(s.q4)
    c["p - q1 and q4 group invertible"] = rd.exists and r4.exists
    if rd.exists and r4.exists:
        dg = rd.inverse
        c["f = [(p-q1)#(p-q1), -(p-q1)# q2; 0, 0]"] = f == dg * d - dg * s.q2
        c["g = [(p-q1)#(p-q1), 0; -q3 (p-q1)#, 0]"] = g == dg * d - s.q3 * dg
        c["h = (p-q1)#(p-q1) + q4# q4"] = h == dg * d + r4.inverse * s.q4
        c["fg = (p-q1)#"] = f * g == dg
    ph = P * h
    c["fR = phR"] = right_ideal_equal(f, ph)
    c["phR = (p-q1)R"] = right_ideal_equal(ph, d)
    c["g° = (ph)°"] = annihilator_equal(g, ph)
    c["(ph)° = (p-q1)°"] = annihilator_equal(ph, d)
    c["fp = pg"] = f * P == P * g
    c["pg = ph"] = P * g == ph
    c["ph = hp"] = ph == h * P
    qh, hq = Q * h, h * Q
    c["qhq = qh"] = Q * h * Q == qh
    c["qh = hq"] = qh == hq
    c["hq = hqh"] = hq == h * Q * h
    return out


def fgh(p, q) -> FghTriple:
    """f = p(p-q)#, g = (p-q)# p, h = (p-q)#(p-q); all identities asserted."""
    out = fgh_outcome(p, q, strict=True)
    if not out.ok:
        raise AssertionError(f"fgh identities failed: {out.problems()}")
    return out.notes["triple"]


def diff_sum_formulas(p, q, strict: bool = True) -> FormulaOutcome:
    """(p-q)# = f + g - h, and the (p+q)# formula with its ph = p test."""
    s = _Pair(p, q)
    r = group_inverse(s.P - s.Q)
    hyp = s.hyp(THM21I)
    hyp["p - q group invertible"] = r.exists
    out = FormulaOutcome("thm33", hyp, target=s.P - s.Q, exists=r.exists)
    _require(out, strict, NoGroupInverse if all(s.hyp(THM21I).values()) else AssumptionViolated)
    if not out.hypotheses_hold:
        return out
    t, a = _triple(s)
    f, g, h = t.f, t.g, t.h
    P, Q = s.P, s.Q
    S = P + Q
    c = out.checks
    c["(p-q)# = f + g - h"] = a == f + g - h
    c["(p-q)#(pb+qb) = (p+q)(p-q)#"] = a * (s.Pb + s.Qb) == S * a
    out.certify(f + g - h, r)
    extra = s.hyp(THM33II)
    out.notes["item (ii) hypotheses"] = extra
    if all(extra.values()):
        x = a * S * a
        ph_is_p = P * h == P
        rs = group_inverse(S)
        x_is_inverse = rs.exists and rs.inverse == x
        c["x is a {1,5}-inverse of p+q"] = is_15_inverse(S, x)
        c["x = (p+q)# iff ph = p"] = x_is_inverse == ph_is_p
        if ph_is_p:
            c["(p+q)# = (2g - h)(f + g - h)"] = rs.exists and rs.inverse == (2 * g - h) * (f + g - h)
        else:
            c["ph != p implies (p+q)x(p+q) != p+q"] = S * x * S != S
        out.notes.update(x=x, ph_is_p=ph_is_p, sum_inverse=rs.inverse, h=h)
    return out


def _unit_inverse(x: Element):
    """Two-sided inverse of x, or None."""
    ring = x.ring
    if isinstance(ring, MatrixRing) and ring.is_field_matrix:
        return linalg.invert(x) if linalg.is_invertible(x) else None
    r = group_inverse(x)
    if r.exists and (x * r.inverse).is_one:
        return r.inverse
    return None


def koliha_equivalence(p, q) -> bool:
    """p - q invertible iff p + q and 1 - pq are invertible."""
    s = _Pair(p, q)
    lhs = _unit_inverse(s.P - s.Q) is not None
    rhs = _unit_inverse(s.P + s.Q) is not None and _unit_inverse(s.one - s.P * s.Q) is not None
    return lhs == rhs


def koliha_outcome(p, q, strict: bool = True) -> FormulaOutcome:
    s = _Pair(p, q)
    out = FormulaOutcome("koliha", {})
    out.checks["p - q invertible iff p + q and 1 - pq invertible"] = koliha_equivalence(s.P, s.Q)
    out.notes["p - q invertible"] = _unit_inverse(s.P - s.Q) is not None
    return out


def invertible_case_outcome(p, q, strict: bool = True) -> FormulaOutcome:
    s = _Pair(p, q)
    P, Q, Pb, one = s.P, s.Q, s.Pb, s.one
    inv = _unit_inverse(P - Q)
    hyp = s.hyp(THM21I + THM33II)
    hyp["p - q invertible"] = inv is not None
    out = FormulaOutcome("cor34", hyp, target=P - Q, exists=group_inverse(P - Q).exists)
    if strict and inv is None:
        raise NotInvertible("p - q is not invertible")
    _require(out, strict)
    if not out.hypotheses_hold:
        return out
    f, g = P * inv, inv * P
    S = P + Q
    sinv = _unit_inverse(S)
    c = out.checks
    c["p + q invertible"] = sinv is not None
    c["1 - pq invertible"] = _unit_inverse(one - P * Q) is not None
    if sinv is not None:
        c["(p+q)^-1 = (p-q)^-1 (p+q) (p-q)^-1"] = sinv == inv * S * inv
        c["(p-q)^-1 = (p+q)^-1 (p-q) (p+q)^-1"] = inv == sinv * (P - Q) * sinv
        c["(p+q)^-1 = (2g - 1)(f + g - 1)"] = sinv == (2 * g - one) * (f + g - one)
    c["(p-q)^-1 = f + g - 1"] = inv == f + g - one
    c["f idempotent"] = f * f == f
    c["fR = pR"] = right_ideal_equal(f, P)
    c["f° = qR"] = annihilator_is_ideal(f, Q)
    c["g idempotent"] = g * g == g
    c["gR = q°"] = annihilator_is_ideal(Q, g)
    c["g° = p°"] = annihilator_equal(g, P)
    c["pb f = 0"] = (Pb * f).is_zero
    c["g pb = 0"] = (g * Pb).is_zero
    pqp_inv = _unit_inverse(one - P * Q * P)
    c["(1 - pqp)^-1 = 1 - p + p (p-q)^-2"] = pqp_inv is not None and pqp_inv == one - P + P * inv * inv
    out.certify(inv, group_inverse(P - Q))
    return out


def invertible_case_identities(p, q) -> bool:
    return invertible_case_outcome(p, q, strict=True).ok


def pqp_family(p, q, strict: bool = True) -> FormulaOutcome:
    """(p - pqp)# = fg, (p - pq)# = (fg)^2 qb, (p - qp)# = qb (fg)^2."""
    s = _Pair(p, q)
    r = group_inverse(s.P - s.Q)
    hyp = s.hyp(THM21I)
    hyp["p - q group invertible"] = r.exists
    P, Q, Qb = s.P, s.Q, s.Qb
    out = FormulaOutcome("thm34", hyp, target=P - P * Q * P)
    _require(out, strict, NoGroupInverse if all(s.hyp(THM21I).values()) else AssumptionViolated)
    if not out.hypotheses_hold:
        return out
    t, _ = _triple(s)
    fg = t.f * t.g
    fg2 = fg * fg
    pq_target, qp_target = P - P * Q, P - Q * P
    r_pq, r_qp = group_inverse(pq_target), group_inverse(qp_target)
    out.checks["(p - pq)# = (fg)^2 qb"] = (is_group_inverse(pq_target, fg2 * Qb)
                                          and r_pq.exists and r_pq.inverse == fg2 * Qb)
    out.checks["(p - qp)# = qb (fg)^2"] = (is_group_inverse(qp_target, Qb * fg2)
                                          and r_qp.exists and r_qp.inverse == Qb * fg2)
    out.certify(fg, group_inverse(out.target))
    return out


# ---------------------------------------------------------------------------
# catalog

PAIR_FORMULAS = {
    "thm21i": diff_group_inverse,
    "thm21ii": comp_diff_group_inverse,
    "thm21iii": commutator_group_inverse,
    "cor21": spectral_sum_outcome,
    "thm22-pq": partial(product_group_invertibility, variant="pq"),
    "thm22-pbq": partial(product_group_invertibility, variant="pbq"),
    "thm22-pqb": partial(product_group_invertibility, variant="pqb"),
    "thm22-pbqb": partial(product_group_invertibility, variant="pbqb"),
    "commutator": commutator_criterion,
    "anticommutator": anticommutator_outcome,
    "fgh": fgh_outcome,
    "thm33": diff_sum_formulas,
    "cor34": invertible_case_outcome,
    "koliha": koliha_outcome,
    "thm34": pqp_family,
}

ELEMENT_FORMULAS = {
    "cline": cline_group,
    "commuting": commuting_outcome,
}

FORMULA_NAMES = tuple(PAIR_FORMULAS) + tuple(ELEMENT_FORMULAS) + ("antidiag", "cao")
