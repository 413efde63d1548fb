"""Exact rank-revealing linear algebra over Q and GF(p).

Internally matrices are tuples of row tuples paired with a scalar domain
(``Rationals`` or ``Residues(p)``).  Over Q the forward sweep is
fraction-free (Bareiss) on a row-scaled integer copy; pivots are
normalized only at the end.  The public wrappers take and return
``Element`` values of a ``MatrixRing``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import NonInvertible, RingMismatch, ShapeMismatch
from .rings import Element, MatrixRing, Rationals, rational_matmul

Rows = tuple  # tuple of row tuples


@dataclass(frozen=True)
class RrefResult:
    rref: Element
    rank: int
    pivot_columns: tuple
    transform: Element


@dataclass(frozen=True)
class FullRankFactorization:
    F: Rows  # n x r
    G: Rows  # r x n
    r: int


# ---------------------------------------------------------------------------
# raw helpers


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence], K) -> Rows:
    if A and B and len(A[0]) != len(B):
        raise ShapeMismatch(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0]) if B else 0}")
    if isinstance(K, Rationals):
        return rational_matmul(A, B)
    cols = tuple(zip(*B))
    c = K.canon
    return tuple(tuple(c(sum(x * y for x, y in zip(row, col))) for col in cols) for row in A)


def mat_add(A, B, K) -> Rows:
    c = K.canon
    return tuple(tuple(c(x + y) for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A, B, K) -> Rows:
    c = K.canon
    return tuple(tuple(c(x - y) for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def identity_rows(n: int, K) -> Rows:
    return tuple(tuple(K.one if i == j else K.zero for j in range(n)) for i in range(n))


def zero_rows(m: int, n: int, K) -> Rows:
    return tuple((K.zero,) * n for _ in range(m))


def is_zero_rows(A) -> bool:
    return all(x == 0 for row in A for x in row)


def _bareiss_rational(rows, ncols_pivot):
    """Fraction-free elimination on an integer matrix; pivots only in the
    first ``ncols_pivot`` columns.  Returns (matrix, pivot_columns)."""
    M = [list(r) for r in rows]
    m = len(M)
    width = len(M[0]) if M else 0
    prev = 1
    k = 0
    pivots = []
    for c in range(ncols_pivot):
        if k == m:
            break
        piv = next((i for i in range(k, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[k], M[piv] = M[piv], M[k]
        pkc = M[k][c]
        for i in range(k + 1, m):
            mic = M[i][c]
            row_i, row_k = M[i], M[k]
            for j in range(c + 1, width):
                row_i[j] = (pkc * row_i[j] - mic * row_k[j]) // prev
            row_i[c] = 0
        prev = pkc
        pivots.append(c)
        k += 1
    return M, pivots


def _rref_rational(A, with_transform):
    m = len(A)
    n = len(A[0]) if m else 0
    scales = [lcm(*(Fraction(x).denominator for x in row)) if row else 1 for row in A]
    ints = []
    for i, row in enumerate(A):
        r = [int(Fraction(x) * scales[i]) for x in row]
        if with_transform:
            r += [scales[i] if j == i else 0 for j in range(m)]
        ints.append(r)
    M, pivots = _bareiss_rational(ints, n)
    F = [[Fraction(x) for x in row] for row in M]
    # normalize pivot rows, then clear above each pivot
    for k, c in enumerate(pivots):
        pv = F[k][c]
        F[k] = [x / pv for x in F[k]]
        for i in range(k):
            f = F[i][c]
            if f:
                F[i] = [a - f * b for a, b in zip(F[i], F[k])]
    R = tuple(tuple(row[:n]) for row in F)
    T = tuple(tuple(row[n:]) for row in F) if with_transform else None
    return R, pivots, T


def _rref_modular(A, K, with_transform):
    p = K.modulus
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(row) + ([1 if j == i else 0 for j in range(m)] if with_transform else []) for i, row in enumerate(A)]
    pivots = []
    k = 0
    for c in range(n):
        if k == m:
            break
        piv = next((i for i in range(k, m) if M[i][c] % p), None)
        if piv is None:
            continue
        M[k], M[piv] = M[piv], M[k]
        inv = pow(M[k][c], -1, p)
        M[k] = [x * inv % p for x in M[k]]
        for i in range(m):
            if i != k and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[k])]
        pivots.append(c)
        k += 1
    R = tuple(tuple(row[:n]) for row in M)
    T = tuple(tuple(row[n:]) for row in M) if with_transform else None
    return R, pivots, T


def rref_rows(A, K, with_transform=False):
    """Reduced row-echelon form of a raw matrix: (R, pivot_columns, T)."""
    if isinstance(K, Rationals):
        return _rref_rational(A, with_transform)
    return _rref_modular(A, K, with_transform)


def rank_rows(A, K) -> int:
    if not A or not A[0]:
        return 0
    return len(rref_rows(A, K)[1])


def inverse_rows(A, K) -> Rows:
    n = len(A)
    R, pivots, T = rref_rows(A, K, with_transform=True)
    if len(pivots) < n:
        raise NonInvertible(f"matrix has rank {len(pivots)} < {n}", rank=len(pivots), size=n)
    return T


def factorize_rows(A, K) -> FullRankFactorization:
    R, pivots, _ = rref_rows(A, K)
    r = len(pivots)
    F = tuple(tuple(row[c] for c in pivots) for row in A)
    G = R[:r]
    return FullRankFactorization(F, G, r)


def hstack(A, B) -> Rows:
    return tuple(tuple(ra) + tuple(rb) for ra, rb in zip(A, B))


def vstack(A, B) -> Rows:
    return tuple(A) + tuple(B)


# ---------------------------------------------------------------------------
# element-level API


def _field_ring(A: Element) -> MatrixRing:
    ring = A.ring
    if not isinstance(ring, MatrixRing) or not ring.is_field_matrix:
        raise TypeError(f"{ring} is not a matrix ring over a field")
    return ring


def _same(A: Element, B: Element) -> MatrixRing:
    ra, rb = _field_ring(A), _field_ring(B)
    if ra.scalars != rb.scalars:
        raise RingMismatch(f"{ra} vs {rb}")
    if ra.n != rb.n:
        raise ShapeMismatch(f"{ra.n}x{ra.n} vs {rb.n}x{rb.n}")
    return ra


def rref(A: Element) -> RrefResult:
    ring = _field_ring(A)
    R, pivots, T = rref_rows(A.rows, ring.scalars, with_transform=True)
    return RrefResult(ring.element(R), len(pivots), tuple(pivots), ring.element(T))


def rank(A: Element) -> int:
    ring = _field_ring(A)
    return rank_rows(A.rows, ring.scalars)


def full_rank_factorize(A: Element) -> FullRankFactorization:
    ring = _field_ring(A)
    return factorize_rows(A.rows, ring.scalars)


def invert(A: Element) -> Element:
    ring = _field_ring(A)
    return ring.element(inverse_rows(A.rows, ring.scalars))


def is_invertible(A: Element) -> bool:
    return rank(A) == _field_ring(A).n


def column_space_equal(A: Element, B: Element) -> bool:
    """A R = B R, as equality of column spaces."""
    K = _same(A, B).scalars
    ra, rb = rank_rows(A.rows, K), rank_rows(B.rows, K)
    return ra == rb == rank_rows(hstack(A.rows, B.rows), K)


def right_annihilator_equal(A: Element, B: Element) -> bool:
    """{y : Ay = 0} = {y : By = 0}, i.e. equal row spaces."""
    K = _same(A, B).scalars
    ra, rb = rank_rows(A.rows, K), rank_rows(B.rows, K)
    return ra == rb == rank_rows(vstack(A.rows, B.rows), K)
