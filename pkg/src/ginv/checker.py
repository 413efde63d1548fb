"""Seeded trial generation, theorem suites and counterexample search.

Randomness comes from SplitMix64.  Trial ``i`` of a run seeded with ``s``
gets its own generator, seeded with the ``i``-th output of
``SplitMix64(s)``, so trials can be generated in any order (or on any
worker) and still come out bit-identical.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from . import encoding, formulas, linalg
from .errors import (GenerationExhausted, GinvError, NotEnumerable, UnknownPredicate,
                     UnknownTheorem, UnsupportedRing)
from .pierce import assumption_profile, decompose
from .rings import Element, Idempotent, MatrixRing, ModularIntRing, ProductRing, Rationals, Ring, diag

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
SHAPES = ("general", "commuting", "lower-triangular", "upper-triangular", "corner-confined", "paper-example")


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return _mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def shuffle(self, xs: list) -> list:
        for i in range(len(xs) - 1, 0, -1):
            j = self.below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]
        return xs

    @classmethod
    def for_trial(cls, seed: int, index: int) -> "SplitMix64":
        return cls(_mix64((seed + (index + 1) * GAMMA) & MASK64))


@dataclass(frozen=True)
class GeneratorConfig:
    ring: Ring
    trials: int = 100
    seed: int = 0
    shape: str = "general"
    exhaustive: bool = False

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}; expected one of {SHAPES}")

    @property
    def dim(self) -> int:
        return getattr(self.ring, "n", 1)

    def as_dict(self) -> dict:
        return {"ring": self.ring.descriptor(), "trials": self.trials, "seed": self.seed,
                "shape": self.shape, "exhaustive": self.exhaustive}


# ---------------------------------------------------------------------------
# random matrices


def _is_field_matrix(ring) -> bool:
    return isinstance(ring, MatrixRing) and ring.is_field_matrix


def _entry(rng: SplitMix64, K):
    if isinstance(K, Rationals):
        return K.coerce(rng.randint(-3, 3))
    return rng.below(K.modulus)


def _random_rows(rng, K, m, n):
    return tuple(tuple(_entry(rng, K) for _ in range(n)) for _ in range(m))


def _random_invertible(rng, K, n):
    for _ in range(100):
        S = _random_rows(rng, K, n, n)
        if linalg.rank_rows(S, K) == n:
            return S, linalg.inverse_rows(S, K)
    raise GenerationExhausted("100 consecutive singular matrices")


def _diag_rows(K, flags):
    n = len(flags)
    return tuple(tuple(K.one if (i == j and flags[i]) else K.zero for j in range(n)) for i in range(n))


def _random_flags(rng, n, rank=None):
    k = rng.below(n + 1) if rank is None else rank
    order = rng.shuffle(list(range(n)))
    chosen = set(order[:k])
    return [i in chosen for i in range(n)]


def _idempotent_rows(rng, K, n, rank=None):
    """S D S^-1 with D a random 0/1 diagonal."""
    if n == 0:
        return ()
    S, Si = _random_invertible(rng, K, n)
    D = _diag_rows(K, _random_flags(rng, n, rank))
    return linalg.mat_mul(linalg.mat_mul(S, D, K), Si, K)


@lru_cache(maxsize=64)
def _idempotent_list(ring: Ring) -> tuple:
    return tuple(Idempotent(e) for e in ring.elements() if e * e == e)


def enumerate_idempotents(r: Ring) -> list:
    if not r.enumerable:
        raise NotEnumerable(f"{r} is not enumerable")
    return list(_idempotent_list(r))


def gen_idempotent(rng: SplitMix64, ring, rank: int | None = None) -> Idempotent:
    """Random idempotent of ``ring`` (a Ring or a GeneratorConfig)."""
    if isinstance(ring, GeneratorConfig):
        ring = ring.ring
    if _is_field_matrix(ring):
        return Idempotent(ring.element(_idempotent_rows(rng, ring.scalars, ring.n, rank)))
    if isinstance(ring, ProductRing) and not ring.enumerable:
        return Idempotent(Element(ring, tuple(gen_idempotent(rng, f).value.payload for f in ring.factors)))
    if ring.enumerable:
        pool = _idempotent_list(ring)
        return pool[rng.below(len(pool))]
    raise UnsupportedRing(f"cannot generate idempotents in {ring}")


def gen_element(rng: SplitMix64, ring: Ring) -> Element:
    """Random element; matrices are L R products of random rank."""
    if _is_field_matrix(ring):
        K, n = ring.scalars, ring.n
        k = rng.below(n + 1)
        if k == 0:
            return ring.zero()
        L, R = _random_rows(rng, K, n, k), _random_rows(rng, K, k, n)
        return ring.element(linalg.mat_mul(L, R, K))
    if isinstance(ring, ProductRing):
        return Element(ring, tuple(gen_element(rng, f).payload for f in ring.factors))
    if isinstance(ring, ModularIntRing):
        return ring.element(rng.below(ring.modulus))
    raise UnsupportedRing(f"cannot generate elements of {ring}")


def gen_commuting_elements(rng: SplitMix64, ring: Ring) -> tuple:
    """Two polynomials in one random element."""
    x = gen_element(rng, ring)
    x2 = x * x

    def poly():
        c = [rng.randint(-2, 2) for _ in range(3)]
        return ring.scalar(c[0]) + c[1] * x + c[2] * x2

    return poly(), poly()


# ---------------------------------------------------------------------------
# idempotent pairs


def _paper_example(ring: Ring):
    if isinstance(ring, MatrixRing) and ring.n == 4:
        return Idempotent(diag(ring, [1, 1, 0, 0])), Idempotent(diag(ring, [1, 0, 1, 0]))
    if isinstance(ring, ProductRing) and len(ring.factors) == 4:
        return Idempotent(diag(ring, [1, 1, 0, 0])), Idempotent(diag(ring, [1, 0, 1, 0]))
    raise UnsupportedRing(f"the worked example lives in a 4-dimensional ring, not {ring}")


def _shape_ok(shape, p, q) -> bool:
    if shape in ("general", "paper-example"):
        return True
    P, Q = p.value, q.value
    if shape == "commuting":
        return P * Q == Q * P
    b = decompose(Q, P)
    if shape == "lower-triangular":
        return b.q2.is_zero
    if shape == "upper-triangular":
        return b.q3.is_zero
    return assumption_profile(Q, P).corner_confined


@lru_cache(maxsize=64)
def _pair_pool(ring: Ring, shape: str) -> tuple:
    idem = _idempotent_list(ring)
    return tuple((p, q) for p in idem for q in idem if _shape_ok(shape, p, q))


def _block(K, tl, tr, bl, br):
    return linalg.vstack(linalg.hstack(tl, tr), linalg.hstack(bl, br))


def _eye(K, n):
    return linalg.identity_rows(n, K)


def gen_constrained_pair(cfg: GeneratorConfig, rng: SplitMix64) -> tuple:
    """A pair (p, q) of idempotents of the configured shape."""
    ring, shape = cfg.ring, cfg.shape
    if shape == "paper-example":
        return _paper_example(ring)
    if not _is_field_matrix(ring):
        if isinstance(ring, ProductRing) and not ring.enumerable and shape == "general":
            return gen_idempotent(rng, ring), gen_idempotent(rng, ring)
        if not ring.enumerable:
            raise UnsupportedRing(f"shape {shape!r} needs a field matrix ring or an enumerable ring")
        pool = _pair_pool(ring, shape)
        if not pool:
            raise GenerationExhausted(f"no idempotent pairs of shape {shape!r} in {ring}")
        return pool[rng.below(len(pool))]
    K, n = ring.scalars, ring.n
    if shape == "general":
        return gen_idempotent(rng, ring), gen_idempotent(rng, ring)
    S, Si = _random_invertible(rng, K, n)

    def conj(M):
        return Idempotent(ring.element(linalg.mat_mul(linalg.mat_mul(S, M, K), Si, K)))

    if shape == "commuting":
        return conj(_diag_rows(K, _random_flags(rng, n))), conj(_diag_rows(K, _random_flags(rng, n)))
    # basis where p = diag(I_k, 0)
    k = rng.below(n + 1)
    m = n - k
    p0 = _diag_rows(K, [i < k for i in range(n)])
    U = _idempotent_rows(rng, K, k)
    Z = lambda a, b: linalg.zero_rows(a, b, K)  # noqa: E731
    if shape == "corner-confined":
        q0 = _block(K, U, Z(k, m), Z(m, k), Z(m, m))
        return conj(p0), conj(q0)
    W = _idempotent_rows(rng, K, m)
    mul, sub = (lambda A, B: linalg.mat_mul(A, B, K)), (lambda A, B: linalg.mat_sub(A, B, K))
    if shape == "lower-triangular":
        R = _random_rows(rng, K, m, k)
        C = linalg.mat_add(mul(mul(W, R), sub(_eye(K, k), U)), mul(mul(sub(_eye(K, m), W), R), U), K) if k and m else Z(m, k)
        q0 = _block(K, U, Z(k, m), C, W)
    else:
        R = _random_rows(rng, K, k, m)
        B = linalg.mat_add(mul(mul(U, R), sub(_eye(K, m), W)), mul(mul(sub(_eye(K, k), U), R), W), K) if k and m else Z(k, m)
        q0 = _block(K, U, B, Z(m, k), W)
    return conj(p0), conj(q0)


# ---------------------------------------------------------------------------
# theorem catalog

THEOREM_KINDS = {name: "pair" for name in formulas.PAIR_FORMULAS}
THEOREM_KINDS.update({"cline": "elements", "commuting": "commuting", "antidiag": "antidiag", "cao": "cao"})


def _trial_data(kind: str, cfg: GeneratorConfig, rng: SplitMix64) -> dict:
    ring = cfg.ring
    if kind == "pair":
        p, q = gen_constrained_pair(cfg, rng)
        return {"p": p.value, "q": q.value}
    if kind == "elements":
        return {"a": gen_element(rng, ring), "b": gen_element(rng, ring)}
    if kind == "commuting":
        a, b = gen_commuting_elements(rng, ring)
        return {"a": a, "b": b}
    if kind == "antidiag":
        p = gen_idempotent(rng, ring).value
        pb = ring.one() - p
        return {"a": p * gen_element(rng, ring) * pb, "b": pb * gen_element(rng, ring) * p, "p": p}
    if kind == "cao":
        if not _is_field_matrix(ring) or ring.n < 2:
            raise UnsupportedRing("cao trials need a field matrix ring with n >= 2")
        K = ring.scalars
        r = rng.randint(1, ring.n - 1)
        s = ring.n - r
        A = gen_element(rng, MatrixRing(K, r))
        C = gen_element(rng, MatrixRing(K, s))
        B = _random_rows(rng, K, r, s) if rng.below(2) else linalg.zero_rows(r, s, K)
        return {"A": A, "B": B, "C": C}
    raise UnknownTheorem(kind)


def _exhaustive_data(kind: str, cfg: GeneratorConfig) -> Iterator[dict]:
    ring = cfg.ring
    if not ring.enumerable:
        raise NotEnumerable(f"exhaustive mode needs an enumerable ring, not {ring}")
    if kind == "pair":
        if cfg.shape == "paper-example":
            p, q = _paper_example(ring)
            yield {"p": p.value, "q": q.value}
            return
        for p, q in _pair_pool(ring, cfg.shape):
            yield {"p": p.value, "q": q.value}
    elif kind in ("elements", "commuting"):
        els = list(ring.elements())
        for a in els:
            for b in els:
                if kind == "elements" or a * b == b * a:
                    yield {"a": a, "b": b}
    elif kind == "antidiag":
        yield from antidiag_corner_data(ring)
    else:
        raise UnsupportedRing(f"no exhaustive mode for {kind!r}")


def antidiag_corner_data(ring: Ring) -> Iterator[dict]:
    """Every idempotent p with every a in pR(1-p) and b in (1-p)Rp."""
    els = list(ring.elements())
    one = ring.one()
    for p in _idempotent_list(ring):
        e = p.value
        eb = one - e
        tops = sorted({e * x * eb for x in els}, key=encoding.sort_key)
        bottoms = sorted({eb * x * e for x in els}, key=encoding.sort_key)
        for a in tops:
            for b in bottoms:
                yield {"a": a, "b": b, "p": e}


def run_formula(theorem: str, data: dict) -> formulas.FormulaOutcome:
    kind = THEOREM_KINDS.get(theorem)
    if kind is None:
        raise UnknownTheorem(theorem)
    if kind == "pair":
        return formulas.PAIR_FORMULAS[theorem](data["p"], data["q"], strict=False)
    if theorem == "cline":
        return formulas.cline_group(data["a"], data["b"], strict=False)
    if theorem == "commuting":
        return formulas.commuting_outcome(data["a"], data["b"], strict=False)
    if theorem == "antidiag":
        return formulas.antidiag_group_inverse(data["a"], data["b"], data["p"], strict=False)
    return formulas.cao_triangular(data["A"], data["B"], data["C"])


def _encode_data(data: dict) -> dict:
    return {k: (encoding.element_to_json(v) if isinstance(v, Element) else encoding.rows_to_json(v))
            for k, v in data.items()}


def decode_data(payload: dict, ring: Ring | None = None) -> dict:
    out = {}
    for k, v in payload.items():
        if isinstance(v, dict):
            out[k] = encoding.element_from_json(v)
        else:
            out[k] = v
    if "B" in out and "A" in out:
        K = out["A"].ring.scalars
        out["B"] = tuple(tuple(K.coerce(x) for x in row) for row in out["B"])
    return out


@dataclass
class TheoremReport:
    theorem: str
    config: dict
    seed: int
    trials: int = 0
    held: int = 0
    verified: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    assumption_stats: dict = field(default_factory=dict)
    criterion_stats: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def clean(self) -> bool:
        return not self.failures

    def as_dict(self, timing: bool = True) -> dict:
        d = {
            "theorem": self.theorem,
            "trials": self.trials,
            "held": self.held,
            "verified": self.verified,
            "skipped": self.skipped,
            "failures": self.failures,
            "seed": self.seed,
            "config": self.config,
            "assumption_stats": self.assumption_stats,
            "criterion_stats": self.criterion_stats,
        }
        if timing:
            d["wall_time"] = round(self.wall_time, 6)
        return d


def _trials(kind: str, cfg: GeneratorConfig) -> Iterator[tuple]:
    if cfg.exhaustive:
        yield from enumerate(_exhaustive_data(kind, cfg))
        return
    for i in range(cfg.trials):
        yield i, _trial_data(kind, cfg, SplitMix64.for_trial(cfg.seed, i))


def _bump(stats: dict, key: str, flag: bool | None):
    if flag is None:
        return
    entry = stats.setdefault(key, {"true": 0, "false": 0})
    entry["true" if flag else "false"] += 1


def check_theorem(theorem: str, cfg: GeneratorConfig) -> TheoremReport:
    """Run ``theorem`` over the trials described by ``cfg``."""
    kind = THEOREM_KINDS.get(theorem)
    if kind is None:
        raise UnknownTheorem(theorem)
    start = time.perf_counter()
    report = TheoremReport(theorem, cfg.as_dict(), cfg.seed)
    for i, data in _trials(kind, cfg):
        report.trials += 1
        if kind == "pair":
            prof = assumption_profile(data["q"], data["p"]).as_dict()
            for key, val in prof.items():
                if isinstance(val, bool):
                    _bump(report.assumption_stats, key, val)
        try:
            out = run_formula(theorem, data)
        except GinvError as exc:
            report.held += 1
            report.failures.append({"trial": i, "data": _encode_data(data), "reason": f"{type(exc).__name__}: {exc}"})
            continue
        if not out.hypotheses_hold:
            report.skipped += 1
            continue
        report.held += 1
        _bump(report.criterion_stats, "criterion", out.criterion)
        _bump(report.criterion_stats, "exists", out.exists)
        if "literal" in out.notes:
            # the statement as printed, kept beside the corrected reading
            _bump(report.criterion_stats, "literal", out.notes["literal"])
            _bump(report.criterion_stats, "literal agrees with existence", out.notes["literal"] == out.exists)
        if out.ok:
            report.verified += 1
        else:
            report.failures.append(_failure_entry(i, data, out))
    report.wall_time = time.perf_counter() - start
    return report


def _failure_entry(i: int, data: dict, out: formulas.FormulaOutcome) -> dict:
    oracle = None
    if out.target is not None:
        from .group_inverse import group_inverse
        r = group_inverse(out.target)
        oracle = encoding.element_to_json(r.inverse) if r.exists else None
    return {
        "trial": i,
        "data": _encode_data(data),
        "expected": {"exists": out.exists, "inverse": oracle},
        "got": {"criterion": out.criterion,
                "value": encoding.element_to_json(out.value) if out.value is not None else None},
        "problems": out.problems(),
    }


def replay_failure(theorem: str, entry: dict) -> formulas.FormulaOutcome:
    """Re-run a recorded failure from its serialized data."""
    return run_formula(theorem, decode_data(entry["data"]))


# ---------------------------------------------------------------------------
# counterexample search

PREDICATES = ("ph-necessity", "criterion-mismatch", "formula-vs-oracle")


@dataclass
class SearchResult:
    predicate: str
    found: bool
    trials: int
    trial: int | None = None
    data: dict | None = None
    trace: dict | None = None

    def as_dict(self) -> dict:
        return {"predicate": self.predicate, "found": self.found, "trials": self.trials,
                "trial": self.trial, "data": self.data, "trace": self.trace}


def search_counterexample(predicate: str, cfg: GeneratorConfig, theorem: str | None = None) -> SearchResult:
    """Scan trials for the first pair satisfying ``predicate``.

    ``ph-necessity`` looks for p - q group invertible with ph != p and
    (p+q) x (p+q) != p+q.  ``criterion-mismatch`` and ``formula-vs-oracle``
    need ``theorem`` and look for a held trial whose verdict disagrees with
    the oracle, or whose value or identities fail.
    """
    if predicate not in PREDICATES:
        raise UnknownPredicate(predicate)
    if predicate == "ph-necessity":
        theorem = "thm33"
    elif theorem is None:
        raise UnknownTheorem("a theorem id is required for this predicate")
    kind = THEOREM_KINDS.get(theorem)
    if kind is None:
        raise UnknownTheorem(theorem)
    count = 0
    for i, data in _trials(kind, cfg):
        count += 1
        out = run_formula(theorem, data)
        if not out.hypotheses_hold:
            continue
        if predicate == "ph-necessity":
            if "ph_is_p" not in out.notes or out.notes["ph_is_p"]:
                continue
            P, Q = data["p"], data["q"]
            S, x = P + Q, out.notes["x"]
            if S * x * S == S:
                continue
            rs = out.notes["sum_inverse"]
            trace = {"ph": encoding.element_to_json(P * out.notes["h"]),
                     "x": encoding.element_to_json(x),
                     "(p+q)x(p+q)": encoding.element_to_json(S * x * S),
                     "p+q": encoding.element_to_json(S),
                     "(p+q)#": encoding.element_to_json(rs) if rs is not None else None,
                     "x is {1,5}-inverse": out.checks.get("x is a {1,5}-inverse of p+q")}
        elif predicate == "criterion-mismatch":
            if out.agrees:
                continue
            trace = {"criterion": out.criterion, "exists": out.exists,
                     "parts": out.notes.get("criterion")}
        else:
            if out.ok:
                continue
            trace = {"problems": out.problems()}
        return SearchResult(predicate, True, count, i, _encode_data(data), trace)
    return SearchResult(predicate, False, count)
