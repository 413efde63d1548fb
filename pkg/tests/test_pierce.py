import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ginv.checker import SHAPES, GeneratorConfig, SplitMix64, gen_constrained_pair, gen_element
from ginv.errors import MismatchedIdempotent, RingMismatch
from ginv.pierce import (assumption_profile, block_multiply, corner_unit_check, decompose,
                         idempotent_block_relations, recompose)
from ginv.rings import Idempotent, diag, make_ring

from strategies import matrices

Q2 = make_ring(("Q", 2))


def test_example_blocks(q4, example_pair):
    p, q = example_pair
    b = decompose(q, p)
    assert b.q1 == diag(q4, [1, 0, 0, 0])
    assert b.q2.is_zero and b.q3.is_zero
    assert b.q4 == diag(q4, [0, 0, 1, 0])
    assert idempotent_block_relations(q, p)
    prof = assumption_profile(q, p)
    assert prof.thm22_upper and prof.thm22_lower
    assert not prof.corner_confined


def test_trivial_blocks(example_pair):
    p, _ = example_pair
    b = decompose(p, p)
    assert b.a11 == p and b.a12.is_zero and b.a21.is_zero and b.a22.is_zero
    one = p.ring.one()
    b = decompose(one, p)
    assert b.a11 == p and b.a22 == one - p
    assert idempotent_block_relations(p, p)
    assert idempotent_block_relations(one - p, p)


def test_block_multiply_examples(q4, example_pair):
    p, q = example_pair
    prod = block_multiply(decompose(p, p), decompose(q, p))
    assert prod.total == diag(q4, [1, 0, 0, 0])
    x = decompose(q4.element([[1, 2, 3, 4], [0, 1, 0, 2], [5, 0, 0, 1], [1, 1, 1, 1]]), p)
    assert block_multiply(x, decompose(q4.one(), p)) == x
    bq = decompose(q, p)
    assert block_multiply(bq, bq) == bq


def test_mismatched_idempotent(example_pair):
    p, q = example_pair
    with pytest.raises(MismatchedIdempotent):
        block_multiply(decompose(q, p), decompose(q, q))
    with pytest.raises(RingMismatch):
        decompose(make_ring(("Q", 3)).one(), p)


def test_thm22_upper_false():
    p = Q2.element([[1, 0], [0, 0]])
    q = Q2.element([[1, 1], [0, 0]])
    assert not assumption_profile(q, p).thm22_upper


P4 = diag(make_ring(("Q", 4)), [1, 1, 0, 0])


@settings(max_examples=150, deadline=None)
@given(matrices(make_ring(("Q", 4))), matrices(make_ring(("Q", 4))))
def test_reconstruction_and_homomorphism(a, b):
    x, y = decompose(a, P4), decompose(b, P4)
    assert recompose(x) == a
    assert x.corners_ok()
    assert block_multiply(x, y) == decompose(a * b, P4)


def test_homomorphism_exhaustive_m2_f2():
    ring = make_ring(("Fp", 2, 2))
    els = list(ring.elements())
    for e in els:
        if e * e != e:
            continue
        for a in els:
            x = decompose(a, e)
            assert recompose(x) == a
            for b in els:
                assert block_multiply(x, decompose(b, e)) == decompose(a * b, e)


@pytest.mark.parametrize("spec", [("Q", 4), ("Fp", 5, 4), ("Fp", 2, 3)])
@pytest.mark.parametrize("shape", [s for s in SHAPES if s != "paper-example"])
def test_generator_corpus(spec, shape):
    # block relations always hold; Pierce corners make several flags identically true
    cfg = GeneratorConfig(make_ring(spec), shape=shape)
    for i in range(60):
        p, q = gen_constrained_pair(cfg, SplitMix64.for_trial(11, i))
        assert idempotent_block_relations(q, p)
        prof = assumption_profile(q.value, p.value)
        assert prof.thm21i and prof.thm21ii and prof.thm33ii_extra
        assert prof.clauses["p q1 = q1 p"]


@pytest.mark.parametrize("seed", range(3))
def test_homomorphism_sampled_f5(seed):
    ring = make_ring(("Fp", 5, 3))
    cfg = GeneratorConfig(ring)
    for i in range(500 // 3):
        rng = SplitMix64.for_trial(seed, i)
        p, _ = gen_constrained_pair(cfg, rng)
        a, b = gen_element(rng, ring), gen_element(rng, ring)
        assert block_multiply(decompose(a, p), decompose(b, p)) == decompose(a * b, p)


def test_corner_unit_check(q4):
    assert corner_unit_check(q4.one())
    assert corner_unit_check(diag(q4, [1, 1, 0, 0]), samples=100)
    assert corner_unit_check(make_ring(("Zmod", 6)).element(3))
    assert corner_unit_check(Idempotent(make_ring(("Fp", 2, 2)).element([[1, 1], [0, 0]])))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**64 - 1))
def test_constrained_shapes_hold(seed):
    for spec in [("Q", 4), ("Fp", 3, 3)]:
        for shape in ("lower-triangular", "upper-triangular", "corner-confined", "commuting"):
            p, q = gen_constrained_pair(GeneratorConfig(make_ring(spec), shape=shape), SplitMix64(seed))
            b = decompose(q, p)
            P, Q = p.value, q.value
            if shape == "lower-triangular":
                assert b.q2.is_zero
            elif shape == "upper-triangular":
                assert b.q3.is_zero
            elif shape == "corner-confined":
                assert assumption_profile(Q, P).corner_confined
            else:
                assert P * Q == Q * P
