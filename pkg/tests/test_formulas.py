from fractions import Fraction

import pytest

from ginv import formulas as fm
from ginv.checker import GeneratorConfig, SplitMix64, gen_constrained_pair
from ginv.errors import AssumptionViolated, CornerViolation, HypothesisFailed, NoGroupInverse, NotInvertible
from ginv.group_inverse import ginv, group_inverse, is_group_inverse
from ginv.rings import diag, make_ring

Q1 = make_ring(("Q", 1))
Q2 = make_ring(("Q", 2))
Z6 = make_ring(("Zmod", 6))
HALF = Fraction(1, 2)


def m2(*rows):
    return Q2.element(rows)


P2 = m2([1, 0], [0, 0])
QH = m2([HALF, HALF], [HALF, HALF])  # (1/2)[[1,1],[1,1]]


def corpus(spec, shape="general", n=60, seed=5):
    cfg = GeneratorConfig(make_ring(spec), shape=shape)
    for i in range(n):
        p, q = gen_constrained_pair(cfg, SplitMix64.for_trial(seed, i))
        yield p.value, q.value


# -- anti-diagonal lemma

def test_antidiag_zero():
    out = fm.antidiag_group_inverse(Q2.zero(), Q2.zero(), P2)
    assert out.criterion and out.value.is_zero and out.ok


def test_antidiag_swap():
    out = fm.antidiag_group_inverse(m2([0, 1], [0, 0]), m2([0, 0], [1, 0]), P2)
    assert out.criterion and out.ok
    assert out.value == m2([0, 1], [1, 0])
    assert out.checks["both displayed forms agree"]


def test_antidiag_nilpotent():
    out = fm.antidiag_group_inverse(m2([0, 1], [0, 0]), Q2.zero(), P2)
    assert out.criterion is False and out.exists is False
    assert out.notes["criterion"]["(ab)^pi a = 0"] is False


def test_antidiag_corner_violation():
    with pytest.raises(CornerViolation):
        fm.antidiag_group_inverse(m2([1, 0], [0, 0]), Q2.zero(), P2)


# -- Cline and commuting products

def test_cline_examples():
    assert fm.cline_group(Q2.one(), Q2.one()).value == Q2.one()
    out = fm.cline_group(m2([1, 0], [0, 0]), m2([1, 1], [0, 0]))
    assert out.ok and out.value == m2([1, 1], [0, 0])
    out = fm.cline_group(Z6.element(2), Z6.element(2))
    assert out.ok and out.value == Z6.element(4)


def test_cline_needs_group_invertible():
    with pytest.raises(HypothesisFailed):
        fm.cline_group(m2([0, 1], [0, 0]), Q2.one())


def test_cline_exhaustive_z6():
    # every pair of residues, restricted to ab, ba group invertible (always, in Z/6)
    for a in Z6.elements():
        for b in Z6.elements():
            out = fm.cline_group(a, b, strict=False)
            assert out.hypotheses_hold and out.ok


def test_commuting_examples(q4):
    assert fm.commuting_product_identities(Q2.one(), Q2.one())
    a, b = diag(q4, [2, 0, 1, 0]), diag(q4, [3, 1, 0, 0])
    out = fm.commuting_outcome(a, b)
    assert out.ok and out.value == diag(q4, [Fraction(1, 6), 0, 0, 0])
    assert fm.commuting_product_identities(Z6.element(2), Z6.element(4))
    with pytest.raises(HypothesisFailed):
        fm.commuting_outcome(P2, QH)


# -- differences

def test_diff_examples(q4, example_pair):
    p, q = example_pair
    out = fm.diff_group_inverse(p, q)
    assert out.ok and out.value == diag(q4, [0, 1, -1, 0])
    out = fm.diff_group_inverse(p, p)
    assert out.ok and out.value.is_zero


def test_comp_diff_examples(q4, example_pair):
    p, q = example_pair
    out = fm.comp_diff_group_inverse(p, q)
    # pb - q = diag(-1, 0, 0, 1) is its own group inverse
    assert out.target == diag(q4, [-1, 0, 0, 1])
    assert out.ok and out.value == out.target
    one = q4.one()
    assert fm.comp_diff_group_inverse(p, one - p).value.is_zero
    assert fm.comp_diff_group_inverse(p, q4.zero()).value == one - p


def test_commutator_examples(example_pair):
    p, q = example_pair
    assert fm.commutator_group_inverse(p, q).value.is_zero
    assert fm.commutator_group_inverse(p, p).value.is_zero
    out = fm.commutator_group_inverse(P2, QH)
    assert out.ok and out.value == m2([0, -2], [2, 0])


@pytest.mark.parametrize("spec", [("Q", 4), ("Fp", 5, 4), ("Fp", 3, 3)])
def test_thm21_random(spec):
    for p, q in corpus(spec):
        for fn in (fm.diff_group_inverse, fm.comp_diff_group_inverse):
            out = fn(p, q)
            assert out.criterion == out.exists
            assert out.ok, out.problems()
        out = fm.commutator_group_inverse(p, q, strict=False)
        if out.hypotheses_hold:
            assert out.ok, out.problems()


def test_spectral_sums(q4, example_pair):
    p, q = example_pair
    out = fm.spectral_sum_outcome(p, q)
    assert out.ok and out.checks["(p-q)^pi = (p-q1)^pi + q4^pi"]
    assert fm.spectral_sum_decomposition(p, p)
    for p, q in corpus(("Fp", 5, 4)):
        out = fm.spectral_sum_outcome(p, q, strict=False)
        assert out.ok, out.problems()


# -- products

def test_products_examples(q4, example_pair):
    p, q = example_pair
    out = fm.product_group_invertibility(p, p, "pq")
    assert out.ok and out.value == p
    out = fm.product_group_invertibility(p, q, "pq")
    assert out.ok and out.value == diag(q4, [1, 0, 0, 0])
    for variant in ("pbq", "pqb", "pbqb"):
        assert fm.product_group_invertibility(p, q, variant).ok


def test_products_nilpotent_lower_triangular():
    # q2 = 0 and p q nilpotent: the criterion fails and so does existence
    q = m2([0, 0], [1, 1])
    out = fm.product_group_invertibility(P2, q, "pq")
    assert out.hypotheses_hold
    assert out.criterion is True  # pq = 0 here
    q = m2([0, 1], [0, 1])
    out = fm.product_group_invertibility(P2, q, "pq", strict=False)
    assert not out.hypotheses_hold
    assert out.criterion is False and out.exists is False


def test_products_bar_reading():
    # q = p + q3 with q2 = q4 = 0: pb q = q3 is nilpotent; the literal
    # criterion built from p says invertible, the pb reading does not
    q = m2([1, 0], [1, 0])
    out = fm.product_group_invertibility(P2, q, "pbq")
    assert out.hypotheses_hold
    assert out.exists is False
    assert out.criterion is False
    assert out.notes["literal"] is True


def test_products_assumption_violated():
    with pytest.raises(AssumptionViolated):
        fm.product_group_invertibility(P2, m2([1, 1], [0, 0]), "pq")


@pytest.mark.parametrize("shape", ["lower-triangular", "upper-triangular", "general"])
def test_products_random(shape):
    for p, q in corpus(("Fp", 3, 4), shape):
        for variant in ("pq", "pbq", "pqb", "pbqb"):
            out = fm.product_group_invertibility(p, q, variant, strict=False)
            if out.hypotheses_hold:
                assert out.agrees and out.ok, out.problems()


# -- Cao's triangular blocks

def test_cao_examples():
    i2 = Q2.one()
    out = fm.cao_triangular(i2, [[0, 0], [0, 0]], i2)
    assert out.ok and out.value == make_ring(("Q", 4)).one()
    out = fm.cao_triangular(Q1.one(), [[1]], Q1.zero())
    assert out.criterion and out.ok and out.value == m2([1, 1], [0, 0])
    out = fm.cao_triangular(Q1.zero(), [[1]], Q1.zero())
    assert out.criterion is False and out.exists is False


# -- commutator and anticommutator

def test_commutator_criterion_examples(example_pair):
    p, q = example_pair
    out = fm.commutator_criterion(p, q)
    assert out.criterion and out.exists and out.ok
    out = fm.commutator_criterion(P2, QH, strict=False)
    assert not out.hypotheses_hold
    assert out.criterion == out.exists is True
    assert out.ok


@pytest.mark.parametrize("spec", [("Q", 4), ("Fp", 3, 3), ("Fp", 2, 3)])
def test_commutator_criterion_unconditional(spec):
    # the block criterion is exact without any commuting hypothesis
    for p, q in corpus(spec, n=80):
        out = fm.commutator_criterion(p, q, strict=False)
        assert out.agrees and out.ok, out.problems()


def test_anticommutator(example_pair):
    p, q = example_pair
    assert fm.anticommutator_identity(p, q)
    assert fm.anticommutator_identity(p, p)
    for spec in [("Q", 3), ("Q", 5)]:
        for p, q in corpus(spec, n=100):
            assert fm.anticommutator_identity(p, q)


# -- f, g, h and the section on differences and sums

def test_fgh_example(q4, example_pair):
    p, q = example_pair
    t = fm.fgh(p, q)
    assert t.h == diag(q4, [0, 1, 1, 0])
    assert t.f == t.g == diag(q4, [0, 1, 0, 0])
    t = fm.fgh(p, q4.zero())
    assert t.f == t.g == t.h == p


def test_fgh_needs_group_inverse():
    p = m2([1, 0], [0, 0])
    q = m2([1, 1], [0, 0])  # p - q = [[0,-1],[0,0]] is nilpotent
    with pytest.raises(NoGroupInverse):
        fm.fgh(p, q)


def test_diff_sum_example(q4, example_pair):
    p, q = example_pair
    out = fm.diff_sum_formulas(p, q)
    assert out.ok
    assert out.value == diag(q4, [0, 1, -1, 0])
    assert p * out.notes["h"] == diag(q4, [0, 1, 0, 0])
    assert out.notes["x"] == diag(q4, [0, 1, 1, 0])
    assert out.notes["sum_inverse"] == diag(q4, [HALF, 1, 1, 0])
    assert out.notes["ph_is_p"] is False


def test_diff_sum_q_zero(q4, example_pair):
    p, _ = example_pair
    out = fm.diff_sum_formulas(p, q4.zero())
    assert out.ok and out.notes["ph_is_p"]
    assert out.checks["(p+q)# = (2g - h)(f + g - h)"]


@pytest.mark.parametrize("spec", [("Q", 4), ("Fp", 5, 4), ("Fp", 3, 3)])
@pytest.mark.parametrize("shape", ["general", "commuting"])
def test_section_four_random(spec, shape):
    for p, q in corpus(spec, shape, n=50):
        if not group_inverse(p - q).exists:
            continue
        for fn in (fm.fgh_outcome, fm.diff_sum_formulas, fm.pqp_family):
            out = fn(p, q)
            assert out.ok, (fn.__name__, out.problems())


def test_invertible_case_examples():
    p, q = m2([1, 0], [0, 0]), m2([0, 0], [0, 1])
    out = fm.invertible_case_outcome(p, q)
    assert out.ok and p * ginv(p - q) == p
    assert fm.invertible_case_identities(P2, QH)


def test_invertible_case_needs_invertible(example_pair):
    p, q = example_pair
    with pytest.raises(NotInvertible):
        fm.invertible_case_outcome(p, q)


def test_koliha_both_directions():
    seen = set()
    for spec in [("Q", 3), ("Q", 4), ("Fp", 3, 3)]:
        for p, q in corpus(spec, n=80):
            assert fm.koliha_equivalence(p, q)
            seen.add(fm.koliha_outcome(p, q).notes["p - q invertible"])
    assert seen == {True, False}


def test_pqp_family_examples(q4, example_pair):
    p, q = example_pair
    out = fm.pqp_family(p, q)
    assert out.target == diag(q4, [0, 1, 0, 0])
    assert out.value == diag(q4, [0, 1, 0, 0]) and out.ok
    out = fm.pqp_family(p, q4.zero())
    assert out.value == p and out.ok


def test_values_are_certified(example_pair):
    p, q = example_pair
    for name, fn in fm.PAIR_FORMULAS.items():
        out = fn(p, q, strict=False)
        if out.verified:
            assert is_group_inverse(out.target, out.value), name
