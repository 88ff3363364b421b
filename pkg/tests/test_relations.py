import random
from fractions import Fraction

import pytest

from pisotrel import tables
from pisotrel.polycore import IntPoly
from pisotrel.relations import (
    RelationType,
    RelationVerdict,
    _exact_verdict,
    index_sets,
    numeric_prefilter,
    precondition_check,
    test_relation as relation_verdict,
)

P = IntPoly.from_desc
R = RelationType
QUARTIC = P([1, -2, 0, 1, -1])
SIEGEL = P([1, 0, -1, -1])


def test_relation_type_metadata():
    assert [r.arity for r in R] == [3, 3, 4, 4, 4]
    assert R.from_name("paireq") is R.PAIR_EQ
    assert R.from_name("SUM4_ZERO") is R.SUM4_ZERO
    with pytest.raises(ValueError):
        R.from_name("nope")


def test_index_set_sizes():
    from math import comb
    d = 7
    assert len(index_sets(R.SUM3_ZERO, d)) == comb(d, 3)
    assert len(index_sets(R.EQ_SUM2, d)) == 3 * comb(d, 3)
    assert len(index_sets(R.PAIR_EQ, d)) == 3 * comb(d, 4)
    assert len(index_sets(R.EQ_SUM3, d)) == 4 * comb(d, 4)
    assert len(index_sets(R.SUM4_ZERO, d)) == comb(d, 4)
    for r in R:
        rows = index_sets(r, d)
        assert all(len(set(row)) == r.arity for row in rows.tolist())


def test_precondition_examples():
    assert precondition_check(QUARTIC)
    assert not precondition_check(P([1, 0, -2]))
    assert precondition_check(SIEGEL)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        RelationVerdict(R.PAIR_EQ, False, (1, 2, 3, 4))
    with pytest.raises(ValueError):
        RelationVerdict(R.PAIR_EQ, True, (1, 1, 3, 4))


def test_pair_relation_of_the_quartic():
    v = relation_verdict(QUARTIC, R.PAIR_EQ)
    assert v.holds
    # roots ordered by real part: 1.866, 0.5 +- 0.6i, -0.866
    assert v.witness == (1, 4, 2, 3)
    assert v.residual <= Fraction(1, 10**11)
    for r in (R.SUM3_ZERO, R.EQ_SUM2, R.EQ_SUM3, R.SUM4_ZERO):
        assert not relation_verdict(QUARTIC, r).holds


def test_siegel_sum_zero():
    v = relation_verdict(SIEGEL, R.SUM3_ZERO)
    assert v.holds and sorted(v.witness) == [1, 2, 3]
    assert not relation_verdict(P([1, -1, 0, -1]), R.SUM3_ZERO).holds
    assert not relation_verdict(P([1, -1, -1, 0, -1, 0, 1]), R.SUM3_ZERO).holds


def test_trace_zero_quartic_sums_to_zero():
    # any quartic with zero trace satisfies the four-term zero sum
    f = P([1, 0, 0, -1, -1])
    assert relation_verdict(f, R.SUM4_ZERO).holds
    (res,) = numeric_prefilter(f, [R.SUM4_ZERO])
    assert res.flagged


def test_relation_preconditions():
    with pytest.raises(ValueError):
        relation_verdict(P([1, 0, -2]), R.SUM3_ZERO)  # degree below arity
    with pytest.raises(ValueError):
        relation_verdict(P([1, 0, -5, 0, 4]), R.PAIR_EQ)  # f(x), f(-x) share roots
    with pytest.raises(ValueError):
        relation_verdict(P([2, 0, -1, -1]), R.SUM3_ZERO)


def test_prefilter_examples():
    (res,) = numeric_prefilter(QUARTIC, [R.PAIR_EQ])
    assert res.flagged and res.residual <= Fraction(4, 10**10)
    (res,) = numeric_prefilter(SIEGEL, [R.SUM3_ZERO])
    assert res.flagged
    (res,) = numeric_prefilter(P([1, -1, 0, -1]), [R.SUM3_ZERO])
    assert not res.flagged and float(res.residual) == pytest.approx(1.0)


def test_prefilter_skips_relations_above_degree():
    assert numeric_prefilter(SIEGEL, [R.PAIR_EQ]) == []


def test_near_miss_is_flagged_but_false():
    f = IntPoly.from_line(tables.NEAR_MISSES[0][0])
    (res,) = numeric_prefilter(f, [R.PAIR_EQ], root_eps=Fraction(1, 10**16))
    assert res.flagged
    assert float(res.residual) == pytest.approx(0.61690e-8, rel=5e-5)


@pytest.mark.parametrize("c", [-3, -1, 1, 2])
def test_pair_relation_is_translation_invariant(c):
    assert relation_verdict(QUARTIC.shift(c), R.PAIR_EQ).holds
    other = P([1, -1, -1, 0, -1, 0, 1])
    assert not relation_verdict(other.shift(c), R.PAIR_EQ).holds


def _corpus(three_term_report, small_four_term_report):
    out = []
    for rep, fam in ((three_term_report, "three"), (small_four_term_report, "four")):
        for recs in rep.families[fam].records.values():
            out.extend(r.poly for r in recs)
    return sorted(set(out))


def test_cross_check_coherence(three_term_report, small_four_term_report):
    corpus = _corpus(three_term_report, small_four_term_report)
    assert len(corpus) >= 100
    for f in corpus:
        # raises on any disagreement between the g and h formulations
        if f.degree >= 3:
            _exact_verdict(f, R.EQ_SUM2)
        if f.degree >= 4:
            _exact_verdict(f, R.PAIR_EQ)


def test_random_corpus_verdicts_are_false(small_four_term_report):
    recs = small_four_term_report.families["four"].records
    rng = random.Random(3)
    sample = rng.sample([r.poly for r in recs[5]], 5) + rng.sample([r.poly for r in recs[6]], 5)
    for f in sample:
        for r in R:
            assert not relation_verdict(f, r).holds, (f, r)


def test_prefilter_soundness_on_solutions(three_term_report, small_four_term_report):
    for rep, fam in ((three_term_report, "three"), (small_four_term_report, "four")):
        fr = rep.families[fam]
        for r, lst in fr.verdicts.items():
            for f, v in lst:
                if v.holds:
                    (res,) = numeric_prefilter(f, [r])
                    assert res.flagged
