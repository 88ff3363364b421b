from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pisotrel.polycore import (
    IntPoly,
    SquarefreePart,
    divides_in_Q,
    exact_div,
    gcd_primitive,
    max_multiplicity,
    relation_resultants,
    relation_resultants_sylvester,
    resultant,
    squarefree_decomposition,
)

P = IntPoly.from_desc
X = IntPoly.x()

coeff_lists = st.lists(st.integers(-6, 6), min_size=1, max_size=6)
polys = coeff_lists.map(IntPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


# -- canonical form and text format ---------------------------------------------

def test_canonical_form_strips_trailing_zeros():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([0, 0]).coeffs == ()
    assert IntPoly([]).degree == -1


def test_line_round_trip():
    f = P([1, -2, 0, 1, -1])
    assert f.to_line() == "1 -2 0 1 -1"
    assert IntPoly.from_line("1 -2 0 1 -1", degree=4) == f


@pytest.mark.parametrize("line", ["1 -2 0 0 1 -1", "1 -2 1", "1 x 0 1 -1", "1 -2 0.5 1 -1", "0 1 -2 0 1"])
def test_line_parser_rejects_malformed(line):
    with pytest.raises(ValueError):
        IntPoly.from_line(line, degree=4)


def test_str():
    assert str(P([1, -2, 0, 1, -1])) == "x^4 - 2*x^3 + x - 1"


# -- basic operations -------------------------------------------------------------

def test_negate_arg():
    assert P([1, 0, -1, -1]).negate_arg() == P([-1, 0, 1, -1])


def test_scale_half():
    assert P([1, -1, -1]).scale_half() == P([1, -2, -4])


def test_reciprocal():
    assert P([1, -2, 0, 1, -1]).reciprocal() == P([-1, 1, 0, -2, 1])


def test_derivative_and_eval():
    f = P([1, 0, -1, -1])
    assert f.derivative() == P([3, 0, -1])
    assert f(Fraction(1, 2)) == Fraction(-11, 8)
    assert f(2) == 5


@given(nonzero_polys.filter(lambda p: p.coeffs[0] != 0))
@settings(max_examples=150, deadline=None)
def test_reciprocal_and_negation_are_involutions(p):
    assert p.reciprocal().reciprocal() == p
    assert p.negate_arg().negate_arg() == p


@given(polys, polys, st.fractions(max_denominator=20))
@settings(max_examples=200, deadline=None)
def test_evaluation_homomorphism(a, b, q):
    assert (a * b)(q) == a(q) * b(q)
    assert (a + b)(q) == a(q) + b(q)
    assert (a - b)(q) == a(q) - b(q)


@given(nonzero_polys, st.integers(-5, 5))
@settings(max_examples=100, deadline=None)
def test_taylor_shift_matches_evaluation(p, c):
    s = p.shift(c)
    for t in range(-3, 4):
        assert s(t) == p(t + c)


# -- gcd and divisibility ------------------------------------------------------------

def test_gcd_examples():
    assert gcd_primitive(P([1, 0, -5, 0, 0]), P([1, 0, 0])) == P([1, 0, 0])
    assert gcd_primitive(P([1, -1, -1]), P([1, 1, -1])).degree == 0
    f = P([-2, 4, 6])
    assert gcd_primitive(f, f) == P([1, -2, -3])


def test_gcd_of_zeros_is_an_error():
    with pytest.raises(ValueError):
        gcd_primitive(IntPoly(), IntPoly())


def test_divides_examples():
    assert divides_in_Q(P([1, -1]), P([1, 0, -1]))
    assert not divides_in_Q(P([1, -1, -1]), P([1, -4, 1, 6, -4]))
    assert divides_in_Q(P([1, -1]), P([1, -1]) ** 2)
    with pytest.raises(ValueError):
        divides_in_Q(IntPoly(), X)


@given(nonzero_polys, nonzero_polys, nonzero_polys)
@settings(max_examples=150, deadline=None)
def test_gcd_properties(a, b, c):
    g = gcd_primitive(a * c, b * c)
    assert divides_in_Q(g, a * c) and divides_in_Q(g, b * c)
    # any common divisor, here c, divides the gcd
    assert divides_in_Q(c, g)
    assert g.lc > 0 and g.content() == 1


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=100, deadline=None)
def test_exact_division(a, b):
    assert exact_div(a * b, b) * b == a * b


# -- squarefree decomposition ------------------------------------------------------------

def test_squarefree_examples():
    assert squarefree_decomposition(P([1, -4, 1, 6, -4])) == [
        SquarefreePart(P([1, -2, -4]), 1),
        SquarefreePart(P([1, -1]), 2),
    ]
    assert squarefree_decomposition(P([1, 0, -5, 0, 0])) == [
        SquarefreePart(P([1, 0, -5]), 1),
        SquarefreePart(X, 2),
    ]
    assert squarefree_decomposition(P([1, 0, -1, -1])) == [SquarefreePart(P([1, 0, -1, -1]), 1)]
    with pytest.raises(ValueError):
        squarefree_decomposition(IntPoly())


def test_max_multiplicity_excluding_x():
    h = X ** 3 * P([1, 0, -5])
    assert max_multiplicity(h) == 3
    assert max_multiplicity(h, exclude_x=True) == 1


@given(st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=2, max_size=3), st.integers(1, 3)),
                min_size=1, max_size=3))
@settings(max_examples=120, deadline=None)
def test_squarefree_reconstructs_input(spec):
    a = IntPoly.const(1)
    for cs, m in spec:
        f = IntPoly(cs)
        if f.degree < 1:
            continue
        a = a * f ** m
    if a.degree < 1:
        return
    parts = squarefree_decomposition(a)
    prod = IntPoly.const(1)
    for part in parts:
        prod = prod * part.factor ** part.multiplicity
    # equal up to a rational constant
    assert prod.degree == a.degree
    assert prod.primitive() == a.primitive()
    mults = [p.multiplicity for p in parts]
    assert mults == sorted(set(mults))
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            assert gcd_primitive(parts[i].factor, parts[j].factor).degree == 0


# -- resultants ------------------------------------------------------------------------

def test_univariate_resultant():
    # Res(x^2 - 1, x - 2) = (2^2 - 1) = 3
    assert resultant(P([1, 0, -1]), P([1, -2])) == 3
    assert resultant(P([1, 0, 1]), P([1, 0, -1])) == 4


def test_relation_resultants_golden():
    g, h = relation_resultants(P([1, -1, -1]))
    assert g == P([1, -4, 1, 6, -4])
    assert h == P([1, 0, -5, 0, 0])


def test_relation_resultants_quartic_has_fourfold_one():
    g, _ = relation_resultants(P([1, -2, 0, 1, -1]))
    assert divides_in_Q(P([1, -1]) ** 4, g)


def test_relation_resultants_rejects_zero():
    with pytest.raises(ValueError):
        relation_resultants(IntPoly())


monic = st.lists(st.integers(-4, 4), min_size=1, max_size=4).map(lambda cs: IntPoly(cs + [1]))


@given(monic)
@settings(max_examples=100, deadline=None)
def test_evaluation_route_matches_sylvester_route(f):
    assert relation_resultants(f) == relation_resultants_sylvester(f)


@given(monic.filter(lambda f: f.coeffs[0] != 0))
@settings(max_examples=100, deadline=None)
def test_resultant_degrees_and_parity(f):
    d = f.degree
    g, h = relation_resultants(f)
    assert g.degree == h.degree == d * d
    assert divides_in_Q(X ** d, h)
    assert h.negate_arg() == h * (-1) ** d
