import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from babyverma.exactalg import (
    ONE,
    T,
    ZERO,
    LaurentPoly,
    NotDivisible,
    NotPolynomial,
    RatFunc,
    lp_arith,
    lp_exact_div,
    lp_reverse,
    poly_gcd,
    rf_sum,
)

from conftest import laurent_polys, nonzero_laurent_polys


def P(*coeffs, shift=0):
    return LaurentPoly.from_coeffs(coeffs, shift)


@pytest.mark.parametrize(
    "a, b, op, expected",
    [
        (P(1, 1), P(1, -1), "mul", P(1, 0, -1)),
        (LaurentPoly.monomial(-1), T, "mul", ONE),
        (P(1, 1, 1), P(1, -1), "mul", P(1, 0, 0, -1)),
        (P(1, 2), P(0, 2), "sub", ONE),
        (P(1, 2), P(0, -2), "add", ONE),
    ],
)
def test_lp_arith_examples(a, b, op, expected):
    assert lp_arith(a, b, op) == expected


def test_lp_arith_rejects_unknown_op():
    with pytest.raises(ValueError):
        lp_arith(ONE, ONE, "pow")


@pytest.mark.parametrize(
    "a, b, q",
    [(P(1, 0, 0, -1), P(1, -1), P(1, 1, 1)), (P(1, 0, -1), P(1, -1), P(1, 1))],
)
def test_exact_div_examples(a, b, q):
    assert lp_exact_div(a, b) == q


def test_exact_div_remainder():
    with pytest.raises(NotDivisible):
        lp_exact_div(P(1, 0, 1), P(1, 1))


def test_exact_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        lp_exact_div(ONE, ZERO)


def test_reverse_examples():
    assert lp_reverse(P(0, 1, 1)) == LaurentPoly({-1: 1, -2: 1})
    assert lp_reverse(LaurentPoly({0: 5})) == LaurentPoly({0: 5})


def test_zero_has_no_degree():
    assert ZERO.is_zero() and not ZERO.terms
    with pytest.raises(ValueError):
        ZERO.degree()
    with pytest.raises(ValueError):
        ZERO.valuation()


def test_no_zero_coefficients_stored():
    p = LaurentPoly({0: 1, 3: 0, -2: Fraction(0)})
    assert p.terms == {0: 1}
    assert (P(1, 1) - P(1, 1)).terms == {}


def test_str():
    assert str(LaurentPoly({-1: 1, 0: 2, 1: 1})) == "t^-1 + 2 + t"
    assert str(LaurentPoly({2: -3, 0: Fraction(1, 2)})) == "1/2 - 3*t^2"


@given(laurent_polys(), laurent_polys())
def test_json_round_trip(a, b):
    p = a * b + a
    blob = json.dumps(p.to_json())
    assert LaurentPoly.from_json(json.loads(blob)) == p
    assert all(isinstance(k, str) for k in p.to_json())


@given(laurent_polys(), nonzero_laurent_polys())
def test_exact_div_inverts_mul(a, b):
    assert lp_exact_div(lp_arith(a, b, "mul"), b) == a


@given(laurent_polys(), laurent_polys())
def test_reverse_is_multiplicative(a, b):
    assert lp_reverse(a * b) == lp_reverse(a) * lp_reverse(b)
    assert lp_reverse(lp_reverse(a)) == a


@given(laurent_polys(), laurent_polys(), st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool))
def test_evaluation_is_a_ring_map(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)
    assert (a - b)(1) == a(1) - b(1)


@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


def test_gcd_is_monic_common_factor():
    a = P(1, -1) * P(1, 1) * P(2, 3)
    b = P(1, -1) * P(1, 0, 1)
    assert poly_gcd(a, b) == P(-1, 1)


def test_ratfunc_examples():
    one_minus_t = P(1, -1)
    assert rf_sum([RatFunc(ONE, one_minus_t), RatFunc(-T, one_minus_t)]).to_poly() == ONE
    s = rf_sum([RatFunc(ONE, one_minus_t), RatFunc(ONE, P(1, 1))])
    assert s == RatFunc(LaurentPoly({0: 2}), P(1, 0, -1))
    assert s.den == P(1, 0, -1) and s.num == LaurentPoly({0: 2})


def test_to_poly_rejects_true_fractions():
    with pytest.raises(NotPolynomial):
        RatFunc(ONE, P(1, -1)).to_poly()
    # monomial denominators are units
    assert RatFunc(ONE, LaurentPoly({3: 2})).to_poly() == LaurentPoly({-3: Fraction(1, 2)})


@given(nonzero_laurent_polys(max_exp=3), nonzero_laurent_polys(max_exp=3), nonzero_laurent_polys(max_exp=3))
def test_ratfunc_canonical_form_is_unique(n, d, k):
    r1 = RatFunc(n, d)
    r2 = RatFunc(n * k, d * k)
    assert r1 == r2
    assert (r1.num, r1.den) == (r2.num, r2.den)
    assert r1.den.coeff(0) == 1 and r1.den.valuation() == 0


@given(st.lists(st.tuples(nonzero_laurent_polys(max_exp=3), nonzero_laurent_polys(max_exp=2)), max_size=5))
def test_rf_sum_matches_pairwise_addition(pairs):
    terms = [RatFunc(a, b) for a, b in pairs]
    total = RatFunc(ZERO)
    for term in terms:
        total = RatFunc(total.num * term.den + term.num * total.den, total.den * term.den)
    assert rf_sum(terms) == total
