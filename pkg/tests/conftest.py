from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from babyverma.exactalg import LaurentPoly

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def laurent_polys(draw, min_exp=-4, max_exp=5, max_terms=5):
    exps = draw(st.lists(st.integers(min_exp, max_exp), max_size=max_terms, unique=True))
    coeffs = draw(st.lists(small_rationals, min_size=len(exps), max_size=len(exps)))
    return LaurentPoly(dict(zip(exps, coeffs)))


@st.composite
def nonzero_laurent_polys(draw, **kw):
    p = draw(laurent_polys(**kw))
    if p.is_zero():
        p = LaurentPoly({draw(st.integers(-2, 2)): Fraction(draw(st.integers(1, 4)))})
    return p
