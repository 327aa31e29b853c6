from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adelic_qft.laurent import LaurentSeries, series_from
from adelic_qft.p1 import INF, Divisor, RationalFunction
from adelic_qft.parsing import parse_rational
from adelic_qft.symbols import (MultiplicativeFunction, exchange_law_check, exp_integral_3rd,
                                f_PQ, factorize, generalized_weil_check, p1_prime_const,
                                prime_taylor, prime_taylor_closed_form, tame_local, weil_global)

z = RationalFunction.z()
t = LaurentSeries.monomial(1)
points = st.one_of(st.just(INF), st.integers(-3, 3).map(F))


@st.composite
def functions(draw):
    scale = draw(st.fractions(min_value=-9, max_value=9, max_denominator=4).filter(bool))
    factors = draw(st.dictionaries(st.integers(-4, 4).map(F), st.integers(-3, 3), max_size=4))
    return RationalFunction(scale, factors)


def test_tame_examples():
    assert tame_local(t, t) == -1
    assert tame_local(series_from([2, 1, 0], 0), series_from([3, 5, 1], 0)) == 1
    assert tame_local(t, LaurentSeries.polynomial({0: 1, 1: -1})) == 1
    # (-1)^(2*1) * (2t^2)^1 / (3t)^2 at t = 0
    assert tame_local(LaurentSeries.monomial(2, 2), LaurentSeries.monomial(1, 3)) == F(2, 9)


def test_weil_worked_instance():
    local, total = weil_global(z, z - 1)
    assert local == {0: -1, 1: 1, INF: -1}
    assert total == 1


def test_weil_constant():
    assert weil_global(RationalFunction(5), parse_rational("(z-1)/(z+2)"))[1] == 1


@settings(max_examples=100, deadline=None)
@given(functions(), functions())
def test_weil_property(f, g):
    assert weil_global(f, g)[1] == 1


def test_f_pq_examples():
    for P, Q, expected in [(1, -2, (z - 1) / (z + 2)), (INF, 3, 1 / (z - 3)), (0, INF, z)]:
        idele = f_PQ(P, Q)
        for R in (-2, 0, 1, 3, F(1, 2), INF):
            assert idele.expand_at(R, 8).agrees_with(expected.expand_at(R, 8), 8)
        assert idele.divisor() == Divisor({P: 1, Q: -1})
    with pytest.raises(ValueError):
        f_PQ(2, 2)


def test_prime_constants():
    assert p1_prime_const(0, 1) == 1
    assert p1_prime_const(1, 0) == -1
    assert p1_prime_const(2, 2) == 1
    assert p1_prime_const(INF, 3) == 1
    assert p1_prime_const(3, INF) == -1
    assert p1_prime_const(INF, INF) == -1


def test_factorize_examples():
    assert factorize(parse_rational("(z-1)/(z+2)")) == (1, [(1, -2)])
    assert factorize(3 * z) == (3, [(0, INF)])
    assert factorize(RationalFunction(5)) == (5, [])


@settings(max_examples=80, deadline=None)
@given(functions())
def test_factorize_round_trip(f):
    c, pairs = factorize(f)
    assert MultiplicativeFunction.from_factors(pairs, c).as_rational() == f


def test_exchange_examples():
    assert exp_integral_3rd(2, 3, 0, 1) == F(3, 4)
    assert exp_integral_3rd(0, 1, 2, 3) == F(3, 4)
    assert exp_integral_3rd(3, 2, 0, 1) == F(4, 3)
    left, right, ok = exchange_law_check(2, 3, 0, 1)
    assert ok and left == right
    with pytest.raises(ValueError):
        exp_integral_3rd(0, 0, 1, 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(points, min_size=4, max_size=4, unique_by=lambda P: str(P)))
def test_exchange_property(pts):
    assert exchange_law_check(*pts)[2]


def test_generalized_weil_examples():
    f01 = MultiplicativeFunction.from_factors([(0, 1)])
    for other in ([(2, 3)], [(0, 2)], [(0, 1)]):
        assert generalized_weil_check(f01, MultiplicativeFunction.from_factors(other))[1] == 1


def test_prime_taylor_examples(model):
    alpha, val, a = prime_taylor(0, 1, 2, 3, model)
    assert (alpha, val) == (2, 0)
    assert a[1] == F(1, 2) and a[2] == F(-3, 8)
    assert prime_taylor(0, 1, 0, 2, model)[:2] == (-1, 1)
    assert prime_taylor(0, 1, 1, 2, model)[:2] == (1, -1)
    with pytest.raises(ValueError):
        prime_taylor(0, 1, 2, 0, model)


@settings(max_examples=40, deadline=None)
@given(st.lists(points, min_size=3, max_size=3), st.integers(1, 4))
def test_prime_taylor_closed_form(model, pts, order):
    P, Q, R = pts
    if str(P) == str(Q):
        return
    assert prime_taylor(P, Q, R, order, model) == prime_taylor_closed_form(P, Q, R, order, model)


def test_multiplicative_algebra():
    a = MultiplicativeFunction.from_factors([(0, 1)], 2)
    b = MultiplicativeFunction.from_factors([(1, INF)])
    assert (a * b).as_rational() == a.as_rational() * b.as_rational()
    assert (a / a).as_rational() == RationalFunction(1)
    assert str(a) == "2*f[0,1]"
