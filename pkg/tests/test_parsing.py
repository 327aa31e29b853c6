from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adelic_qft.fock import ChargedFockVector, FockVector, monomial
from adelic_qft.p1 import INF, Divisor, RationalFunction
from adelic_qft.parsing import (ParseError, parse_divisor, parse_point, parse_points,
                                parse_product, parse_rational, parse_state)


def test_rational_examples():
    f = parse_rational("3*(z-1)^2*(z+3)^-1")
    assert f.factors == {1: 2, -3: -1}
    assert f == RationalFunction(3, {1: 2, -3: -1})
    assert parse_rational("z^2 - 1") == RationalFunction(1, {1: 1, -1: 1})
    assert parse_rational("1/(z*(z-1))") == RationalFunction(1, {0: -1, 1: -1})
    assert parse_rational("(z - 1/2)") == RationalFunction(1, {F(1, 2): 1})


def test_points_and_divisors():
    assert parse_point("inf") is INF
    assert parse_point("-3/4") == F(-3, 4)
    assert parse_points("0, 1, inf") == [0, 1, INF]
    assert parse_divisor("(0)-2*(1)+(inf)") == Divisor({0: 1, 1: -2, INF: 1})
    assert parse_divisor("0").is_zero()


def test_state_examples():
    v = parse_state("v[0,1]*v[1,1]")
    assert isinstance(v, FockVector)
    assert v == FockVector({monomial((0, 1), (1, 1)): 1})
    w = parse_state("2*e[(1)-(0)]*v[2,1] - e[0]")
    assert isinstance(w, ChargedFockVector)
    assert w.charges() == {Divisor({1: 1, 0: -1}), Divisor()}


def test_product_examples():
    m = parse_product("f[0,inf]")
    assert m.as_rational() == RationalFunction.z()
    m = parse_product("2*f[0,1]^2/f[1,inf]")
    assert m.constant == 2
    assert m.divisor() == Divisor({0: 2, 1: -3, INF: 1})


@pytest.mark.parametrize("text, pos", [
    ("3*(z-1", 6), ("z^", 2), ("1/0", 1), ("z + w", 4), ("", 0),
])
def test_rational_errors_are_positioned(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_rational(text)
    assert exc.value.pos == pos


@pytest.mark.parametrize("text", ["v[0,0]", "e[(0)]", "v[0,1]*", "f[0,1]"])
def test_state_errors(text):
    with pytest.raises(ParseError):
        parse_state(text)


def test_product_errors():
    with pytest.raises(ParseError):
        parse_product("f[1,1]")
    with pytest.raises(ParseError):
        parse_product("f[0,1]*g")


@st.composite
def functions(draw):
    scale = draw(st.fractions(min_value=-9, max_value=9, max_denominator=4).filter(bool))
    roots = st.fractions(min_value=-5, max_value=5, max_denominator=3)
    return RationalFunction(scale, draw(st.dictionaries(roots, st.integers(-3, 3), max_size=4)))


@settings(max_examples=100, deadline=None)
@given(functions())
def test_rational_round_trip(f):
    assert parse_rational(str(f)) == f


gens = st.tuples(st.sampled_from([F(0), F(1), F(-1, 2), INF]), st.integers(1, 3))


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.lists(gens, max_size=3).map(lambda g: monomial(*g)),
                       st.fractions(max_denominator=5).filter(bool), max_size=3))
def test_state_round_trip(terms):
    v = FockVector(terms)
    if v.is_zero():
        return
    assert parse_state(str(v)) == v
    w = v.charged(Divisor({0: 1, INF: -1}))
    assert parse_state(str(w)) == w
