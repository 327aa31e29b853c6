from fractions import Fraction as F

import pytest

from adelic_qft.adeles import Adele, Idele, c_X, idele_divisor, res_x_pairing
from adelic_qft.laurent import LaurentSeries, PrecisionError, series_from
from adelic_qft.p1 import INF, Divisor, RationalFunction
from adelic_qft.parsing import parse_rational
from adelic_qft.symbols import prime_form_idele

z = RationalFunction.z()


def test_c_x_rational_pairs_vanish():
    f, g = parse_rational("1/(z*(z-1))"), parse_rational("z^2+3*z+2")
    assert c_X(Adele.diagonal(f), Adele.diagonal(g)) == 0


def test_c_x_skew():
    x = Adele({0: series_from([1, 2, 3, 4, 5, 6, 7, 8], -3)})
    y = Adele({0: series_from([2, -1, 3, 1, 1, 1, 1], -2)})
    assert c_X(x, x) == 0
    assert c_X(x, y) == -c_X(y, x)


def test_c_x_short_window_raises():
    x = Adele({0: series_from([1, 2, 3], -3)})
    y = Adele({0: series_from([2, -1, 3, 1, 1, 1], -2)})
    with pytest.raises(PrecisionError):
        c_X(y, x)


def test_c_x_dual_generators():
    v = Adele({0: LaurentSeries.monomial(-1, -1)})
    u = Adele({0: LaurentSeries.monomial(1, -1)})
    assert c_X(v, u) == -1


def test_res_x_pairing_examples():
    assert res_x_pairing(Adele.diagonal(1 / z), Idele.diagonal(z - 1)) == 0
    assert res_x_pairing(Adele.diagonal(RationalFunction(0)), Idele.diagonal(z)) == 0
    f, g = parse_rational("(z+2)/(z-5)"), parse_rational("z^3/(z-1)^3")
    assert res_x_pairing(Adele.diagonal(f), Idele.diagonal(g)) == 0


def test_idele_divisors():
    f = parse_rational("(z-1)^2/(z+3)")
    assert idele_divisor(Idele.diagonal(f)) == f.divisor()
    unit = Idele({0: series_from([2, 1, 1], 0)})
    assert idele_divisor(unit).is_zero()
    for P in (0, F(3, 2), INF):
        assert idele_divisor(prime_form_idele(P)) == Divisor.point(P)


def test_idele_group():
    a = Idele({0: series_from([2, 1, 1, 1], 1)}, z - 1)
    b = Idele({0: series_from([5, 1, 2, 0], -1)})
    assert idele_divisor(a * b) == idele_divisor(a) + idele_divisor(b)
    assert idele_divisor(a / a).is_zero()
