from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adelic_qft.adeles import Adele, Idele, c_X, res_x_pairing
from adelic_qft.fock import (ChargedFockVector, DualVector, FockVector, LocalSplitting,
                             _exp_annihilation, _LocalAdele, charged_act, contragradient_act, drx_act,
                             dual_pairing, dual_pairing_permanent, exp_annihilation_substitution,
                             heisenberg_act, monomial, rx_act, rx_shifts, shift)
from adelic_qft.laurent import LaurentSeries, series_from
from adelic_qft.p1 import INF, Divisor, RationalFunction
from adelic_qft.parsing import parse_state
from adelic_qft.symbols import MultiplicativeFunction, local_decomposition, weil_global

z = RationalFunction.z()
VAC = FockVector.vacuum()


def local(P, series):
    return Adele({P: series})


def test_heisenberg_examples(model):
    u = local(0, LaurentSeries.monomial(1, -1))
    v = local(0, LaurentSeries.monomial(-1, -1))
    assert heisenberg_act(u, FockVector.from_monomial((0, 1)), model) == VAC
    assert heisenberg_act(v, VAC, model) == FockVector.from_monomial((0, 1))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_oscillator_relation(model, m):
    x = local(0, LaurentSeries.monomial(m))
    y = local(0, LaurentSeries.monomial(-m))
    w = parse_state("v[0,1]*v[0,3] + 2*v[0,2]*v[0,2] - v[0,1]*v[0,1]")
    lhs = heisenberg_act(x, heisenberg_act(y, w, model), model) \
        - heisenberg_act(y, heisenberg_act(x, w, model), model)
    assert lhs == w.scale(m)


def test_commutator_is_cocycle(model):
    x = Adele({0: series_from([1, 2, 3, 4, 5, 6, 1, 2, 3, 4], -3),
               1: series_from([F(1, 2), -1, 7, 1, 1, 1, 1, 2, 2, 2], -2)})
    y = Adele({0: series_from([2, -1, 3, 1, 1, 1, 1, 1, 3, 3], -2),
               1: series_from([5, 1, -3, 1, 1, 1, 1, 4, 4, 4], -3)})
    v = parse_state("v[0,1]*v[0,2]*v[1,3] + 2/3*v[1,1]*v[1,1] - v[0,3]")
    lhs = heisenberg_act(x, heisenberg_act(y, v, model), model) \
        - heisenberg_act(y, heisenberg_act(x, v, model), model)
    assert c_X(x, y) != 0
    assert lhs == v.scale(c_X(x, y))


def test_global_functions_commute(model):
    x, y = Adele({}, model.lift(1 / z)), Adele({}, model.lift(z ** 2 / (z - 1)))
    v = parse_state("v[0,1]*v[1,2] + v[inf,1]")
    lhs = heisenberg_act(x, heisenberg_act(y, v, model), model) \
        - heisenberg_act(y, heisenberg_act(x, v, model), model)
    assert lhs.is_zero()


def test_dual_pairing_examples():
    g = (0, 1)
    assert dual_pairing(DualVector.from_monomial(g), FockVector.from_monomial(g)) == 1
    assert dual_pairing(DualVector.from_monomial(g), VAC) == 0
    assert dual_pairing(DualVector.from_monomial(g, g), FockVector.from_monomial(g, g)) == 2


gens = st.sampled_from([(0, 1), (0, 2), (1, 1), (INF, 1)])
monos = st.lists(gens, max_size=4).map(lambda gs: monomial(*gs))


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(monos, st.integers(-3, 3), max_size=3),
       st.dictionaries(monos, st.integers(-3, 3), max_size=3))
def test_dual_pairing_is_permanent(a, b):
    u, v = DualVector(a), FockVector(b)
    assert dual_pairing(u, v) == dual_pairing_permanent(u, v)


def test_adjointness(model):
    x = Adele({0: series_from([1, 2, 3, 4, 5, 6, 1, 2, 3, 4], -3),
               1: series_from([F(1, 2), -1, 7, 1, 1, 1, 1, 2, 2, 2], -2)})
    u = DualVector({monomial((0, 1), (0, 2), (1, 3)): 1, monomial((1, 1), (1, 1), (0, 1)): 3,
                    monomial((0, 3), (0, 3)): 2})
    labels = [(P, n) for P in (0, 1) for n in range(1, 5)]
    for v in (parse_state("v[0,1]*v[1,1] + 2*v[0,2]*v[0,3]*v[1,3]"),
              parse_state("v[0,1]*v[0,1]*v[1,2]*v[1,1]")):
        assert dual_pairing(contragradient_act(u, x, model, labels), v) \
            == dual_pairing(u, heisenberg_act(x, v, model))


def test_contragradient_contraction(model):
    v = local(0, LaurentSeries.monomial(-1, -1))
    out = contragradient_act(DualVector.from_monomial((0, 1)), v, model, [(0, 1)])
    assert out == DualVector.vacuum()


def test_charged_examples(model):
    D = Divisor({1: 1, 0: -1})
    w = ChargedFockVector.basis(D)
    out = charged_act(Adele({}, model.lift(z)), w, model)
    assert out == ChargedFockVector({(D, ()): -1, (D, monomial((INF, 1))): -1})
    const = Adele({}, model.lift(RationalFunction(7)))
    assert charged_act(const, parse_state("e[(0)-(1)]*v[0,1] + e[(2)-(inf)]"), model).is_zero()


def test_shift():
    w = parse_state("e[(0)-(1)]*v[0,1] + 3*e[0]*v[1,2]")
    assert shift(Divisor(), w) == w
    D1, D2 = Divisor({2: 1, 0: -1}), Divisor({INF: 1, 1: -1})
    assert shift(D1, shift(D2, w)) == shift(D1 + D2, w)
    with pytest.raises(ValueError):
        shift(Divisor({0: 1}), w)


def test_drx_agrees_with_charged(model):
    w = parse_state("e[(0)-(1)]*v[0,1]*v[2,1] + 3*e[0]*v[1,2]")
    for f in (1 / z, z ** 2, (z - 1) / (z + 2)):
        x = Adele({}, model.lift(f))
        assert drx_act(x, w, model) == charged_act(x, w, model)
    assert drx_act(Adele({}, model.lift(RationalFunction(0))), w, model, 5) == w.scale(5)


def test_rx_examples(model):
    f01 = MultiplicativeFunction.from_factors([(0, 1)])
    assert rx_act(f01, parse_state("e[0]"), model) == parse_state("-e[(0)-(1)]")
    assert rx_act(f01, parse_state("e[(1)-(0)]"), model) == parse_state("-e[0]")
    w = parse_state("e[(1)-(0)]*v[0,1]*v[2,1] + 3*e[0]*v[1,2]")
    assert rx_act(MultiplicativeFunction(F(5, 3)), w, model) == w


def test_rx_needs_degree_zero(model):
    with pytest.raises(ValueError):
        rx_act(Idele({0: LaurentSeries.monomial(1)}), parse_state("e[0]"), model)


def test_exp_annihilation_matches_substitution(model):
    a = MultiplicativeFunction.from_factors([(0, 1), (2, INF)], 3)
    pts = [0, 1, 2, INF]
    data = {P: local_decomposition(a.expand_at(P)) for P in pts}
    split = LocalSplitting(_LocalAdele({P: data[P][2] for P in pts}), model)
    v = parse_state("v[0,1]*v[0,2]*v[1,1] + v[2,3]*v[2,3] - 4*v[inf,2]")
    expected = exp_annihilation_substitution(rx_shifts(a, pts, 3, model), v)
    assert _exp_annihilation(split, v) == expected


def test_group_law_prime_products(model):
    a = MultiplicativeFunction.from_factors([(0, 1)])
    b = MultiplicativeFunction.from_factors([(2, INF)])
    w = ChargedFockVector({(Divisor({1: 1, 0: -1}), monomial((0, 1), (2, 1))): 1,
                           (Divisor(), monomial((1, 2),)): 3})
    assert rx_act(a, rx_act(b, w, model), model) == rx_act(a * b, w, model)


def test_group_law_local_ideles(model):
    # the cocycle tau_X(a, b) multiplies R(a)R(b): R(ab) = tau R(a) R(b)
    A = Idele({0: series_from([2] + [1] * 11, 1), 1: series_from([3, 0, 1] + [0] * 10, -1)})
    B = Idele({0: series_from([5, 1, 2] + [0] * 11, -1), 1: series_from([-1] + [1] * 10, 1)})
    w = ChargedFockVector({(Divisor({1: 1, 0: -1}), monomial((0, 1), (2, 1))): 1,
                           (Divisor(), monomial((1, 2),)): 3})
    tau = weil_global(A, B)[1]
    assert tau == F(-3, 10)
    ab = rx_act(A * B, w, model)
    a_b = rx_act(A, rx_act(B, w, model), model)
    assert ab == a_b.scale(tau)
    assert a_b != ab.scale(tau)


def test_adjoint_action(model):
    # R(g) dR(x) - dR(x) R(g) = Res_X(x, g) R(g)
    x_local = Adele({0: series_from([1, 2, 3, 4, 5, 6, 1, 2, 3, 4], -3),
                     1: series_from([F(1, 2), -1, 7, 1, 1, 1, 1, 2, 2, 2], -2)})
    A = Idele({0: series_from([2] + [1] * 11, 1), 1: series_from([3, 0, 1] + [0] * 10, -1)})
    f01 = MultiplicativeFunction.from_factors([(0, 1)])
    w = ChargedFockVector({(Divisor({1: 1, 0: -1}), monomial((0, 1), (2, 1))): 1,
                           (Divisor(), monomial((1, 2),)): 3})
    nonzero = 0
    for g in (f01, A):
        for x in (Adele({}, model.lift(1 / z)), x_local):
            r = res_x_pairing(x, g)
            nonzero += r != 0
            lhs = rx_act(g, drx_act(x, w, model), model) - drx_act(x, rx_act(g, w, model), model)
            assert lhs == rx_act(g, w, model).scale(r)
    assert nonzero
