from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adelic_qft.expectation import (CoefficientTable, DegreeCapError, brute_force_matchings,
                                    corr_additive, corr_charged, corr_multiplicative,
                                    ward_additive, ward_multiplicative)
from adelic_qft.fock import ChargedFockVector, FockVector, monomial
from adelic_qft.model import P1Model
from adelic_qft.p1 import INF, Divisor, RationalFunction
from adelic_qft.parsing import parse_state
from adelic_qft.symbols import MultiplicativeFunction

z = RationalFunction.z()
points = [F(-1), F(0), F(1), F(2), INF]


def test_additive_examples(model):
    assert corr_additive(FockVector.vacuum(), model) == 1
    assert corr_additive(parse_state("v[0,1]"), model) == 0
    assert corr_additive(parse_state("v[0,1]*v[1,1]"), model) == 1
    assert corr_additive(parse_state("v[2,1]*v[2,3]"), model) == 0
    assert CoefficientTable(model).c2(0, 1, 1, 1) == -1


def test_charged_examples(model):
    for D in ("0", "(0)-(1)", "2*(inf)-(3)-(1/2)"):
        assert corr_charged(parse_state(f"e[{D}]"), model) == 1
    assert corr_charged(parse_state("e[(1)-(0)]*v[2,1]"), model) == F(1, 2)


def test_multiplicative_examples(model):
    table = CoefficientTable(model)
    assert corr_multiplicative(parse_state("e[0]"), model) == 1
    assert corr_multiplicative(parse_state("e[(1)-(0)]"), model) == -1
    assert table.h(0, 1, Divisor()) * table.cD(Divisor()) == -1


def test_degree_cap(model):
    mono = monomial(*[(0, 1), (1, 1)] * 4)
    w = FockVector({mono: 1})
    with pytest.raises(DegreeCapError):
        corr_additive(w, model, degree_cap=6)
    assert corr_additive(w, model, degree_cap=8) == brute_force_matchings(mono, CoefficientTable(model))


gens = st.sampled_from([(P, n) for P in points for n in (1, 2)])


@settings(max_examples=60, deadline=None)
@given(st.lists(gens, min_size=0, max_size=6))
def test_wick_against_brute_force(model, gs):
    mono = monomial(*gs)
    table = CoefficientTable(model)
    assert corr_additive(FockVector({mono: 1}), model, table) == brute_force_matchings(mono, table)


@settings(max_examples=40, deadline=None)
@given(st.lists(gens, max_size=4))
def test_charge_zero_reduces_to_additive(model, gs):
    v = FockVector({monomial(*gs): 1})
    assert corr_charged(v.charged(), model) == corr_additive(v, model)


charges = st.lists(st.sampled_from(points), min_size=2, max_size=4, unique=True).map(
    lambda ps: Divisor({p: (-1) ** i for i, p in enumerate(ps[: len(ps) // 2 * 2])}))


@settings(max_examples=60, deadline=None)
@given(charges, st.sampled_from(points), st.sampled_from(points))
def test_c_recurrence(model, D, P, Q):
    if P == Q:
        return
    table = CoefficientTable(model)
    assert table.cD(D + Divisor({Q: 1, P: -1})) == table.h(P, Q, D) * table.cD(D)


def test_ward_additive_examples(model):
    assert ward_additive(1 / z, parse_state("v[1,1]"), model) == 0
    assert ward_additive(RationalFunction(4), parse_state("v[0,1]*v[2,2]"), model) == 0
    f = (z - 1) / ((z + 1) * z ** 2)
    assert ward_additive(f, parse_state("e[(inf)-(0)]*v[1,1]*v[2,1] + v[0,2]"), model) == 0


def test_ward_multiplicative_examples(model):
    f01 = MultiplicativeFunction.from_factors([(0, 1)])
    assert ward_multiplicative(f01, parse_state("e[(1)-(0)]"), model) == (-1, -1)
    w = parse_state("e[(1)-(0)]*v[2,1] + e[(2)-(inf)]*v[0,1]*v[1,1]")
    lhs, rhs = ward_multiplicative(MultiplicativeFunction(F(-7, 2)), w, model)
    assert lhs == rhs


class _PositiveInfinityModel(P1Model):
    """The genus-0 model with c(inf, inf) replaced by +1."""

    def prime_const(self, P, Q):
        if P is INF and Q is INF:
            return F(1)
        return super().prime_const(P, Q)


def test_infinity_self_constant_forced():
    m = MultiplicativeFunction.from_factors([(0, INF)])
    w = ChargedFockVector.basis(Divisor({INF: 1, 0: -1}))
    assert ward_multiplicative(m, w, P1Model()) == (1, 1)
    lhs, rhs = ward_multiplicative(m, w, _PositiveInfinityModel())
    assert lhs != rhs
