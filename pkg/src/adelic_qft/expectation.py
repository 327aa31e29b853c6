"""Expectation values: additive, charged and multiplicative, by Wick sums.

The Gaussian dual vectors are never built.  A monomial is paired with them by
summing over (partial) matchings of its generators, memoized on the remaining
sub-monomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Dict

from .adeles import Adele
from .fock import ChargedFockVector, FockVector, charged_act, heisenberg_act, rx_act
from .laurent import residue_pairing
from .p1 import Divisor, RationalFunction, as_point

DEGREE_CAP = 12


class DegreeCapError(ValueError):
    """A monomial exceeds the matching-enumeration degree cap."""


class CoefficientTable:
    """Memoized two-point, linear and charge-sector coefficients of a model."""

    def __init__(self, model):
        self.model = model
        self._c2: Dict = {}
        self._lin: Dict = {}
        self._cD: Dict = {}

    def c2(self, P, m: int, Q, n: int) -> Fraction:
        """``c^(mn)_PQ = -Res_Q(eta_P^(m) d eta_Q^(n))``."""
        key = (P, m, Q, n)
        if key not in self._c2:
            model = self.model
            self._c2[key] = -residue_pairing(model.eta_expansion(P, m, Q), model.v_expansion(Q, n))
        return self._c2[key]

    def lin(self, P, n: int, D: Divisor) -> Fraction:
        """``eta_P^(n)(D) = sum_Q v_Q(D) eta_P^(n)|_Q(0)``."""
        key = (P, n, D)
        if key not in self._lin:
            self._lin[key] = sum((k * self.model.eta_const(P, n, Q) for Q, k in D.items()),
                                 Fraction(0))
        return self._lin[key]

    def cD(self, D: Divisor) -> Fraction:
        """``prod_(i,j) c(R_i, R_j)^(n_i n_j)``, diagonal factors included."""
        if D not in self._cD:
            out = Fraction(1)
            items = D.items()
            for R, a in items:
                for S, b in items:
                    out *= self.model.prime_const(R, S) ** (a * b)
            self._cD[D] = out
        return self._cD[D]

    def h(self, P, Q, D: Divisor) -> Fraction:
        """Closed-form ratio ``c(D + Q - P) / c(D)``."""
        c = self.model.prime_const
        P, Q = as_point(P), as_point(Q)
        out = Fraction(-1 if (D[P] + D[Q]) % 2 else 1)
        for R, k in D.items():
            out *= (c(P, R) / c(Q, R)) ** (-2 * k)
        return out * c(P, P) * c(Q, Q) / (c(P, Q) * c(Q, P))


def _check_cap(mono, cap):
    if cap is not None and len(mono) > cap:
        raise DegreeCapError(f"monomial of degree {len(mono)} exceeds the degree cap {cap}")


def _wick(table: CoefficientTable, D, mono: tuple, charged: bool) -> Fraction:
    @lru_cache(maxsize=None)
    def rec(rest: tuple) -> Fraction:
        if not rest:
            return Fraction(1)
        (P, m), tail = rest[0], rest[1:]
        total = Fraction(0)
        if charged:
            w = table.lin(P, m, D)
            if w:
                total += w * rec(tail)
        for j, (Q, n) in enumerate(tail):
            w = table.c2(P, m, Q, n)
            if w:
                total -= w * rec(tail[:j] + tail[j + 1:])
        return total

    return rec(mono)


def corr_additive(v: FockVector, model, table=None, degree_cap=DEGREE_CAP) -> Fraction:
    """``<v>``: sum over perfect matchings with pair weight ``-c^(mn)_PQ``."""
    table = table or CoefficientTable(model)
    total = Fraction(0)
    for mono, c in v.terms.items():
        _check_cap(mono, degree_cap)
        if len(mono) % 2:
            continue
        total += c * _wick(table, None, mono, False)
    return total


def corr_charged(w: ChargedFockVector, model, table=None, degree_cap=DEGREE_CAP) -> Fraction:
    """Partial matchings; unmatched generators weigh ``eta_P^(n)(D)``."""
    table = table or CoefficientTable(model)
    if isinstance(w, FockVector):
        w = w.charged()
    total = Fraction(0)
    for (D, mono), c in w.terms.items():
        _check_cap(mono, degree_cap)
        total += c * _wick(table, D, mono, True)
    return total


def corr_multiplicative(w: ChargedFockVector, model, table=None,
                        degree_cap=DEGREE_CAP) -> Fraction:
    """Charged correlator with each sector weighted by ``c(D)``."""
    table = table or CoefficientTable(model)
    if isinstance(w, FockVector):
        w = w.charged()
    total = Fraction(0)
    for (D, mono), c in w.terms.items():
        _check_cap(mono, degree_cap)
        total += c * table.cD(D) * _wick(table, D, mono, True)
    return total


def brute_force_matchings(mono: tuple, table: CoefficientTable) -> Fraction:
    """Perfect-matching sum by enumerating all permutations (small degree only)."""
    k = len(mono)
    if k % 2:
        return Fraction(0)
    total = Fraction(0)
    for sigma in permutations(range(k)):
        term = Fraction(1)
        for i in range(0, k, 2):
            (P, m), (Q, n) = mono[sigma[i]], mono[sigma[i + 1]]
            term *= -table.c2(P, m, Q, n)
        total += term
    # each matching appears (k/2)! 2^(k/2) times
    return total / (factorial(k // 2) * 2 ** (k // 2))


# --- Ward identities ------------------------------------------------------------------


def _as_adele(f, model):
    if isinstance(f, Adele):
        return f
    if isinstance(f, RationalFunction):
        return Adele({}, model.lift(f))
    return Adele({}, f)


def ward_additive(f, v, model, table=None) -> Fraction:
    """``<f . v>`` for a global additive function ``f``; contract: 0."""
    x = _as_adele(f, model)
    table = table or CoefficientTable(model)
    if isinstance(v, ChargedFockVector):
        return corr_charged(charged_act(x, v, model), model, table)
    return corr_additive(heisenberg_act(x, v, model), model, table)


def ward_multiplicative(m, w: ChargedFockVector, model, table=None) -> tuple:
    """``(<R_X(m) w>, <w>)`` for a multiplicative function ``m``; contract: equal."""
    table = table or CoefficientTable(model)
    if isinstance(w, FockVector):
        w = w.charged()
    if getattr(m, "model", model) is None and hasattr(m, "bind"):
        m = m.bind(model)
    lhs = corr_multiplicative(rx_act(m, w, model), model, table)
    rhs = corr_multiplicative(w, model, table)
    return lhs, rhs
