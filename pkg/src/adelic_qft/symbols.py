"""Tame symbols, Weil reciprocity, and the genus-0 prime form.

The elementary multiplicative functions are ``f_PQ = e_P / e_Q``; on the
projective line they are the rational functions ``(z-P)/(z-Q)``, ``z-P``
(``Q = inf``) and ``1/(z-Q)`` (``P = inf``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .adeles import Idele
from .laurent import LaurentSeries, as_rat, default_window, log_unit, residue_pairing
from .p1 import (INF, Divisor, RationalFunction, as_point, point_key, rf_expand_at,
                 sorted_points)


# --- tame symbols -------------------------------------------------------------


def tame_local(f: LaurentSeries, g: LaurentSeries) -> Fraction:
    """``(-1)^(mn) f^n / g^m`` at ``t = 0`` with ``m = v(f)``, ``n = v(g)``.

    Only leading coefficients enter, so windowed inputs are fine as long as
    they are nonzero on their window.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroDivisionError("tame symbol of zero")
    m, n = f.valuation, g.valuation
    sign = -1 if (m * n) % 2 else 1
    return sign * f.leading_coefficient() ** n / g.leading_coefficient() ** m


def weil_global(f, g) -> tuple:
    """Local symbols over the joint divisor support, and their product."""
    Df, Dg = f.divisor(), g.divisor()
    pts = sorted_points(Df.support + Dg.support)
    local = {P: tame_local(_leading_window(f, P, Df[P]), _leading_window(g, P, Dg[P]))
             for P in pts}
    total = Fraction(1)
    for val in local.values():
        total *= val
    return local, total


tame_global = weil_global


def _leading_window(f, P, v: int) -> LaurentSeries:
    # the symbol only reads leading terms, so a short window suffices
    s = f.expand_at(P, v + 1)
    if s.is_zero() or s.valuation != v:
        s = f.expand_at(P)
    return s


# --- genus-0 prime form ----------------------------------------------------------


def p1_prime_const(P, Q) -> Fraction:
    """Genus-0 constants; ``c(inf, inf) = -1`` matches ``t = 1/z`` at infinity."""
    P, Q = as_point(P), as_point(Q)
    if P is INF:
        return Fraction(-1) if Q is INF else Fraction(1)
    if Q is INF:
        return Fraction(-1)
    if P == Q:
        return Fraction(1)
    return Q - P


def _e_component(P, Q) -> RationalFunction:
    """A rational function whose expansion at ``Q`` is ``e_{P,Q}``."""
    if P is INF:
        return RationalFunction(-1, {0: -1}) if Q is INF else RationalFunction(1)
    if Q is INF:
        # -(1 - P/z) = -(z - P)/z
        return RationalFunction(-1) * RationalFunction.linear(P) / RationalFunction.z()
    return RationalFunction.linear(P)


def p1_e_expansion(P, Q, order: Optional[int] = None) -> LaurentSeries:
    P, Q = as_point(P), as_point(Q)
    return rf_expand_at(_e_component(P, Q), Q, order)


def prime_form_idele(P) -> Idele:
    """``e_P``: ``z - P`` at finite points, corrected at infinity."""
    P = as_point(P)
    if P is INF:
        return Idele({INF: p1_e_expansion(INF, INF)}, RationalFunction(1))
    return Idele({INF: p1_e_expansion(P, INF)}, RationalFunction.linear(P))


def f_PQ(P, Q) -> Idele:
    P, Q = as_point(P), as_point(Q)
    if _same(P, Q):
        raise ValueError("f_PQ needs P != Q")
    return prime_form_idele(P) / prime_form_idele(Q)


def f_PQ_rational(P, Q) -> RationalFunction:
    """The rational function equal to ``f_PQ`` on the projective line."""
    P, Q = as_point(P), as_point(Q)
    if _same(P, Q):
        raise ValueError("f_PQ needs P != Q")
    factors = {}
    if P is not INF:
        factors[P] = 1
    if Q is not INF:
        factors[Q] = factors.get(Q, 0) - 1
    return RationalFunction(1, factors)


def _same(P, Q) -> bool:
    return (P is INF) == (Q is INF) and (P is INF or P == Q)


# --- multiplicative functions ---------------------------------------------------


class MultiplicativeFunction:
    """``constant * prod e_R^(n_R)`` with ``sum n_R = 0``.

    Equivalently a constant times a product of ``f_PQ`` factors.  Local
    expansions come from ``model.e_expansion``; without a model the genus-0
    prime form is used.
    """

    def __init__(self, constant=1, divisor: Optional[Divisor] = None, model=None):
        self.constant = as_rat(constant)
        if self.constant == 0:
            raise ZeroDivisionError("multiplicative function with zero constant")
        self._divisor = divisor if divisor is not None else Divisor()
        if self._divisor.degree != 0:
            raise ValueError("multiplicative function needs a degree-0 divisor")
        self.model = model

    @classmethod
    def from_factors(cls, factors, constant=1, model=None) -> "MultiplicativeFunction":
        """From ``[(P, Q, k), ...]`` meaning ``prod f_PQ^k``."""
        D = Divisor()
        for item in factors:
            P, Q = item[0], item[1]
            k = item[2] if len(item) > 2 else 1
            if _same(as_point(P), as_point(Q)):
                raise ValueError("f_PQ needs P != Q")
            D = D + Divisor({P: k}) - Divisor({Q: k})
        return cls(constant, D, model)

    def divisor(self) -> Divisor:
        return self._divisor

    def bind(self, model) -> "MultiplicativeFunction":
        return MultiplicativeFunction(self.constant, self._divisor, model)

    def _e(self, R, P, order):
        if self.model is None:
            return p1_e_expansion(R, P, order)
        return self.model.e_expansion(R, P, order)

    def expand_at(self, P, order: Optional[int] = None) -> LaurentSeries:
        P = as_point(P)
        s = LaurentSeries.constant(self.constant, default_window() if order is None else order)
        for R, n in self._divisor.items():
            e = self._e(R, P, None if order is None else order + abs(n) + 1)
            s = s * (e ** n)
        return s

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiplicativeFunction(self.constant * other, self._divisor, self.model)
        return MultiplicativeFunction(self.constant * other.constant,
                                      self._divisor + other._divisor, self.model)

    def inverse(self):
        return MultiplicativeFunction(1 / self.constant, -self._divisor, self.model)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k: int):
        return MultiplicativeFunction(self.constant ** k, self._divisor * k, self.model)

    def __eq__(self, other):
        return (isinstance(other, MultiplicativeFunction) and self.constant == other.constant
                and self._divisor == other._divisor)

    def __hash__(self):
        return hash((self.constant, self._divisor))

    def as_rational(self) -> RationalFunction:
        """Genus-0 only: the rational function this product equals."""
        f = RationalFunction(self.constant)
        for R, n in self._divisor.items():
            if R is not INF:
                f = f * RationalFunction(1, {R: n})
        return f

    def factors(self) -> list:
        """A canonical list of ``(P, Q)`` pairs with ``prod f_PQ`` of this divisor."""
        return _pair_divisor(self._divisor)

    def __repr__(self):
        return f"MultiplicativeFunction({self})"

    def __str__(self):
        parts = [f"f[{_fmt(P)},{_fmt(Q)}]" for P, Q in self.factors()]
        if self.constant != 1 or not parts:
            parts.insert(0, str(self.constant))
        return "*".join(parts)


def _fmt(P) -> str:
    return "inf" if P is INF else str(P)


def _pair_divisor(D: Divisor) -> list:
    zeros, poles = [], []
    for P, n in D.items():
        (zeros if n > 0 else poles).extend([P] * abs(n))
    if len(zeros) != len(poles):
        raise ValueError("divisor of nonzero degree cannot be factored into f_PQ")
    return list(zip(zeros, poles))


def factorize(f: RationalFunction) -> tuple:
    """``f = c * prod f_{Q_i R_i}`` with zeros and poles paired greedily."""
    if f.is_zero():
        raise ValueError("cannot factorize zero")
    pairs = _pair_divisor(f.divisor())
    rest = f
    for P, Q in pairs:
        rest = rest / f_PQ_rational(P, Q)
    if not rest.is_constant():
        raise ArithmeticError(f"factorization left a non-constant remainder {rest}")
    return rest.scale, pairs


def factorize_with_pairing(f: RationalFunction, pairs) -> Fraction:
    """Constant for an arbitrary zero/pole pairing; independent of the pairing."""
    rest = f
    for P, Q in pairs:
        rest = rest / f_PQ_rational(P, Q)
    if not rest.is_constant():
        raise ArithmeticError("pairing does not match the divisor")
    return rest.scale


# --- third-kind exponentials ---------------------------------------------------------


def _distinct(*pts) -> bool:
    keys = [point_key(as_point(P)) for P in pts]
    return len(set(keys)) == len(keys)


def exp_integral_3rd(P, Q, R, S, model=None) -> Fraction:
    """``f_RS(Q) / f_RS(P)`` from the prime-form constants."""
    P, Q, R, S = (as_point(x) for x in (P, Q, R, S))
    if not _distinct(P, Q, R, S):
        raise ValueError("exp_integral_3rd needs four distinct points")
    c = p1_prime_const if model is None else model.prime_const
    # f_RS(X) = e_R(X) / e_S(X) = c(R,X) / c(S,X) away from R and S
    return c(R, Q) * c(S, P) / (c(S, Q) * c(R, P))


def exchange_law_check(P, Q, R, S, model=None) -> tuple:
    left = exp_integral_3rd(R, S, P, Q, model)
    right = exp_integral_3rd(P, Q, R, S, model)
    return left, right, left == right


def generalized_weil_check(m1, m2) -> tuple:
    """``tau_X(m1, m2)`` for multiplicative functions; contract: value 1."""
    return weil_global(m1, m2)


# --- prime-Taylor decomposition ------------------------------------------------------


def local_decomposition(s: LaurentSeries) -> tuple:
    """Split ``s = alpha * t^v * unit`` and return ``(alpha, v, log(unit))``."""
    alpha = s.leading_coefficient()
    v = s.valuation
    unit = s.shift(-v).scale(1 / alpha)
    return alpha, v, log_unit(unit)


def prime_taylor(P, Q, R, order: int, model=None) -> tuple:
    """``(alpha, val, {n: a_n})`` with ``f_PQ = alpha t^val exp(sum a_n u_R^(n))`` at ``R``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    P, Q, R = as_point(P), as_point(Q), as_point(R)
    m = MultiplicativeFunction.from_factors([(P, Q)], model=model)
    s = m.expand_at(R, order + 2)
    alpha, val, phi = local_decomposition(s)
    coeffs = {}
    for n in range(1, order + 1):
        v = _v_expansion(model, R, n)
        # a_n = c(phi, v_R^(n)) = -Res(phi dv_R^(n))
        coeffs[n] = -residue_pairing(phi, v)
    return alpha, val, coeffs


def _v_expansion(model, R, n):
    if model is None:
        from .p1 import eta
        return rf_expand_at(eta(R, n), R)
    return model.v_expansion(R, n)


def prime_taylor_closed_form(P, Q, R, order: int, model) -> tuple:
    """The same decomposition from model constants alone."""
    P, Q, R = as_point(P), as_point(Q), as_point(R)
    ec = model.eta_const
    c = model.prime_const
    if _same(R, P):
        val = 1
        alpha = c(P, P) / c(Q, P)
        coeffs = {n: ec(P, n, Q) for n in range(1, order + 1)}
    elif _same(R, Q):
        val = -1
        alpha = c(P, Q) / c(Q, Q)
        coeffs = {n: -ec(Q, n, P) for n in range(1, order + 1)}
    else:
        val = 0
        alpha = c(P, R) / c(Q, R)
        coeffs = {n: ec(R, n, Q) - ec(R, n, P) for n in range(1, order + 1)}
    return alpha, val, coeffs
