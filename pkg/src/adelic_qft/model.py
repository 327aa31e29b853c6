"""Curve models: providers of additive functions, dual bases and prime-form data.

Everything downstream (Fock actions, expectation values) talks to a model only
through :class:`CurveModel`, so a tabulated copy of the genus-0 data must give
the same answers as the closed forms.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Iterable, Optional

from .laurent import LaurentSeries, PrecisionError, as_rat, default_window, residue_pairing
from .p1 import (INF, Divisor, RationalFunction, as_point, eta, format_point, partial_fractions,
                 point_key, rf_expand_at, sorted_points, u_gen)
from .symbols import MultiplicativeFunction, p1_e_expansion, p1_prime_const

PANEL = tuple(as_point(p) for p in (-2, -1, 0, 1, 2, 3)) + (INF,)


class ModelValidationError(ValueError):
    """A model violates one of the interface identities."""

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"model rejected: {head}{more}")


class CurveModel:
    """Interface; subclasses provide the expansions and constants."""

    genus = 0
    special_divisor = Divisor()
    points: Optional[tuple] = None
    max_order: Optional[int] = None
    name = "model"

    def eta_expansion(self, P, n: int, Q, order: Optional[int] = None) -> LaurentSeries:
        raise NotImplementedError

    def u_expansion(self, P, n: int, order: Optional[int] = None) -> LaurentSeries:
        raise NotImplementedError

    def prime_const(self, P, Q) -> Fraction:
        raise NotImplementedError

    def e_expansion(self, P, Q, order: Optional[int] = None) -> LaurentSeries:
        raise NotImplementedError

    def eta_const(self, P, n: int, Q) -> Fraction:
        """Constant term of ``eta_P^(n)`` at ``Q``; zero at ``Q = P`` by convention."""
        P, Q = as_point(P), as_point(Q)
        if _same(P, Q):
            return Fraction(0)
        return self.eta_expansion(P, n, Q, 1).coeff(0)

    def v_expansion(self, P, n: int, order: Optional[int] = None) -> LaurentSeries:
        return self.eta_expansion(P, n, P, order)

    # bound global objects

    def additive(self, coeffs: dict, constant=0) -> "AdditiveFunction":
        return AdditiveFunction(self, coeffs, constant)

    def lift(self, f: RationalFunction) -> "AdditiveFunction":
        """A rational function as ``sum c eta_Q^(j) + const`` on this model."""
        coeffs, const = partial_fractions(f)
        return AdditiveFunction(self, coeffs, const)

    def multiplicative(self, constant=1, divisor: Optional[Divisor] = None):
        return MultiplicativeFunction(constant, divisor, self)

    def prime_factor(self, P, Q):
        return MultiplicativeFunction.from_factors([(P, Q)], model=self)

    def validate(self, points: Optional[Iterable] = None, max_order: Optional[int] = None) -> list:
        return validate_model(self, points, max_order)


def _same(P, Q) -> bool:
    return (P is INF) == (Q is INF) and (P is INF or P == Q)


class AdditiveFunction:
    """``sum c_(Q,j) eta_Q^(j) + constant`` evaluated through a model."""

    def __init__(self, model: CurveModel, coeffs: dict, constant=0):
        self.model = model
        self.coeffs = {(as_point(Q), int(j)): as_rat(c) for (Q, j), c in coeffs.items() if c}
        self.constant = as_rat(constant)

    def poles(self) -> list:
        return sorted_points(Q for Q, _ in self.coeffs)

    def expand_at(self, P, order: Optional[int] = None) -> LaurentSeries:
        P = as_point(P)
        N = default_window() if order is None else order
        s = LaurentSeries.constant(self.constant, N)
        for (Q, j), c in sorted(self.coeffs.items(), key=_label_key):
            s = s + self.model.eta_expansion(Q, j, P, order).scale(c)
        return s

    def __add__(self, other):
        if isinstance(other, AdditiveFunction):
            acc = dict(self.coeffs)
            for k, c in other.coeffs.items():
                acc[k] = acc.get(k, 0) + c
            return AdditiveFunction(self.model, acc, self.constant + other.constant)
        return AdditiveFunction(self.model, self.coeffs, self.constant + as_rat(other))

    def __mul__(self, c):
        c = as_rat(c)
        return AdditiveFunction(self.model, {k: v * c for k, v in self.coeffs.items()},
                                self.constant * c)

    __rmul__ = __mul__

    def __repr__(self):
        return f"AdditiveFunction({self.coeffs}, {self.constant})"


def _label_key(item):
    (Q, j), _ = item
    return ((1, Fraction(0)) if Q is INF else (0, Q), j)


class P1Model(CurveModel):
    """The projective line with the closed-form genus-0 data."""

    name = "p1"

    def eta_expansion(self, P, n, Q, order=None):
        return rf_expand_at(eta(P, n), Q, order)

    def u_expansion(self, P, n, order=None):
        P = as_point(P)
        return rf_expand_at(u_gen(P, n), P, order)

    def prime_const(self, P, Q):
        return p1_prime_const(P, Q)

    def e_expansion(self, P, Q, order=None):
        return p1_e_expansion(P, Q, order)

    def eta_const(self, P, n, Q):
        P, Q = as_point(P), as_point(Q)
        if _same(P, Q) or Q is INF:
            # the expansion at P is exactly -t^-n/n; at infinity finite-point etas vanish
            # and eta_inf has no constant term
            return Fraction(0)
        return eta(P, n)(Q)


def p1_model() -> P1Model:
    return P1Model()


# --- tabulated models ---------------------------------------------------------


def _enc_series(s: LaurentSeries, length: int) -> dict:
    v = s.valuation if not s.is_zero() else s.precision
    return {"val": v, "coeffs": [str(s.coeff(k)) for k in range(v, v + length)]}


def _dec_series(obj) -> LaurentSeries:
    coeffs = [Fraction(c) for c in obj["coeffs"]]
    v = int(obj["val"])
    return LaurentSeries._raw(v, coeffs, v + len(coeffs))


def _key(P) -> str:
    return format_point(as_point(P))


def export_table(model: CurveModel, points=PANEL, max_order: int = 6, window: int = 24) -> dict:
    """Tabulate a model on a finite point panel."""
    points = sorted_points(as_point(p) for p in points)
    eta_t: Dict = {}
    const_t: Dict = {}
    u_t: Dict = {}
    e_t: Dict = {}
    c_t: Dict = {}
    for P in points:
        kp = _key(P)
        eta_t[kp], const_t[kp], u_t[kp], e_t[kp], c_t[kp] = {}, {}, {}, {}, {}
        for n in range(1, max_order + 1):
            eta_t[kp][str(n)] = {}
            const_t[kp][str(n)] = {}
            for Q in points:
                s = model.eta_expansion(P, n, Q)
                eta_t[kp][str(n)][_key(Q)] = _enc_series(s, window)
                const_t[kp][str(n)][_key(Q)] = str(model.eta_const(P, n, Q))
            u_t[kp][str(n)] = _enc_series(model.u_expansion(P, n), window)
        for Q in points:
            e_t[kp][_key(Q)] = _enc_series(model.e_expansion(P, Q), window)
            c_t[kp][_key(Q)] = str(model.prime_const(P, Q))
    return {
        "genus": model.genus,
        "special_divisor": {_key(P): n for P, n in model.special_divisor.items()},
        "points": [_key(P) for P in points],
        "precision": window,
        "max_order": max_order,
        "eta": eta_t,
        "eta_const": const_t,
        "u": u_t,
        "e": e_t,
        "c": c_t,
    }


class TabulatedModel(CurveModel):
    """A model read from tables; validated when constructed."""

    name = "tabulated"

    def __init__(self, data: dict, validate: bool = True):
        missing = [k for k in ("genus", "points", "precision", "eta", "eta_const", "c", "u", "e")
                   if k not in data]
        if missing:
            raise ModelValidationError([f"missing field {k!r}" for k in missing])
        self.genus = int(data["genus"])
        self.special_divisor = Divisor({as_point(P): int(n)
                                        for P, n in data.get("special_divisor", {}).items()})
        self.points = tuple(sorted_points(as_point(p) for p in data["points"]))
        self.precision = int(data["precision"])
        self.max_order = int(data.get("max_order", 0)) or None
        self._eta: Dict = {}
        self._const: Dict = {}
        self._u: Dict = {}
        self._e: Dict = {}
        self._c: Dict = {}
        problems = []

        def get(name, *keys):
            cur = data[name]
            for k in keys:
                if not isinstance(cur, dict) or k not in cur:
                    problems.append("missing entry " + "/".join((name,) + keys))
                    return None
                cur = cur[k]
            return cur

        orders = range(1, (self.max_order or 0) + 1)
        for P in self.points:
            kp = _key(P)
            for n in orders:
                obj = get("u", kp, str(n))
                if obj is not None:
                    self._u[(P, n)] = _dec_series(obj)
                for Q in self.points:
                    obj = get("eta", kp, str(n), _key(Q))
                    if obj is not None:
                        self._eta[(P, n, Q)] = _dec_series(obj)
                    val = get("eta_const", kp, str(n), _key(Q))
                    if val is not None:
                        self._const[(P, n, Q)] = Fraction(val)
            for Q in self.points:
                obj = get("e", kp, _key(Q))
                if obj is not None:
                    self._e[(P, Q)] = _dec_series(obj)
                val = get("c", kp, _key(Q))
                if val is not None:
                    self._c[(P, Q)] = Fraction(val)
        if problems:
            raise ModelValidationError(problems)
        if validate:
            violations = validate_model(self)
            if violations:
                raise ModelValidationError(violations)

    @classmethod
    def from_file(cls, path, validate: bool = True) -> "TabulatedModel":
        with open(path) as fh:
            return cls(json.load(fh), validate)

    def _lookup(self, table, key, what):
        try:
            return table[key]
        except KeyError:
            raise KeyError(f"{what} not tabulated for {tuple(map(str, key))}") from None

    @staticmethod
    def _fit(s: LaurentSeries, order):
        if order is None:
            return s
        if order > s.precision:
            raise PrecisionError(f"table window ends at O(t^{s.precision}), need {order}")
        return s.truncate(order)

    def eta_expansion(self, P, n, Q, order=None):
        key = (as_point(P), int(n), as_point(Q))
        return self._fit(self._lookup(self._eta, key, "eta"), order)

    def eta_const(self, P, n, Q):
        return self._lookup(self._const, (as_point(P), int(n), as_point(Q)), "eta_const")

    def u_expansion(self, P, n, order=None):
        return self._fit(self._lookup(self._u, (as_point(P), int(n)), "u"), order)

    def prime_const(self, P, Q):
        return self._lookup(self._c, (as_point(P), as_point(Q)), "c")

    def e_expansion(self, P, Q, order=None):
        return self._fit(self._lookup(self._e, (as_point(P), as_point(Q)), "e"), order)


def tabulated_model(source) -> TabulatedModel:
    """Load from a dict, a JSON string, or a file path."""
    if isinstance(source, dict):
        return TabulatedModel(source)
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return TabulatedModel(json.loads(source))
    return TabulatedModel.from_file(source)


def tabulated_p1_copy(points=PANEL, max_order: int = 6, window: int = 24) -> TabulatedModel:
    return TabulatedModel(export_table(P1Model(), points, max_order, window))


# --- validation -------------------------------------------------------------------


def validate_model(model: CurveModel, points=None, max_order=None) -> list:
    """Check the interface identities; returns the list of violations."""
    points = sorted_points(points if points is not None else (model.points or PANEL))
    N = max_order or model.max_order or 4
    out = []
    fmt = format_point
    if model.special_divisor.degree != model.genus:
        out.append(f"special divisor has degree {model.special_divisor.degree}, "
                   f"genus is {model.genus}")
    for P in points:
        for m in range(1, N + 1):
            u = model.u_expansion(P, m)
            for n in range(1, N + 1):
                val = -residue_pairing(u, model.v_expansion(P, n))
                if val != (1 if m == n else 0):
                    out.append(f"duality: -Res_{fmt(P)}(u^({m}) d v^({n})) = {val}")
    for i, P in enumerate(points):
        for Q in points[i:]:
            for m in range(1, N + 1):
                for n in range(1, N + 1):
                    lhs = residue_pairing(model.v_expansion(P, m), model.eta_expansion(Q, n, P))
                    rhs = residue_pairing(model.v_expansion(Q, n), model.eta_expansion(P, m, Q))
                    if _same(P, Q):
                        if lhs != 0:
                            out.append(f"reciprocity: Res_{fmt(P)}(eta_{fmt(P)}^({m}) "
                                       f"d eta_{fmt(P)}^({n})) = {lhs}, expected 0")
                    elif lhs != rhs:
                        out.append(f"reciprocity: Res_{fmt(P)}(eta_{fmt(P)}^({m}) d eta_{fmt(Q)}^({n}))"
                                   f" = {lhs} but Res_{fmt(Q)}(eta_{fmt(Q)}^({n}) d eta_{fmt(P)}^({m}))"
                                   f" = {rhs}")
    for P in points:
        for Q in points:
            c = model.prime_const(P, Q)
            if point_key(P) < point_key(Q) and c != -model.prime_const(Q, P):
                out.append(f"antisymmetry: c({fmt(P)},{fmt(Q)}) = {c}, "
                           f"c({fmt(Q)},{fmt(P)}) = {model.prime_const(Q, P)}")
            e = model.e_expansion(P, Q)
            want = 1 if _same(P, Q) else 0
            if e.is_zero() or e.valuation != want or e.leading_coefficient() != c:
                out.append(f"prime form: e_{fmt(P)} at {fmt(Q)} does not start with "
                           f"c({fmt(P)},{fmt(Q)}) t^{want}")
            for n in range(1, N + 1):
                k = model.eta_const(P, n, Q)
                s = model.eta_expansion(P, n, Q, 1)
                if _same(P, Q):
                    if k != 0 or s.coeff(0) != 0:
                        out.append(f"zero constant: eta_{fmt(P)}^({n}) at {fmt(P)} has "
                                   f"constant term {s.coeff(0)}")
                elif s.coeff(0) != k or s.valuation < 0:
                    out.append(f"eta_const({fmt(P)},{n},{fmt(Q)}) = {k} disagrees with the expansion")
    return out
