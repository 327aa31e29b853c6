"""Finitely supported adeles and ideles with a global tail.

A tail is any global object exposing ``expand_at(P, order)`` together with
``poles()`` (additive tails) or ``divisor()`` (multiplicative tails); plain
:class:`RationalFunction` values qualify for both.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional

from .laurent import LaurentSeries, dlog, residue, residue_pairing
from .p1 import Divisor, RationalFunction, as_point, point_key, sorted_points


class Adele:
    """Local Laurent series at listed points, the tail's expansion elsewhere."""

    def __init__(self, local_parts: Optional[dict] = None, tail=None):
        self.local_parts: Dict = {as_point(P): s for P, s in (local_parts or {}).items()}
        self.tail = RationalFunction(0) if tail is None else tail

    @classmethod
    def diagonal(cls, f) -> "Adele":
        return cls({}, f)

    def expand_at(self, P, order: Optional[int] = None) -> LaurentSeries:
        P = as_point(P)
        s = self.local_parts.get(P)
        if s is None:
            return self.tail.expand_at(P, order)
        if order is not None and order > s.precision:
            return s.extend(order)
        return s

    def singular_support(self) -> list:
        """Listed points plus the poles of the tail."""
        return sorted_points(list(self.local_parts) + list(self.tail.poles()))

    def __add__(self, other: "Adele") -> "Adele":
        pts = set(self.local_parts) | set(other.local_parts)
        parts = {P: self.expand_at(P) + other.expand_at(P) for P in pts}
        return Adele(parts, _add_tails(self.tail, other.tail))

    def scale(self, c) -> "Adele":
        parts = {P: s.scale(c) for P, s in self.local_parts.items()}
        return Adele(parts, _scale_tail(self.tail, c))

    def __neg__(self):
        return self.scale(-1)

    def __repr__(self):
        parts = ", ".join(f"{P}: {s}" for P, s in sorted(self.local_parts.items(),
                                                          key=lambda i: point_key(i[0])))
        return f"Adele({{{parts}}}, tail={self.tail})"


def _add_tails(a, b):
    if isinstance(a, RationalFunction) and a.is_zero():
        return b
    if isinstance(b, RationalFunction) and b.is_zero():
        return a
    return a + b


def _scale_tail(a, c):
    return a * Fraction(c)


class Idele:
    """Invertible local components at listed points, the tail elsewhere."""

    def __init__(self, local_units: Optional[dict] = None, tail=None):
        units = {as_point(P): s for P, s in (local_units or {}).items()}
        for P, s in units.items():
            if s.is_zero():
                raise ZeroDivisionError(f"idele component at {P} is zero")
        self.local_units = units
        self.tail = RationalFunction(1) if tail is None else tail
        if isinstance(self.tail, RationalFunction) and self.tail.is_zero():
            raise ZeroDivisionError("idele tail is zero")

    @classmethod
    def diagonal(cls, f) -> "Idele":
        return cls({}, f)

    def expand_at(self, P, order: Optional[int] = None) -> LaurentSeries:
        P = as_point(P)
        s = self.local_units.get(P)
        if s is None:
            return self.tail.expand_at(P, order)
        if order is not None and order > s.precision:
            return s.extend(order)
        return s

    def divisor(self) -> Divisor:
        return idele_divisor(self)

    def support(self) -> list:
        """Points where a component may fail to be a unit, plus listed points."""
        return sorted_points(list(self.local_units) + self.tail.divisor().support)

    def __mul__(self, other: "Idele") -> "Idele":
        pts = set(self.local_units) | set(other.local_units)
        units = {P: self.expand_at(P) * other.expand_at(P) for P in pts}
        return Idele(units, self.tail * other.tail)

    def inverse(self) -> "Idele":
        return Idele({P: s.inverse() for P, s in self.local_units.items()},
                     self.tail.inverse())

    def __truediv__(self, other: "Idele") -> "Idele":
        return self * other.inverse()

    def __repr__(self):
        parts = ", ".join(f"{P}: {s}" for P, s in sorted(self.local_units.items(),
                                                          key=lambda i: point_key(i[0])))
        return f"Idele({{{parts}}}, tail={self.tail})"


def idele_divisor(a) -> Divisor:
    """``sum v_P(a_P) P`` over all points."""
    if not isinstance(a, Idele):
        return a.divisor()
    d = {P: n for P, n in a.tail.divisor().items() if P not in a.local_units}
    for P, s in a.local_units.items():
        d[P] = s.valuation
    return Divisor(d)


def c_X(x: Adele, y: Adele) -> Fraction:
    """``-sum_P Res_P(x_P dy_P)`` over the joint singular support."""
    total = Fraction(0)
    for P in sorted_points(x.singular_support() + y.singular_support()):
        total -= residue_pairing(x.expand_at(P), y.expand_at(P))
    return total


def res_x_pairing(x: Adele, a) -> Fraction:
    """``sum_P Res_P(x_P dlog a_P)``."""
    pts = x.singular_support()
    if isinstance(a, Idele):
        pts += a.support()
    else:
        pts += a.divisor().support
    total = Fraction(0)
    for P in sorted_points(pts):
        xp = x.expand_at(P)
        if xp.is_zero() and xp.exact:
            continue
        total += residue(xp * dlog(a.expand_at(P)).body)
    return total
