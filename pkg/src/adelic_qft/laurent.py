"""Exact rational scalars and truncated formal Laurent series.

A :class:`LaurentSeries` is an element of ``Q((t))`` known modulo ``t**precision``.
Series produced by expanding a known rational function carry a *source*: a
callable that re-expands to any requested precision, so operations that run
out of terms extend transparently instead of truncating silently.  Series
without a source raise :class:`PrecisionError` instead.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

Rat = Fraction

_WINDOW = contextvars.ContextVar("laurent_window", default=24)


class PrecisionError(ArithmeticError):
    """A coefficient outside the guaranteed window was requested."""


def default_window() -> int:
    return _WINDOW.get()


def set_default_window(n: int) -> None:
    if n < 1:
        raise ValueError("window length must be positive")
    _WINDOW.set(n)


@contextlib.contextmanager
def window(n: int):
    """Temporarily change the default expansion window length."""
    token = _WINDOW.set(n)
    try:
        yield
    finally:
        _WINDOW.reset(token)


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


Source = Callable[[int], "LaurentSeries"]


class LaurentSeries:
    """Truncated Laurent series ``sum c_n t^n + O(t^precision)``."""

    __slots__ = ("_v", "_c", "precision", "_source")

    def __init__(self, coefficients=None, precision: int = 0, source: Optional[Source] = None):
        coefficients = coefficients or {}
        items = {int(k): as_rat(c) for k, c in coefficients.items()}
        items = {k: c for k, c in items.items() if c and k < precision}
        v = min(items, default=precision)
        top = max(items, default=v - 1)
        self._init(v, [items.get(n, Fraction(0)) for n in range(v, top + 1)], int(precision), source)

    def _init(self, v, coeffs, precision, source):
        coeffs = list(coeffs)[: max(0, precision - v)]
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        j = len(coeffs)
        while j > i and not coeffs[j - 1]:
            j -= 1
        self.precision = precision
        self._source = source
        if i == j:
            self._v, self._c = precision, ()
        else:
            self._v, self._c = v + i, tuple(coeffs[i:j])

    @classmethod
    def _raw(cls, v: int, coeffs, precision: int, source=None) -> "LaurentSeries":
        # coeffs[i] is the coefficient of t^(v+i); strips leading zeros
        s = object.__new__(cls)
        s._init(v, coeffs, precision, source)
        return s

    # construction helpers

    @classmethod
    def zero(cls, precision: int, exact: bool = False) -> "LaurentSeries":
        src = (lambda n: cls.zero(n, True)) if exact else None
        return cls._raw(precision, (), precision, src)

    @classmethod
    def monomial(cls, n: int, coefficient=1, precision: Optional[int] = None,
                 exact: bool = True) -> "LaurentSeries":
        """``coefficient * t**n``; exact by default since it is a polynomial."""
        c = as_rat(coefficient)
        if precision is None:
            precision = n + default_window()
        src = (lambda N: cls.monomial(n, c, N, True)) if exact else None
        return cls._raw(n, (c,), precision, src)

    @classmethod
    def constant(cls, c, precision: Optional[int] = None, exact: bool = True) -> "LaurentSeries":
        return cls.monomial(0, c, default_window() if precision is None else precision, exact)

    @classmethod
    def polynomial(cls, coefficients: dict, precision: Optional[int] = None) -> "LaurentSeries":
        """Exact Laurent polynomial from ``{exponent: coefficient}``."""
        coefficients = {int(k): as_rat(c) for k, c in coefficients.items() if c}
        top = max(coefficients, default=0)
        low = min(coefficients, default=0)
        if precision is None:
            precision = max(top + 1, low + default_window())

        def src(N):
            return cls.polynomial(coefficients, N)

        return cls(coefficients, precision, src)

    # basic accessors

    @property
    def valuation(self) -> int:
        return self._v

    @property
    def exact(self) -> bool:
        return self._source is not None

    @property
    def coefficients(self) -> dict:
        return {self._v + i: c for i, c in enumerate(self._c) if c}

    def is_zero(self) -> bool:
        return not self._c

    def leading_coefficient(self) -> Fraction:
        if not self._c:
            if self.exact:
                raise PrecisionError("leading coefficient of a zero series")
            raise PrecisionError("series vanishes on its window")
        return self._c[0]

    def extend(self, precision: int) -> "LaurentSeries":
        """Return an equal series known at least to ``precision``."""
        if precision <= self.precision:
            return self
        if self._source is None:
            raise PrecisionError(
                f"need precision {precision}, series only known to O(t^{self.precision})")
        s = self._source(precision)
        if s.precision < precision:
            raise PrecisionError(f"source could not reach precision {precision}")
        return s

    def truncate(self, precision: int) -> "LaurentSeries":
        if precision >= self.precision:
            return self
        return LaurentSeries._raw(self._v, self._c, precision, self._source)

    def coeff(self, n: int) -> Fraction:
        if n >= self.precision:
            return self.extend(n + 1).coeff(n)
        i = n - self._v
        if i < 0 or i >= len(self._c):
            return Fraction(0)
        return self._c[i]

    __getitem__ = coeff

    def __iter__(self):
        return iter(sorted(self.coefficients.items()))

    # arithmetic

    def _lift(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        return LaurentSeries.constant(as_rat(other), max(self.precision, 1))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "LaurentSeries":
        c = as_rat(c)
        if c == 0:
            return LaurentSeries.zero(self.precision, self.exact)
        src = None if self._source is None else (lambda N: self.extend(N).scale(c))
        return LaurentSeries._raw(self._v, (x * c for x in self._c), self.precision, src)

    def __add__(self, other):
        if not isinstance(other, (LaurentSeries, int, Fraction)):
            return NotImplemented
        b = self._lift(other)
        N = min(self.precision, b.precision)
        v = min(self._v, b._v)
        coeffs = [self.coeff(n) + b.coeff(n) for n in range(v, N)] if v < N else []
        return LaurentSeries._raw(v, coeffs, N, _lazy(lambda x, y: x + y, self, b))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (LaurentSeries, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        a, b = self, other
        N = min(a._v + b.precision, b._v + a.precision)
        v = a._v + b._v
        length = N - v
        coeffs = []
        ac, bc = a._c, b._c
        for k in range(max(0, length)):
            s = Fraction(0)
            for i in range(max(0, k - len(bc) + 1), min(k, len(ac) - 1) + 1):
                s += ac[i] * bc[k - i]
            coeffs.append(s)
        return LaurentSeries._raw(v, coeffs, N, _lazy(lambda x, y: x * y, a, b))

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse; the window length is preserved."""
        if not self._c:
            if self.exact:
                raise ZeroDivisionError("inverse of the zero series")
            raise PrecisionError("cannot invert a series that vanishes on its window")
        a0 = self._c[0]
        L = self.precision - self._v
        out = [Fraction(1) / a0]
        for k in range(1, L):
            s = Fraction(0)
            for i in range(1, min(k, len(self._c) - 1) + 1):
                s += self._c[i] * out[k - i]
            out.append(-s / a0)
        return LaurentSeries._raw(-self._v, out, -self._v + L, _lazy(lambda x: x.inverse(), self))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / as_rat(other))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * as_rat(other)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentSeries.constant(1, max(self.precision - self._v, 1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> "LaurentSeries":
        """Term-by-term derivative in ``t``; precision drops by one."""
        coeffs = {self._v + i - 1: c * (self._v + i) for i, c in enumerate(self._c)}
        src = None if self._source is None else (lambda N: self.extend(N + 1).derivative())
        return LaurentSeries(coeffs, self.precision - 1, src)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``t**k``."""
        src = None if self._source is None else (lambda N: self.extend(N - k).shift(k))
        return LaurentSeries._raw(self._v + k, self._c, self.precision + k, src)

    # comparison / display

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._lift(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.precision, self._v, self._c) == (other.precision, other._v, other._c)

    def __hash__(self):
        return hash((self.precision, self._v, self._c))

    def agrees_with(self, other: "LaurentSeries", precision: Optional[int] = None) -> bool:
        """Equality modulo ``t**precision`` (default: the common window)."""
        N = min(self.precision, other.precision) if precision is None else precision
        lo = min(self._v, other._v)
        return all(self.coeff(n) == other.coeff(n) for n in range(lo, N))

    def __repr__(self):
        return f"LaurentSeries({self})"

    def __str__(self):
        terms = []
        for n, c in sorted(self.coefficients.items()):
            if n == 0:
                terms.append(str(c))
            elif n == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{n}")
        terms.append(f"O(t^{self.precision})")
        return " + ".join(terms)


def _lazy(op, *inputs: LaurentSeries) -> Optional[Source]:
    """Source for ``op(*inputs)`` re-expanding every input with extra slack."""
    if not all(x.exact for x in inputs):
        return None

    def source(N: int) -> LaurentSeries:
        slack = 2
        last = None
        for _ in range(12):
            r = op(*(x.extend(N + slack) for x in inputs))
            if r.precision >= N:
                return r
            if last is not None and r.precision <= last:
                slack *= 2
            last = r.precision
            slack = 2 * slack + 2
        raise PrecisionError(f"could not reach precision {N}")

    return source


@dataclass(frozen=True)
class LocalDifferential:
    """``body * dt`` at a point; ``point`` is an opaque label."""

    body: LaurentSeries
    point: object = None

    def residue(self) -> Fraction:
        return residue(self)

    def __add__(self, other: "LocalDifferential") -> "LocalDifferential":
        return LocalDifferential(self.body + other.body, self.point)

    def __mul__(self, f) -> "LocalDifferential":
        return LocalDifferential(self.body * f, self.point)

    __rmul__ = __mul__


def residue(w) -> Fraction:
    """Coefficient of ``t^-1 dt``."""
    body = w.body if isinstance(w, LocalDifferential) else w
    if body.precision <= -1:
        if not body.exact:
            raise PrecisionError(
                f"residue needs the t^-1 coefficient; window ends at O(t^{body.precision})")
        body = body.extend(0)
    return body.coeff(-1)


def d(a: LaurentSeries, point=None) -> LocalDifferential:
    return LocalDifferential(a.derivative(), point)


def dlog(a: LaurentSeries, point=None) -> LocalDifferential:
    """``da / a``; the leading term is ``valuation(a) * t^-1 dt``."""
    if a.is_zero():
        raise ZeroDivisionError("logarithmic derivative of zero")
    return LocalDifferential(a.derivative() * a.inverse(), point)


def exp_series(a: LaurentSeries) -> LaurentSeries:
    """``exp(a)`` for ``valuation(a) >= 1``, via ``E' = a' E``."""
    if a.is_zero():
        return LaurentSeries.constant(1, a.precision, a.exact)
    if a.valuation < 1:
        raise ValueError("exp needs a series with positive valuation")
    N = a.precision
    e = [Fraction(1)]
    for n in range(1, N):
        s = Fraction(0)
        for k in range(1, n + 1):
            ak = a.coeff(k) if k < a.precision else Fraction(0)
            if ak:
                s += k * ak * e[n - k]
        e.append(s / n)
    return LaurentSeries._raw(0, e, N, _lazy(exp_series, a))


def log_unit(u: LaurentSeries) -> LaurentSeries:
    """``log(u)`` for a unit series with constant term 1."""
    if u.valuation != 0 or u.coeff(0) != 1:
        raise ValueError("log needs a unit series with constant term 1")
    N = u.precision
    w = u.derivative() * u.inverse()
    coeffs = {n + 1: w.coeff(n) / (n + 1) for n in range(0, N - 1)}
    return LaurentSeries(coeffs, N, _lazy(log_unit, u))


def series_from(coeffs: Iterable, valuation: int = 0, precision: Optional[int] = None) -> LaurentSeries:
    """Windowed (non-exact) series from a dense coefficient list."""
    coeffs = [as_rat(c) for c in coeffs]
    if precision is None:
        precision = valuation + len(coeffs)
    return LaurentSeries._raw(valuation, coeffs, precision)


def residue_pairing(a: LaurentSeries, b: LaurentSeries) -> Fraction:
    """``Res(a db)`` read off directly as ``sum_i -i a_i b_-i``."""
    if a.is_zero() and a.exact or b.is_zero() and b.exact:
        return Fraction(0)
    total = Fraction(0)
    for i in range(a.valuation, -b.valuation + 1):
        if i:
            ai = a.coeff(i)
            if ai:
                total -= i * ai * b.coeff(-i)
    return total
