"""Rational functions on the projective line over Q, kept in factored form.

Points are exact rationals or :data:`INF`.  The uniformizer is ``t = z - P`` at a
finite point and ``t = 1/z`` at infinity, where ``dz = -t^-2 dt``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Optional, Tuple, Union

from .laurent import LaurentSeries, as_rat, default_window, residue


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

Point = Union[Fraction, _Infinity]


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at one of its poles."""


class IrreducibleFactorError(ValueError):
    """A polynomial has an irreducible factor of degree > 1 over Q."""


def as_point(x) -> Point:
    if x is INF:
        return INF
    if isinstance(x, str) and x.strip().lower() in ("inf", "oo", "infinity", "∞"):
        return INF
    return as_rat(x)


def point_key(P) -> Tuple[int, Fraction]:
    """Total order on points: finite by value, infinity last."""
    return (1, Fraction(0)) if P is INF else (0, P)


def sorted_points(points: Iterable) -> list:
    return sorted(set(points), key=point_key)


def format_point(P) -> str:
    return "inf" if P is INF else str(P)


# --- divisors ---------------------------------------------------------------


class Divisor:
    """Finite formal sum of points with integer coefficients."""

    __slots__ = ("_items", "_hash")

    def __init__(self, coefficients: Optional[dict] = None):
        acc: Dict = {}
        for P, n in (coefficients or {}).items():
            P = as_point(P)
            acc[P] = acc.get(P, 0) + int(n)
        self._items = tuple(sorted(((P, n) for P, n in acc.items() if n), key=lambda i: point_key(i[0])))
        self._hash = hash(self._items)

    @classmethod
    def point(cls, P, n: int = 1) -> "Divisor":
        return cls({P: n})

    def __getitem__(self, P) -> int:
        P = as_point(P)
        for Q, n in self._items:
            if Q == P and (Q is INF) == (P is INF):
                return n
        return 0

    v = __getitem__

    def items(self):
        return self._items

    @property
    def support(self) -> list:
        return [P for P, _ in self._items]

    @property
    def degree(self) -> int:
        return sum(n for _, n in self._items)

    def is_zero(self) -> bool:
        return not self._items

    def __add__(self, other: "Divisor") -> "Divisor":
        acc = dict(self._items)
        for P, n in other._items:
            acc[P] = acc.get(P, 0) + n
        return Divisor(acc)

    def __neg__(self):
        return Divisor({P: -n for P, n in self._items})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return Divisor({P: k * n for P, n in self._items})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return _divisor_key(self) < _divisor_key(other)

    def __repr__(self):
        return f"Divisor({self})"

    def __str__(self):
        if not self._items:
            return "0"
        out = []
        for P, n in self._items:
            sign = "-" if n < 0 else "+"
            mag = abs(n)
            term = f"({format_point(P)})" if mag == 1 else f"{mag}*({format_point(P)})"
            out.append((sign, term))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, term in out[1:]:
            s += f"{sign}{term}"
        return s


def _divisor_key(D: Divisor):
    return tuple((point_key(P), n) for P, n in D.items())


# --- rational functions -----------------------------------------------------


def _binomial_series(m: int, c: Fraction, length: int) -> list:
    """Coefficients of ``(1 + c t)^m`` up to ``t^(length-1)``."""
    out = []
    for k in range(length):
        if m >= 0:
            b = comb(m, k) if k <= m else 0
        else:
            # generalized binomial: (-1)^k C(k-m-1, k)
            b = (-1) ** k * comb(k - m - 1, k)
        out.append(Fraction(b) * c ** k)
    return out


class RationalFunction:
    """``scale * prod (z - root)^mult`` with rational roots."""

    __slots__ = ("scale", "_factors", "_hash")

    def __init__(self, scale=1, factors: Optional[dict] = None):
        self.scale = as_rat(scale)
        acc: Dict[Fraction, int] = {}
        if self.scale != 0:
            for r, m in (factors or {}).items():
                r = as_rat(r)
                acc[r] = acc.get(r, 0) + int(m)
        self._factors = tuple(sorted((r, m) for r, m in acc.items() if m))
        self._hash = hash((self.scale, self._factors))

    # constructors

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls(c)

    @classmethod
    def z(cls) -> "RationalFunction":
        return cls(1, {0: 1})

    @classmethod
    def linear(cls, root) -> "RationalFunction":
        """``z - root``."""
        return cls(1, {root: 1})

    @classmethod
    def from_polynomials(cls, numerator, denominator=(1,)) -> "RationalFunction":
        """Factor ``num/den`` (coefficient lists, constant term first) over Q.

        Raises :class:`IrreducibleFactorError` when a factor of degree > 1
        has no rational root.
        """
        ns, nf = _factor_over_q([as_rat(c) for c in numerator])
        ds, df = _factor_over_q([as_rat(c) for c in denominator])
        if ds == 0:
            raise ZeroDivisionError("zero denominator")
        acc = dict(nf)
        for r, m in df.items():
            acc[r] = acc.get(r, 0) - m
        return cls(ns / ds, acc)

    # accessors

    @property
    def factors(self) -> dict:
        return dict(self._factors)

    def is_zero(self) -> bool:
        return self.scale == 0

    def is_constant(self) -> bool:
        return not self._factors

    def valuation(self, P) -> int:
        P = as_point(P)
        if self.is_zero():
            raise ValueError("valuation of the zero function")
        if P is INF:
            return -sum(m for _, m in self._factors)
        return dict(self._factors).get(P, 0)

    def poles(self) -> list:
        """Points where the function has a pole, infinity included."""
        if self.is_zero():
            return []
        out = [r for r, m in self._factors if m < 0]
        if self.valuation(INF) < 0:
            out.append(INF)
        return out

    def divisor(self) -> Divisor:
        return rf_divisor(self)

    # arithmetic

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.scale * other, self.factors)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        acc = self.factors
        for r, m in other._factors:
            acc[r] = acc.get(r, 0) + m
        return RationalFunction(self.scale * other.scale, acc)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        return RationalFunction(1 / self.scale, {r: -m for r, m in self._factors})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.scale / other, self.factors)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * as_rat(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.scale ** k, {r: m * k for r, m in self._factors})

    def __neg__(self):
        return RationalFunction(-self.scale, self.factors)

    def polynomials(self) -> Tuple[list, list]:
        """Numerator and denominator coefficient lists (constant term first)."""
        num = [self.scale]
        den = [Fraction(1)]
        for r, m in self._factors:
            for _ in range(abs(m)):
                if m > 0:
                    num = _poly_mul(num, [-r, Fraction(1)])
                else:
                    den = _poly_mul(den, [-r, Fraction(1)])
        return num, den

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        n1, d1 = self.polynomials()
        n2, d2 = other.polynomials()
        num = _poly_add(_poly_mul(n1, d2), _poly_mul(n2, d1))
        return RationalFunction.from_polynomials(num, _poly_mul(d1, d2))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalFunction) else -as_rat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __call__(self, x) -> Fraction:
        """Exact value at a point; the value at infinity is the limit."""
        x = as_point(x)
        if self.is_zero():
            return Fraction(0)
        if x is INF:
            v = self.valuation(INF)
            if v < 0:
                raise PoleError("pole at inf")
            return self.scale if v == 0 else Fraction(0)
        out = self.scale
        for r, m in self._factors:
            base = x - r
            if base == 0:
                if m < 0:
                    raise PoleError(f"pole at {x}")
                return Fraction(0)
            out *= base ** m
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction(other)
        return isinstance(other, RationalFunction) and (self.scale, self._factors) == (
            other.scale, other._factors)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return format_rational_function(self)

    def expand_at(self, P, order: Optional[int] = None) -> LaurentSeries:
        return rf_expand_at(self, P, order)


def format_rational_function(f: RationalFunction) -> str:
    """Canonical factored form, e.g. ``3*(z-1)^2*(z+3)^-1``."""
    if f.is_zero():
        return "0"
    parts = []
    for r, m in f._factors:
        if r == 0:
            base = "z"
        elif r > 0:
            base = f"(z-{r})"
        else:
            base = f"(z+{-r})"
        parts.append(base if m == 1 else f"{base}^{m}")
    if not parts:
        return str(f.scale)
    body = "*".join(parts)
    if f.scale == 1:
        return body
    if f.scale == -1:
        return "-" + body
    return f"{f.scale}*{body}"


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _divisors(n: int) -> list:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            out.append(n // i)
        i += 1
    return sorted(set(out))


def _factor_over_q(coeffs: list) -> Tuple[Fraction, dict]:
    """Split a polynomial into its leading coefficient and rational roots."""
    p = _poly_trim(coeffs)
    if not p:
        return Fraction(0), {}
    roots: Dict[Fraction, int] = {}
    while len(p) > 1 and p[0] == 0:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        p = p[1:]
    lead = p[-1]
    while len(p) > 1:
        # integer coefficients for the rational root test
        den = 1
        for c in p:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in p]
        found = None
        for q in _divisors(ints[-1]):
            for s in _divisors(ints[0]):
                for cand in (Fraction(s, q), Fraction(-s, q)):
                    if _poly_eval(p, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            raise IrreducibleFactorError(
                f"polynomial of degree {len(p) - 1} has no rational root")
        roots[found] = roots.get(found, 0) + 1
        p = _synthetic_div(p, found)
    return lead, roots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _poly_eval(p: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _synthetic_div(p: list, r: Fraction) -> list:
    # p has constant term first; divide by (z - r)
    n = len(p) - 1
    q = [Fraction(0)] * n
    acc = Fraction(0)
    for i in range(n, 0, -1):
        acc = acc * r + p[i]
        q[i - 1] = acc
    return q


# --- local expansions -------------------------------------------------------


def rf_expand_at(f: RationalFunction, P, order: Optional[int] = None) -> LaurentSeries:
    """Laurent expansion of ``f`` in the uniformizer at ``P``, known mod ``t^order``.

    The result is exact: it re-expands itself when more terms are needed.
    """
    P = as_point(P)
    if f.is_zero():
        N = default_window() if order is None else order
        return LaurentSeries.zero(N, exact=True)
    v = f.valuation(P)
    N = v + default_window() if order is None else order
    source = lambda n: rf_expand_at(f, P, n)  # noqa: E731
    if N <= v:
        return LaurentSeries._raw(N, (), N, source)
    length = N - v
    acc = [f.scale] + [Fraction(0)] * (length - 1)
    for r, m in f._factors:
        if P is INF:
            # z - r = t^-1 (1 - r t)
            if r == 0:
                continue
            series = _binomial_series(m, -r, length)
        else:
            if r == P:
                continue
            # z - r = (P - r)(1 + t/(P - r))
            base = P - r
            series = [c * base ** m for c in _binomial_series(m, 1 / base, length)]
        acc = _poly_mul(acc, series)[:length]
    return LaurentSeries._raw(v, acc, N, source)


def rf_divisor(f: RationalFunction) -> Divisor:
    if f.is_zero():
        raise ValueError("divisor of the zero function")
    d = dict(f._factors)
    d[INF] = f.valuation(INF)
    return Divisor(d)


@dataclass(frozen=True)
class GlobalDifferential:
    """``coefficient * dz``."""

    coefficient: RationalFunction

    def expand_at(self, P, order: Optional[int] = None) -> LaurentSeries:
        """The series ``s`` with ``omega = s dt`` at ``P``."""
        P = as_point(P)
        f = self.coefficient
        if P is not INF:
            return rf_expand_at(f, P, order)
        # dz = -t^-2 dt
        inner = None if order is None else order + 2
        return (-rf_expand_at(f, INF, inner)).shift(-2)

    def poles(self) -> list:
        f = self.coefficient
        if f.is_zero():
            return []
        pts = [r for r, m in f._factors if m < 0]
        if f.valuation(INF) - 2 < 0:
            pts.append(INF)
        return pts


def residue_at(omega: GlobalDifferential, P) -> Fraction:
    return residue(omega.expand_at(P, 0))


def local_residues(omega: GlobalDifferential) -> dict:
    return {P: residue_at(omega, P) for P in sorted_points(omega.poles())}


def residue_theorem_check(omega: GlobalDifferential) -> Fraction:
    """Sum of the local residues over the pole support; always 0."""
    return sum(local_residues(omega).values(), Fraction(0))


# --- genus-0 additive functions ----------------------------------------------


def eta(P, n: int) -> RationalFunction:
    """Additive function with a single pole of order ``n`` at ``P``."""
    P = as_point(P)
    if n < 1:
        raise ValueError("eta needs n >= 1")
    if P is INF:
        return RationalFunction(Fraction(-1, n), {0: n})
    return RationalFunction(Fraction(-1, n), {P: -n})


def u_gen(P, n: int) -> RationalFunction:
    """Dual (annihilation) basis element ``u_P^(n)``."""
    P = as_point(P)
    if n < 1:
        raise ValueError("u needs n >= 1")
    if P is INF:
        return RationalFunction(-1, {0: -n})
    return RationalFunction(-1, {P: n})


def partial_fractions(f: RationalFunction) -> Tuple[dict, Fraction]:
    """Coefficients ``c[(Q, j)]`` and constant with ``f = sum c eta_Q^(j) + const``."""
    coeffs: Dict = {}
    if f.is_zero():
        return coeffs, Fraction(0)
    for Q in f.poles():
        k = -f.valuation(Q)
        s = rf_expand_at(f, Q, 0)
        for j in range(1, k + 1):
            a = s.coeff(-j)
            if a:
                # eta_Q^(j) = -t^-j / j in the local uniformizer
                coeffs[(Q, j)] = -j * a
    # finite principal parts vanish at infinity; eta_inf has no constant term
    constant = rf_expand_at(f, INF, 1).coeff(0)
    return coeffs, constant


def evaluate_partial_fractions(coeffs: dict, constant, x) -> Fraction:
    total = as_rat(constant)
    for (Q, j), c in coeffs.items():
        total += c * eta(Q, j)(x)
    return total
