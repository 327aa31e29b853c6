"""Text syntax for rational functions, points, divisors, states and prime products.

Grammar (whitespace ignored)::

    rational  := sum of products of powers over z, numbers, parentheses
                 e.g. 3*(z-1)^2*(z+3)^-1, 1/(z*(z-1)), z^2 - 1
    point     := rational number | inf
    divisor   := 0 | [k*](P) {(+|-) [k*](P)}
    state     := term {(+|-) term};  term := [coefficient*] factor {* factor}
                 factor := v[P,n] | e[divisor] | number
    product   := [coefficient*] f[P,Q][^k] {(*|/) f[P,Q][^k]}
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fock import ChargedFockVector, FockVector, monomial
from .p1 import INF, Divisor, IrreducibleFactorError, RationalFunction, as_point
from .symbols import MultiplicativeFunction


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text, self.pos = text, pos
        super().__init__(f"{message} at position {pos}: {text!r}")


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|(inf|oo|z)|(\S))")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                break
            if m.group(1):
                self.toks.append(("num", m.group(1), m.start(1)))
            elif m.group(2):
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3):
                self.toks.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def accept(self, value) -> bool:
        if self.peek()[1] == value and self.peek()[0] != "end":
            self.i += 1
            return True
        return False

    def expect(self, value):
        t = self.next()
        if t[1] != value or t[0] == "end":
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", self.text, t[2])
        return t

    def error(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def done(self):
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")


# --- numbers and points ----------------------------------------------------------


def _number(lx: _Lexer) -> Fraction:
    t = lx.next()
    if t[0] != "num":
        raise ParseError(f"expected a number, found {t[1] or 'end of input'!r}", lx.text, t[2])
    return Fraction(t[1])


def _signed_rational(lx: _Lexer) -> Fraction:
    sign = -1 if lx.accept("-") else 1
    if lx.accept("("):
        val = _signed_rational(lx)
        lx.expect(")")
        return sign * val
    val = _number(lx)
    if lx.peek()[1] == "/" and lx.i + 1 < len(lx.toks) and lx.toks[lx.i + 1][0] == "num":
        lx.next()
        den = _number(lx)
        if den == 0:
            lx.error("zero denominator")
        val = val / den
    return sign * val


def _point(lx: _Lexer):
    t = lx.peek()
    if t[0] == "name" and t[1] in ("inf", "oo"):
        lx.next()
        return INF
    return _signed_rational(lx)


def parse_point(text: str):
    lx = _Lexer(text.strip())
    p = _point(lx)
    lx.done()
    return p


def parse_points(text: str) -> list:
    lx = _Lexer(text)
    out = [_point(lx)]
    while lx.accept(","):
        out.append(_point(lx))
    lx.done()
    return out


def _int(lx: _Lexer) -> int:
    sign = -1 if lx.accept("-") else 1
    t = lx.next()
    if t[0] != "num" or not t[1].isdigit():
        raise ParseError("expected an integer", lx.text, t[2])
    return sign * int(t[1])


# --- rational functions --------------------------------------------------------------


def parse_rational(text: str) -> RationalFunction:
    lx = _Lexer(text)
    if lx.peek()[0] == "end":
        lx.error("empty expression")
    f = _sum(lx)
    lx.done()
    return f


def _sum(lx):
    f = _product(lx)
    while lx.peek()[1] in ("+", "-") and lx.peek()[0] == "op":
        _, op, pos = lx.next()
        g = _product(lx)
        try:
            f = f + g if op == "+" else f - g
        except IrreducibleFactorError as exc:
            raise ParseError(str(exc), lx.text, pos) from None
    return f


def _product(lx):
    f = _unary(lx)
    while lx.peek()[1] in ("*", "/") and lx.peek()[0] == "op":
        _, op, pos = lx.next()
        g = _unary(lx)
        if op == "*":
            f = f * g
        else:
            if g.is_zero():
                raise ParseError("division by zero", lx.text, pos)
            f = f / g
    return f


def _unary(lx):
    if lx.accept("-"):
        return -_unary(lx)
    if lx.accept("+"):
        return _unary(lx)
    return _power(lx)


def _power(lx):
    base = _atom(lx)
    if lx.accept("^"):
        k = _int(lx)
        if k < 0 and base.is_zero():
            lx.error("zero to a negative power")
        base = base ** k
    return base


def _atom(lx):
    t = lx.peek()
    if t[0] == "num":
        lx.next()
        return RationalFunction(Fraction(t[1]))
    if t[0] == "name" and t[1] == "z":
        lx.next()
        return RationalFunction.z()
    if lx.accept("("):
        f = _sum(lx)
        lx.expect(")")
        return f
    raise ParseError(f"unexpected {t[1] or 'end of input'!r}", lx.text, t[2])


# --- divisors, states, products ----------------------------------------------------------


def _divisor(lx: _Lexer) -> Divisor:
    if lx.peek()[0] == "num" and lx.peek()[1] == "0" and lx.i + 1 < len(lx.toks) \
            and lx.toks[lx.i + 1][1] == "]":
        lx.next()
        return Divisor()
    acc = {}
    first = True
    while True:
        if first:
            sign = -1 if lx.accept("-") else (lx.accept("+") and 1) or 1
        else:
            if lx.accept("+"):
                sign = 1
            elif lx.accept("-"):
                sign = -1
            else:
                break
        first = False
        k = 1
        if lx.peek()[0] == "num":
            k = _int(lx)
            lx.expect("*")
        lx.expect("(")
        P = _point(lx)
        lx.expect(")")
        acc[P] = acc.get(P, 0) + sign * k
    return Divisor(acc)


def parse_divisor(text: str) -> Divisor:
    lx = _Lexer(text)
    if text.strip() == "0":
        return Divisor()
    D = _divisor(lx)
    lx.done()
    return D


def parse_state(text: str):
    """A :class:`FockVector`, or a :class:`ChargedFockVector` if any ``e[...]`` occurs."""
    lx = _Lexer(text)
    terms = []
    charged = False
    sign = -1 if lx.accept("-") else 1
    while True:
        coeff = Fraction(sign)
        D = None
        gens = []
        while True:
            t = lx.peek()
            if t[0] == "num" or (t[1] == "(" and t[0] == "op"):
                coeff *= _signed_rational(lx)
            elif _is_word(lx, "v"):
                lx.next()
                lx.expect("[")
                P = _point(lx)
                lx.expect(",")
                n = _int(lx)
                if n < 1:
                    lx.error("generator index must be >= 1")
                lx.expect("]")
                gens.append((P, n))
            elif _is_word(lx, "e"):
                lx.next()
                lx.expect("[")
                E = _divisor(lx)
                lx.expect("]")
                D = E if D is None else D + E
                charged = True
            else:
                raise ParseError(f"unexpected {t[1] or 'end of input'!r}", lx.text, t[2])
            if not lx.accept("*"):
                break
        terms.append((D, tuple(gens), coeff))
        if lx.accept("+"):
            sign = 1
        elif lx.accept("-"):
            sign = -1
        else:
            break
    lx.done()
    if charged:
        acc = {}
        for D, gens, c in terms:
            D = D if D is not None else Divisor()
            if D.degree != 0:
                raise ParseError(f"charge {D} has degree {D.degree}, expected 0", text, 0)
            key = (D, monomial(*gens))
            acc[key] = acc.get(key, 0) + c
        return ChargedFockVector(acc)
    acc = {}
    for _, gens, c in terms:
        key = monomial(*gens)
        acc[key] = acc.get(key, 0) + c
    return FockVector(acc)


def _is_word(lx: _Lexer, letter: str) -> bool:
    t = lx.peek()
    return t[0] == "op" and t[1] == letter


def parse_product(text: str) -> MultiplicativeFunction:
    """``2*f[0,1]^2/f[1,inf]``; a plain rational function is factorized instead."""
    if "f[" not in text.replace(" ", ""):
        from .symbols import factorize
        c, pairs = factorize(parse_rational(text))
        return MultiplicativeFunction.from_factors(pairs, c)
    lx = _Lexer(text)
    const = Fraction(-1 if lx.accept("-") else 1)
    factors = []
    op = "*"
    while True:
        t = lx.peek()
        if t[0] == "num" or (t[0] == "op" and t[1] == "("):
            val = _signed_rational(lx)
            if val == 0:
                lx.error("zero constant")
            const = const * val if op == "*" else const / val
        elif _is_word(lx, "f"):
            lx.next()
            lx.expect("[")
            P = _point(lx)
            lx.expect(",")
            Q = _point(lx)
            lx.expect("]")
            k = _int(lx) if lx.accept("^") else 1
            if (P is INF) == (Q is INF) and (P is INF or P == Q):
                raise ParseError("f[P,Q] needs P != Q", lx.text, t[2])
            factors.append((P, Q, k if op == "*" else -k))
        else:
            raise ParseError(f"unexpected {t[1] or 'end of input'!r}", lx.text, t[2])
        if lx.accept("*"):
            op = "*"
        elif lx.accept("/"):
            op = "/"
        else:
            break
    lx.done()
    return MultiplicativeFunction.from_factors(factors, const)


def format_state(w) -> str:
    return str(w)


def parse_any_point(text: str):
    return as_point(parse_point(text))
