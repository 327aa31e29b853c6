"""Sparse Fock spaces, the Heisenberg action, and the lattice extension.

A monomial is a canonically sorted tuple of generators ``(P, n)`` standing for
``v_P1^(n1) ... v_Pk^(nk)`` in the symmetric algebra.  Annihilation by a
generator acts as a derivation (each occurrence is contracted once).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, Optional

from .adeles import Adele
from .laurent import as_rat, residue_pairing
from .p1 import Divisor, as_point, format_point, point_key
from .symbols import local_decomposition


def gen_key(g):
    P, n = g
    return (point_key(P), n)


def monomial(*gens) -> tuple:
    return tuple(sorted(((as_point(P), int(n)) for P, n in gens), key=gen_key))


def _remove_at(mono: tuple, i: int) -> tuple:
    return mono[:i] + mono[i + 1:]


def _insert(mono: tuple, g) -> tuple:
    return tuple(sorted(mono + (g,), key=gen_key))


def format_monomial(mono: tuple, letter: str = "v") -> str:
    if not mono:
        return "1"
    return "*".join(f"{letter}[{format_point(P)},{n}]" for P, n in mono)


def _fmt_coeff_term(c: Fraction, body: str) -> str:
    if body == "1":
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def _join_terms(terms: list) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


class _Sparse:
    """Shared sparse-dict behaviour; keys are hashable basis labels."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        acc: Dict = {}
        for k, c in (terms or {}).items():
            c = as_rat(c)
            if c:
                acc[k] = acc.get(k, Fraction(0)) + c
        self.terms = {k: c for k, c in acc.items() if c}

    def _new(self, terms):
        return type(self)(terms)

    def __add__(self, other):
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + c
        return self._new(acc)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = as_rat(c)
        return self._new({k: v * c for k, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class FockVector(_Sparse):
    """Finite linear combination of monomials in the ``v_P^(n)``."""

    __slots__ = ()

    @classmethod
    def vacuum(cls, c=1) -> "FockVector":
        return cls({(): c})

    @classmethod
    def from_monomial(cls, *gens, coeff=1) -> "FockVector":
        return cls({monomial(*gens): coeff})

    def product(self, other: "FockVector") -> "FockVector":
        """Symmetric product."""
        acc: Dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2, key=gen_key))
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return FockVector(acc)

    def points(self) -> set:
        return {P for m in self.terms for P, _ in m}

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def charged(self, D: Optional[Divisor] = None) -> "ChargedFockVector":
        D = D if D is not None else Divisor()
        return ChargedFockVector({(D, m): c for m, c in self.terms.items()})

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda i: (len(i[0]), [gen_key(g) for g in i[0]]))
        return _join_terms([_fmt_coeff_term(c, format_monomial(m)) for m, c in items])


class ChargedFockVector(_Sparse):
    """Linear combination of ``e_D * monomial`` with degree-0 charges ``D``."""

    __slots__ = ()

    def __init__(self, terms: Optional[dict] = None):
        super().__init__(terms)
        for D, _ in self.terms:
            if D.degree != 0:
                raise ValueError(f"charge {D} has degree {D.degree}, expected 0")

    @classmethod
    def basis(cls, D: Divisor, *gens, coeff=1) -> "ChargedFockVector":
        return cls({(D, monomial(*gens)): coeff})

    def points(self) -> set:
        return {P for (_, m) in self.terms for P, _ in m}

    def charges(self) -> set:
        return {D for D, _ in self.terms}

    def sector(self, D: Divisor) -> FockVector:
        return FockVector({m: c for (E, m), c in self.terms.items() if E == D})

    def __str__(self):
        items = sorted(self.terms.items(),
                       key=lambda i: (i[0][0], len(i[0][1]), [gen_key(g) for g in i[0][1]]))
        out = []
        for (D, m), c in items:
            body = f"e[{D}]"
            if m:
                body += "*" + format_monomial(m)
            out.append(_fmt_coeff_term(c, body))
        return _join_terms(out)


class DualVector(_Sparse):
    """Linear combination of monomials in the dual basis ``u_P^(n)``."""

    __slots__ = ()

    @classmethod
    def vacuum(cls, c=1) -> "DualVector":
        return cls({(): c})

    @classmethod
    def from_monomial(cls, *gens, coeff=1) -> "DualVector":
        return cls({monomial(*gens): coeff})

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda i: (len(i[0]), [gen_key(g) for g in i[0]]))
        return _join_terms([_fmt_coeff_term(c, format_monomial(m, "u")) for m, c in items])


# --- local data of an adele -------------------------------------------------------


class LocalSplitting:
    """Creation and annihilation coefficients of an adele, computed on demand.

    ``creation(P)`` maps ``m`` to the coefficient of ``v_P^(m)`` in the
    principal part, ``-Res_P(u_P^(m) dx_P)``; ``annihilation(P, n)`` is
    ``c(x, v_P^(n)) = -Res_P(x_P dv_P^(n))``.
    """

    def __init__(self, x, model):
        self.x = x
        self.model = model
        self._cre: Dict = {}
        self._ann: Dict = {}
        self._loc: Dict = {}

    def local(self, P):
        if P not in self._loc:
            self._loc[P] = self.x.expand_at(P)
        return self._loc[P]

    def creation(self, P) -> dict:
        if P not in self._cre:
            s = self.local(P)
            out = {}
            if not (s.is_zero() and s.exact) and s.valuation < 0:
                for m in range(1, -s.valuation + 1):
                    b = -residue_pairing(self.model.u_expansion(P, m), s)
                    if b:
                        out[m] = b
            self._cre[P] = out
        return self._cre[P]

    def annihilation(self, P, n: int) -> Fraction:
        key = (P, n)
        if key not in self._ann:
            self._ann[key] = -residue_pairing(self.local(P), self.model.v_expansion(P, n))
        return self._ann[key]

    def value_at(self, P) -> Fraction:
        """``x_P(0)``: constant term of the regular part of ``x_P``."""
        s = self.local(P)
        val = s.coeff(0)
        for m, b in self.creation(P).items():
            val -= b * self.model.v_expansion(P, m, 1).coeff(0)
        return val

    def creation_points(self) -> list:
        return [P for P in self.x.singular_support() if self.creation(P)]


def _as_adele(x):
    return x if isinstance(x, Adele) else Adele({}, x)


def _apply_to_monomial(split: LocalSplitting, mono: tuple, coeff: Fraction, acc: dict,
                       wrap=lambda m: m) -> None:
    for P in split.creation_points():
        for m, b in split.creation(P).items():
            k = wrap(_insert(mono, (P, m)))
            acc[k] = acc.get(k, Fraction(0)) + coeff * b
    for i, g in enumerate(mono):
        if i and mono[i - 1] == g:
            continue
        mult = mono.count(g)
        a = split.annihilation(*g)
        if a:
            k = wrap(_remove_at(mono, i))
            acc[k] = acc.get(k, Fraction(0)) + coeff * mult * a


def heisenberg_act(x, v: FockVector, model, split: Optional[LocalSplitting] = None) -> FockVector:
    """``x . v``: create the principal parts, contract every generator."""
    split = split or LocalSplitting(_as_adele(x), model)
    acc: Dict = {}
    for mono, c in v.terms.items():
        _apply_to_monomial(split, mono, c, acc)
    return FockVector(acc)


def charged_act(x, w: ChargedFockVector, model,
                split: Optional[LocalSplitting] = None) -> ChargedFockVector:
    """``x(e_D v) = -x(D) e_D v + e_D (x . v)`` with ``x(D) = sum n_P x_P(0)``."""
    split = split or LocalSplitting(_as_adele(x), model)
    acc: Dict = {}
    values: Dict = {}
    for (D, mono), c in w.terms.items():
        if D not in values:
            values[D] = sum((n * split.value_at(P) for P, n in D.items()), Fraction(0))
        xD = values[D]
        if xD:
            acc[(D, mono)] = acc.get((D, mono), Fraction(0)) - xD * c
        _apply_to_monomial(split, mono, c, acc, wrap=lambda m, D=D: (D, m))
    return ChargedFockVector(acc)


def drx_act(x, w: ChargedFockVector, model, central=0) -> ChargedFockVector:
    """``dR_X(x + central C)``; the central element acts as the scalar it names."""
    out = charged_act(x, w, model)
    if central:
        out = out + w.scale(central)
    return out


def shift(D: Divisor, w: ChargedFockVector) -> ChargedFockVector:
    if D.degree != 0:
        raise ValueError(f"shift needs a degree-0 divisor, got degree {D.degree}")
    return ChargedFockVector({(E + D, m): c for (E, m), c in w.terms.items()})


# --- dual side -------------------------------------------------------------------


def dual_pairing(u: DualVector, v: FockVector) -> Fraction:
    """Bilinear pairing with ``(u_P^(m), v_Q^(n)) = delta``; inductive form."""
    total = Fraction(0)
    for mu, cu in u.terms.items():
        for mv, cv in v.terms.items():
            if len(mu) == len(mv):
                total += cu * cv * _pair_inductive(mu, mv)
    return total


def _pair_inductive(mu: tuple, mv: tuple) -> int:
    # (u1 u^1, v) = sum_i c(u1, v_i) (u^1, v^i)
    if not mu:
        return 1
    first, rest = mu[0], mu[1:]
    return sum(_pair_inductive(rest, _remove_at(mv, i)) for i, g in enumerate(mv) if g == first)


def dual_pairing_permanent(u: DualVector, v: FockVector) -> Fraction:
    """Same pairing as the permanent of ``[c(u_a, v_b)]``; used as an oracle."""
    total = Fraction(0)
    for mu, cu in u.terms.items():
        for mv, cv in v.terms.items():
            if len(mu) != len(mv):
                continue
            perm = 0
            for sigma in permutations(range(len(mv))):
                if all(mu[a] == mv[b] for a, b in enumerate(sigma)):
                    perm += 1
            total += cu * cv * perm
    return total


def contragradient_act(u: DualVector, x, model, labels: Iterable) -> DualVector:
    """``u . x`` truncated to the generator labels ``labels``.

    Creation of ``u_P^(n)`` carries ``c(x, v_P^(n))``; annihilation of
    ``u_P^(m)`` carries ``-Res_P(u_P^(m) dx_P)``.  The full result has
    infinitely many creation terms, so only ``labels`` are kept.
    """
    split = LocalSplitting(_as_adele(x), model)
    labels = sorted({(as_point(P), int(n)) for P, n in labels}, key=gen_key)
    acc: Dict = {}
    for mono, c in u.terms.items():
        for g in labels:
            a = split.annihilation(*g)
            if a:
                k = _insert(mono, g)
                acc[k] = acc.get(k, Fraction(0)) + c * a
        for i, g in enumerate(mono):
            if i and mono[i - 1] == g:
                continue
            b = split.creation(g[0]).get(g[1], Fraction(0))
            if b:
                k = _remove_at(mono, i)
                acc[k] = acc.get(k, Fraction(0)) + c * mono.count(g) * b
    return DualVector(acc)


# --- Heisenberg system --------------------------------------------------------------


def _exp_annihilation(split: LocalSplitting, v: FockVector) -> FockVector:
    """``exp(rho(phi)) v`` as a power series; terminates since rho(phi) lowers degree."""
    out = v
    term = v
    k = 1
    while not term.is_zero():
        term = heisenberg_act(None, term, split.model, split).scale(Fraction(1, k))
        out = out + term
        k += 1
    return out


def exp_annihilation_substitution(shifts: dict, v: FockVector) -> FockVector:
    """Oracle for the exponential: substitute ``v_g -> v_g + shifts[g]``."""
    acc = FockVector()
    for mono, c in v.terms.items():
        prod = FockVector.vacuum(c)
        for g in mono:
            prod = prod.product(FockVector({(g,): 1, (): shifts.get(g, 0)}))
        acc = acc + prod
    return acc


class _LocalAdele:
    """Adele with given local parts and zero elsewhere (no global tail)."""

    def __init__(self, parts: dict):
        self.parts = parts

    def expand_at(self, P, order=None):
        return self.parts[P]

    def singular_support(self):
        return []


def idele_local_data(a, points) -> dict:
    """``{P: (alpha_P, v_P, phi_P)}`` for ``a_P = alpha t^v exp(phi)``."""
    return {P: local_decomposition(a.expand_at(P)) for P in points}


def rx_act(a, w: ChargedFockVector, model) -> ChargedFockVector:
    """``R_X(a)`` on the charged Fock space for a degree-0 idele ``a``.

    ``e_D v -> (-1)^(sum v_P(D_a) v_P(D)) prod alpha_P^(-v_P(D_a) - 2 v_P(D))
    e_(D + D_a) exp(rho(phi)) v``.
    """
    Da = a.divisor()
    if Da.degree != 0:
        raise ValueError(f"R_X needs a degree-0 idele, divisor {Da} has degree {Da.degree}")
    pts = set(Da.support) | w.points()
    for D in w.charges():
        pts |= set(D.support)
    pts = sorted(pts, key=point_key)
    data = idele_local_data(a, pts)
    split = LocalSplitting(_LocalAdele({P: data[P][2] for P in pts}), model)
    acc: Dict = {}
    for D in sorted(w.charges()):
        sector = w.sector(D)
        sign_exp = sum(Da[P] * D[P] for P in pts)
        scalar = Fraction(-1 if sign_exp % 2 else 1)
        for P in pts:
            e = -Da[P] - 2 * D[P]
            if e:
                scalar *= data[P][0] ** e
        image = _exp_annihilation(split, sector)
        for m, c in image.terms.items():
            key = (D + Da, m)
            acc[key] = acc.get(key, Fraction(0)) + scalar * c
    return ChargedFockVector(acc)


def rx_shifts(a, points, max_order: int, model) -> dict:
    """``c(phi_P, v_P^(n))`` for the substitution oracle."""
    data = idele_local_data(a, points)
    out = {}
    for P in points:
        phi = data[P][2]
        for n in range(1, max_order + 1):
            out[(P, n)] = -residue_pairing(phi, model.v_expansion(P, n))
    return out
