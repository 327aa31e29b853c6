"""Seeded verification suites, one per acceptance criterion.

Every suite draws its random instances from ``random.Random(seed + number)``
and returns a :class:`SuiteResult`.  Suites 3 to 10 take a curve model and only
query it through the model interface; their ``records`` are compared verbatim
between the closed-form model and its tabulated copy by suite 11.
"""

from __future__ import annotations

import copy
import random
import time
from fractions import Fraction
from itertools import permutations
from typing import Callable, Dict, List, Optional

from .adeles import Adele
from .expectation import (CoefficientTable, brute_force_matchings, corr_additive,
                          ward_additive, ward_multiplicative)
from .fock import ChargedFockVector, FockVector, heisenberg_act, monomial
from .laurent import LaurentSeries, residue_pairing, series_from
from .model import (PANEL, CurveModel, ModelValidationError, P1Model, TabulatedModel,
                    export_table)
from .p1 import (INF, Divisor, GlobalDifferential, PoleError, RationalFunction, eta,
                 evaluate_partial_fractions, partial_fractions, residue_at,
                 residue_theorem_check, rf_expand_at)
from .adeles import c_X
from .symbols import (MultiplicativeFunction, exchange_law_check, f_PQ_rational, prime_taylor,
                      prime_taylor_closed_form, weil_global)

DEFAULT_SEED = 20240601

SIX_PANEL = tuple(P for P in PANEL if P != 3 or P is INF)
FIVE_PANEL = (Fraction(0), Fraction(1), Fraction(2), Fraction(3), INF)


class SuiteResult:
    def __init__(self, number: int, name: str, limit: float):
        self.number = number
        self.name = name
        self.limit = limit
        self.checks = 0
        self.failures: List[str] = []
        self.records: list = []
        self.elapsed = 0.0

    def check(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)

    @property
    def passed(self) -> bool:
        return not self.failures and self.checks > 0

    @property
    def in_time(self) -> bool:
        return self.elapsed < self.limit

    def line(self) -> str:
        status = "PASS" if self.passed and self.in_time else "FAIL"
        extra = ""
        if self.failures:
            extra = f"; first failure: {self.failures[0]}"
        elif not self.in_time:
            extra = f"; over the {self.limit:g} s limit"
        return (f"[{status}] criterion {self.number}: {self.name} "
                f"({self.checks} checks, {self.elapsed:.2f} s){extra}")


def _timed(number, name, limit):
    def deco(fn):
        def run(seed: int = DEFAULT_SEED, model: Optional[CurveModel] = None) -> SuiteResult:
            res = SuiteResult(number, name, limit)
            rng = random.Random(seed + number)
            t0 = time.perf_counter()
            fn(res, rng, model if model is not None else P1Model())
            res.elapsed = time.perf_counter() - t0
            return res
        run.number = number
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return deco


# --- random instances ----------------------------------------------------------------


def random_rational(rng, lo=-5, hi=5, dens=(1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def random_nonzero(rng, lo=-5, hi=5) -> Fraction:
    while True:
        c = random_rational(rng, lo, hi)
        if c:
            return c


def random_function(rng, max_factors=8, max_mult=3) -> RationalFunction:
    factors = {}
    for _ in range(rng.randint(0, max_factors)):
        r = random_rational(rng)
        m = rng.choice([k for k in range(-max_mult, max_mult + 1) if k])
        factors[r] = factors.get(r, 0) + m
    return RationalFunction(random_nonzero(rng), factors)


def random_panel_additive(rng, points=PANEL, max_poles=3, max_order=3):
    """``{(Q, j): c}`` and a constant, poles on the panel."""
    coeffs = {}
    for _ in range(rng.randint(1, max_poles)):
        Q = rng.choice(points)
        coeffs[(Q, rng.randint(1, max_order))] = random_nonzero(rng)
    return coeffs, random_rational(rng)


def random_panel_function(rng, max_order=3) -> RationalFunction:
    """Factored function whose poles (infinity included) lie on the panel, orders <= 3."""
    finite = [P for P in PANEL if P is not INF]
    factors = {}
    for P in rng.sample(finite, rng.randint(0, 3)):
        factors[P] = -rng.randint(1, max_order)
    for _ in range(rng.randint(0, 4)):
        r = random_rational(rng, -7, 7, (1, 2, 5))
        if factors.get(r, 0) >= 0:
            factors[r] = factors.get(r, 0) + 1
    f = RationalFunction(random_nonzero(rng), factors)
    while f.valuation(INF) < -max_order:
        f = f / RationalFunction.linear(rng.choice(finite))
    return f


def random_monomial(rng, degree, points=PANEL, max_order=3) -> tuple:
    return monomial(*((rng.choice(points), rng.randint(1, max_order)) for _ in range(degree)))


def random_state(rng, max_degree=4, points=PANEL, max_order=3, terms=3) -> FockVector:
    acc = {}
    for _ in range(rng.randint(1, terms)):
        acc[random_monomial(rng, rng.randint(0, max_degree), points, max_order)] = random_nonzero(rng)
    return FockVector(acc)


def random_charge(rng, max_support=3, points=PANEL) -> Divisor:
    k = rng.randint(0, max_support)
    if k < 2:
        return Divisor()
    pts = rng.sample(list(points), k)
    coeffs = [rng.choice([-2, -1, 1, 2]) for _ in pts[:-1]]
    coeffs.append(-sum(coeffs))
    return Divisor(dict(zip(pts, coeffs)))


def random_charged_state(rng, max_degree=4, max_support=3, points=PANEL, terms=3,
                         max_order=3) -> ChargedFockVector:
    acc = {}
    for _ in range(rng.randint(1, terms)):
        D = random_charge(rng, max_support, points)
        m = random_monomial(rng, rng.randint(0, max_degree), points, max_order)
        acc[(D, m)] = random_nonzero(rng)
    return ChargedFockVector(acc)


def random_prime_product(rng, model, max_factors=2, points=PANEL) -> MultiplicativeFunction:
    factors = []
    for _ in range(rng.randint(1, max_factors)):
        P, Q = rng.sample(list(points), 2)
        factors.append((P, Q, rng.choice([-1, 1])))
    return MultiplicativeFunction.from_factors(factors, random_nonzero(rng), model)


def random_local_series(rng, v_lo=-3, v_hi=0, length=10) -> LaurentSeries:
    v = rng.randint(v_lo, v_hi)
    coeffs = [random_rational(rng) for _ in range(length)]
    coeffs[0] = random_nonzero(rng)
    return series_from(coeffs, v)


def _key(x):
    return str(x)


# --- criteria ------------------------------------------------------------------------------


@_timed(1, "residue theorem on 200 random functions", 5.0)
def residue_theorem_suite(res, rng, model):
    for _ in range(200):
        f = random_function(rng)
        w = GlobalDifferential(f)
        total = residue_theorem_check(w)
        res.check(total == 0, f"sum of residues of ({f}) dz is {total}")
        res.records.append(total)
    w = GlobalDifferential(RationalFunction(1, {0: -1}))
    res.check(residue_at(w, 0) == 1 and residue_at(w, INF) == -1, "dz/z local residues")


@_timed(2, "Weil reciprocity on 200 random pairs", 5.0)
def weil_suite(res, rng, model):
    z = RationalFunction.z()
    local, total = weil_global(z, RationalFunction.linear(1))
    res.check([local[0], local[1], local[INF]] == [-1, 1, -1] and total == 1,
              f"worked instance gives {local}")
    for _ in range(200):
        f, g = random_function(rng, 5, 2), random_function(rng, 5, 2)
        _, total = weil_global(f, g)
        res.check(total == 1, f"tau_X({f}, {g}) = {total}")
        res.records.append(total)


@_timed(3, "additive-function reciprocity on the 6-point panel", 2.0)
def reciprocity_suite(res, rng, model):
    for P in SIX_PANEL:
        for Q in SIX_PANEL:
            for m in range(1, 5):
                for n in range(1, 5):
                    lhs = residue_pairing(model.v_expansion(P, m), model.eta_expansion(Q, n, P))
                    rhs = residue_pairing(model.v_expansion(Q, n), model.eta_expansion(P, m, Q))
                    if P == Q and (P is INF) == (Q is INF):
                        res.check(lhs == 0, f"Res_{P}(eta^({m}) d eta^({n})) = {lhs}")
                    else:
                        res.check(lhs == rhs, f"reciprocity fails at {P},{Q},{m},{n}")
                    res.records.append((lhs, rhs))


@_timed(4, "partial fractions reconstruction", 5.0)
def partial_fractions_suite(res, rng, model):
    for _ in range(200):
        f = random_function(rng, 6, 3)
        coeffs, const = partial_fractions(f)
        want = {(Q, j) for Q in f.poles() for j in range(1, -f.valuation(Q) + 1)}
        res.check(set(coeffs) <= want and {Q for Q, _ in coeffs} == set(f.poles()),
                  f"support of the expansion of {f}")
        done = 0
        while done < 10:
            x = random_rational(rng, -9, 9, (1, 2, 3, 5, 7))
            try:
                fx = f(x)
            except PoleError:
                continue
            val = evaluate_partial_fractions(coeffs, const, x)
            res.check(val == fx, f"reconstruction of {f} at {x}: {val} != {fx}")
            res.records.append(val)
            done += 1
    # through the model: panel poles, compare expansions at every panel point
    for _ in range(40):
        f = random_panel_function(rng)
        g = model.lift(f)
        for P in PANEL:
            s = g.expand_at(P)
            ok = s.agrees_with(rf_expand_at(f, P, s.precision))
            res.check(ok, f"model reconstruction of {f} at {P}")
            res.records.append(tuple(s.coeff(k) for k in range(s.valuation, s.valuation + 6)))


@_timed(5, "exchange law and generalized Weil reciprocity", 5.0)
def exchange_weil_suite(res, rng, model):
    for quad in permutations(FIVE_PANEL, 4):
        P, Q, R, S = quad
        left, right, ok = exchange_law_check(P, Q, R, S, model)
        f_rs = f_PQ_rational(R, S)
        oracle = f_rs(Q) / f_rs(P)
        res.check(ok and right == oracle, f"exchange law at {quad}: {left}, {right}, {oracle}")
        res.records.append((left, right))
    for P, Q in permutations(FIVE_PANEL, 2):
        for R, S in permutations(FIVE_PANEL, 2):
            m1 = MultiplicativeFunction.from_factors([(P, Q)], model=model)
            m2 = MultiplicativeFunction.from_factors([(R, S)], model=model)
            _, tau = weil_global(m1, m2)
            res.check(tau == 1, f"tau_X(f[{P},{Q}], f[{R},{S}]) = {tau}")
            res.records.append(tau)
    for _ in range(100):
        m1 = random_prime_product(rng, model, 3, FIVE_PANEL)
        m2 = random_prime_product(rng, model, 3, FIVE_PANEL)
        _, tau = weil_global(m1, m2)
        res.check(tau == 1, f"tau_X({m1}, {m2}) = {tau}")
        res.records.append(tau)


@_timed(6, "prime-Taylor decomposition", 2.0)
def prime_taylor_suite(res, rng, model):
    alpha, val, a = prime_taylor(0, 1, 2, 6, model)
    res.check((alpha, val, a[1], a[2]) == (2, 0, Fraction(1, 2), Fraction(-3, 8)),
              f"f[0,1] at 2 gives {alpha}, {val}, {a}")
    for n in range(1, 7):
        want = eta(2, n)(1) - eta(2, n)(0)
        res.check(a[n] == want, f"a_{n} = {a[n]}, closed form {want}")
    for P, Q in permutations(SIX_PANEL, 2):
        for R in SIX_PANEL:
            got = prime_taylor(P, Q, R, 6, model)
            want = prime_taylor_closed_form(P, Q, R, 6, model)
            res.check(got == want, f"prime_taylor({P},{Q},{R}) = {got}, closed form {want}")
            res.records.append((got[0], got[1], tuple(got[2].values())))


@_timed(7, "oscillator relations and the residue cocycle", 10.0)
def oscillator_suite(res, rng, model):
    for _ in range(100):
        pts = rng.sample(list(PANEL), 2)
        x = Adele({P: random_local_series(rng) for P in pts})
        y = Adele({P: random_local_series(rng) for P in pts})
        v = random_state(rng, 3, pts, 3)
        xy = heisenberg_act(x, heisenberg_act(y, v, model), model)
        yx = heisenberg_act(y, heisenberg_act(x, v, model), model)
        c = c_X(x, y)
        res.check(xy - yx == v.scale(c), "commutator differs from c_X(x, y)")
        res.records.append(c)
    for P in (Fraction(0), INF):
        for m in range(1, 5):
            v = random_state(rng, 2, [P], 4)
            a_m = Adele({P: LaurentSeries.monomial(m, 1, m + 8)})
            a_minus = Adele({P: LaurentSeries.monomial(-m, 1, 8)})
            comm = heisenberg_act(a_m, heisenberg_act(a_minus, v, model), model) - \
                heisenberg_act(a_minus, heisenberg_act(a_m, v, model), model)
            res.check(comm == v.scale(m), f"[alpha_{m}, alpha_-{m}] != {m} at {P}")


@_timed(8, "additive Ward identities", 30.0)
def additive_ward_suite(res, rng, model):
    f = RationalFunction(1, {0: -1})
    v = FockVector.from_monomial((1, 1))
    res.check(ward_additive(f, v, model) == 0, "worked instance 1/z on v[1,1]")
    table = CoefficientTable(model)
    for i in range(100):
        coeffs, const = random_panel_additive(rng)
        x = Adele({}, model.additive(coeffs, const))
        if i % 2:
            w = random_charged_state(rng, 4, 3)
        else:
            w = random_state(rng, 4)
        val = ward_additive(x, w, model, table)
        res.check(val == 0, f"<x . w> = {val} for w = {w}")
        res.records.append(val)


@_timed(9, "two-point function and brute-force Wick sums", 10.0)
def two_point_suite(res, rng, model):
    table = CoefficientTable(model)
    val = corr_additive(FockVector.from_monomial((0, 1), (1, 1)), model, table)
    # independent oracle: -Res_1(eta_0 d eta_1) from rational functions
    deta1 = RationalFunction(1, {1: -2})
    c11 = -residue_at(GlobalDifferential(eta(0, 1) * deta1), 1)
    res.check(val == 1 and val == -c11, f"<v[0,1] v[1,1]> = {val}, -c = {-c11}")
    for _ in range(60):
        mono = random_monomial(rng, rng.choice([2, 4, 6]), PANEL, 3)
        got = corr_additive(FockVector({mono: 1}), model, table)
        want = brute_force_matchings(mono, table)
        res.check(got == want, f"Wick sum of {mono}: {got} != {want}")
        res.records.append(got)


@_timed(10, "multiplicative Ward identities and the c(D) recurrence", 60.0)
def multiplicative_ward_suite(res, rng, model):
    table = CoefficientTable(model)
    D = Divisor({1: 1, 0: -1})
    lhs, rhs = ward_multiplicative(MultiplicativeFunction.from_factors([(0, 1)], model=model),
                                   ChargedFockVector.basis(D), model, table)
    res.check(lhs == rhs == -1, f"worked instance gives ({lhs}, {rhs})")
    for _ in range(50):
        m = random_prime_product(rng, model, 2)
        w = random_charged_state(rng, 2, 3)
        lhs, rhs = ward_multiplicative(m, w, model, table)
        res.check(lhs == rhs, f"<R({m}) w> = {lhs} but <w> = {rhs} for w = {w}")
        res.records.append((lhs, rhs))
    for _ in range(50):
        P, Q = rng.sample(list(PANEL), 2)
        D = random_charge(rng, 3)
        step = Divisor({Q: 1}) - Divisor({P: 1})
        lhs = table.cD(D + step)
        rhs = table.h(P, Q, D) * table.cD(D)
        res.check(lhs == rhs, f"c(D+Q-P) = {lhs}, h c(D) = {rhs} for P={P}, Q={Q}, D={D}")
        res.records.append(lhs)


MODEL_SUITES = (reciprocity_suite, partial_fractions_suite, exchange_weil_suite,
                prime_taylor_suite, oscillator_suite, additive_ward_suite, two_point_suite,
                multiplicative_ward_suite)


def corrupted_tables(base: dict) -> Dict[str, dict]:
    """Three deliberately broken copies of a tabulated genus-0 model."""
    out = {}
    t = copy.deepcopy(base)
    t["c"]["0"]["1"] = "1"
    t["c"]["1"]["0"] = "1"
    out["antisymmetry"] = t
    t = copy.deepcopy(base)
    t["u"]["0"]["1"]["coeffs"][0] = "-2"
    out["duality"] = t
    t = copy.deepcopy(base)
    # eta_1^(1) at 0: change the t^1 coefficient only, leaving constants intact
    coeffs = t["eta"]["1"]["1"]["0"]["coeffs"]
    coeffs[1] = str(Fraction(coeffs[1]) + 1)
    out["reciprocity"] = t
    return out


def model_genericity_suite(seed: int = DEFAULT_SEED, model=None) -> SuiteResult:
    res = SuiteResult(11, "model genericity against a tabulated copy", 120.0)
    t0 = time.perf_counter()
    table = export_table(P1Model())
    tab = TabulatedModel(table)
    for suite in MODEL_SUITES:
        a = suite(seed, P1Model())
        b = suite(seed, tab)
        res.check(a.passed and b.passed, f"suite {a.number} failed on one of the models")
        res.check(a.records == b.records and len(a.records) > 0,
                  f"suite {a.number} differs between the closed-form and tabulated models")
    for kind, bad in corrupted_tables(table).items():
        try:
            TabulatedModel(bad)
        except ModelValidationError as exc:
            hit = any(v.startswith(kind) for v in exc.violations)
            res.check(hit, f"{kind} corruption rejected for other reasons: {exc}")
        else:
            res.check(False, f"{kind} corruption was accepted")
    res.elapsed = time.perf_counter() - t0
    return res


model_genericity_suite.number = 11

ALL_SUITES: Dict[int, Callable] = {
    s.number: s for s in (residue_theorem_suite, weil_suite) + MODEL_SUITES
    + (model_genericity_suite,)
}


def run_suites(numbers=None, seed: int = DEFAULT_SEED, model=None) -> List[SuiteResult]:
    numbers = sorted(ALL_SUITES) if not numbers else numbers
    return [ALL_SUITES[n](seed, model) for n in numbers]
