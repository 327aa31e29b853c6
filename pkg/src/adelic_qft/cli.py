"""Command-line front end.

Every verb prints a report, either as indented text or as one JSON record per
line (``--format records``).  Verbs that check an identity carry a PASS/FAIL
status, and the exit status is 0 exactly when every such check passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .adeles import Adele
from .expectation import DEGREE_CAP, corr_additive, corr_charged, corr_multiplicative
from .fock import ChargedFockVector, FockVector, drx_act, heisenberg_act, rx_act
from .expectation import ward_additive, ward_multiplicative
from .laurent import window
from .model import (ModelValidationError, P1Model, TabulatedModel, export_table,
                    validate_model)
from .p1 import (INF, GlobalDifferential, evaluate_partial_fractions, format_point,
                 local_residues, partial_fractions, residue_at, rf_expand_at)
from .parsing import ParseError, parse_point, parse_points, parse_product, parse_rational, parse_state
from .symbols import (MultiplicativeFunction, exchange_law_check, factorize,
                      prime_taylor, prime_taylor_closed_form, tame_local, weil_global)
from .suites import DEFAULT_SEED, run_suites


class Report:
    def __init__(self, verb: str, inputs: dict):
        self.verb = verb
        self.inputs = inputs
        self.outputs: dict = {}
        self.status: Optional[bool] = None

    def contract(self, ok: bool) -> None:
        self.status = ok if self.status is None else (self.status and ok)

    def as_record(self) -> dict:
        rec = {"verb": self.verb, "inputs": _jsonable(self.inputs),
               "outputs": _jsonable(self.outputs)}
        if self.status is not None:
            rec["status"] = "PASS" if self.status else "FAIL"
        return rec

    def as_text(self) -> str:
        lines = [self.verb]
        for k, v in self.inputs.items():
            lines.append(f"  {k}: {_text(v)}")
        for k, v in self.outputs.items():
            if isinstance(v, dict):
                lines.append(f"  {k}:")
                for kk, vv in v.items():
                    lines.append(f"    {_text(kk)}: {_text(vv)}")
            else:
                lines.append(f"  {k}: {_text(v)}")
        if self.status is not None:
            lines.append("PASS" if self.status else "FAIL")
        return "\n".join(lines)


def _text(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_text(x) for x in v) + "]"
    if v is INF:
        return "inf"
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {_text(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, bool) or v is None or isinstance(v, int) and not isinstance(v, Fraction):
        return v
    return _text(v)


# --- verbs ------------------------------------------------------------------------------


def _fn(args):
    return parse_rational(args.f)


def cmd_residue(args, model):
    f = _fn(args)
    w = GlobalDifferential(f)
    rep = Report("residue", {"f": f})
    if args.at is not None:
        P = parse_point(args.at)
        rep.inputs["at"] = P
        rep.outputs["residue"] = residue_at(w, P)
    else:
        rep.outputs["residues"] = {format_point(P): r for P, r in local_residues(w).items()}
    return rep


def cmd_residue_theorem(args, model):
    f = _fn(args)
    local = local_residues(GlobalDifferential(f))
    total = sum(local.values(), Fraction(0))
    rep = Report("residue-theorem", {"f": f})
    rep.outputs["residues"] = {format_point(P): r for P, r in local.items()}
    rep.outputs["sum"] = total
    rep.contract(total == 0)
    return rep


def cmd_expand(args, model):
    f = _fn(args)
    P = parse_point(args.at)
    v = f.valuation(P) if not f.is_zero() else 0
    order = args.order if args.order is not None else v + args.precision
    s = rf_expand_at(f, P, order)
    rep = Report("expand", {"f": f, "at": P, "order": order})
    rep.outputs["valuation"] = s.valuation if not s.is_zero() else None
    rep.outputs["series"] = str(s)
    return rep


def cmd_divisor(args, model):
    f = _fn(args)
    D = f.divisor()
    rep = Report("divisor", {"f": f})
    rep.outputs["divisor"] = D
    rep.outputs["degree"] = D.degree
    rep.contract(D.degree == 0)
    return rep


def cmd_partial_fractions(args, model):
    f = _fn(args)
    coeffs, const = partial_fractions(f)
    rep = Report("partial-fractions", {"f": f})
    rep.outputs["coefficients"] = {f"eta[{format_point(Q)},{j}]": c
                                   for (Q, j), c in sorted(coeffs.items(),
                                                           key=lambda i: (_pk(i[0][0]), i[0][1]))}
    rep.outputs["constant"] = const
    ok = True
    for x in range(-3, 4):
        try:
            ok = ok and evaluate_partial_fractions(coeffs, const, x) == f(x)
        except ZeroDivisionError:
            continue
    rep.contract(ok)
    return rep


def _pk(P):
    return (1, 0) if P is INF else (0, P)


def _global(text, model):
    """A rational function, or a model-bound product of prime factors."""
    if "f[" in text.replace(" ", ""):
        return parse_product(text).bind(model)
    return parse_rational(text)


def cmd_tame(args, model):
    f, g = _global(args.f, model), _global(args.g, model)
    P = parse_point(args.at)
    rep = Report("tame", {"f": f, "g": g, "at": P})
    rep.outputs["symbol"] = tame_local(f.expand_at(P), g.expand_at(P))
    return rep


def cmd_weil(args, model):
    f, g = _global(args.f, model), _global(args.g, model)
    local, total = weil_global(f, g)
    rep = Report("weil", {"f": f, "g": g})
    rep.outputs["local_symbols"] = {format_point(P): v for P, v in local.items()}
    rep.outputs["product"] = total
    rep.contract(total == 1)
    return rep


def cmd_exchange(args, model):
    pts = parse_points(args.points)
    if len(pts) != 4:
        raise ValueError("exchange needs four points P,Q,R,S")
    P, Q, R, S = pts
    left, right, ok = exchange_law_check(P, Q, R, S, model)
    rep = Report("exchange", {"points": [P, Q, R, S]})
    rep.outputs["exp_int_R_S_omega_PQ"] = left
    rep.outputs["exp_int_P_Q_omega_RS"] = right
    rep.contract(ok)
    return rep


def cmd_factorize(args, model):
    f = _fn(args)
    c, pairs = factorize(f)
    rebuilt = MultiplicativeFunction.from_factors(pairs, c).as_rational()
    rep = Report("factorize", {"f": f})
    rep.outputs["constant"] = c
    rep.outputs["factors"] = [f"f[{format_point(P)},{format_point(Q)}]" for P, Q in pairs]
    rep.contract(rebuilt == f)
    return rep


def cmd_prime_taylor(args, model):
    P, Q, R = parse_point(args.p), parse_point(args.q), parse_point(args.r)
    alpha, val, coeffs = prime_taylor(P, Q, R, args.order, model)
    closed = prime_taylor_closed_form(P, Q, R, args.order, model)
    rep = Report("prime-taylor", {"P": P, "Q": Q, "R": R, "order": args.order})
    rep.outputs["alpha"] = alpha
    rep.outputs["valuation"] = val
    rep.outputs["a"] = {str(n): a for n, a in coeffs.items()}
    rep.contract((alpha, val, coeffs) == closed)
    return rep


def _state(args):
    return parse_state(args.state)


def cmd_act(args, model):
    w = _state(args)
    rep = Report("act", {"state": w})
    if (args.adele is None) == (args.idele is None):
        raise ValueError("act needs exactly one of --adele or --idele")
    if args.adele is not None:
        f = parse_rational(args.adele)
        x = Adele({}, model.lift(f))
        rep.inputs["adele"] = f
        if isinstance(w, ChargedFockVector):
            out = drx_act(x, w, model, Fraction(args.central))
        else:
            out = heisenberg_act(x, w, model)
            if args.central:
                out = out + w.scale(Fraction(args.central))
    else:
        m = parse_product(args.idele).bind(model)
        rep.inputs["idele"] = m
        if isinstance(w, FockVector):
            w = w.charged()
        out = rx_act(m, w, model)
    rep.outputs["result"] = out
    return rep


def cmd_correlate(args, model):
    w = _state(args)
    mode = args.mode or ("charged" if isinstance(w, ChargedFockVector) else "additive")
    rep = Report("correlate", {"state": w, "mode": mode})
    cap = args.degree_cap
    if mode == "additive":
        if isinstance(w, ChargedFockVector):
            raise ValueError("additive correlator needs an uncharged state")
        val = corr_additive(w, model, degree_cap=cap)
    elif mode == "charged":
        val = corr_charged(w, model, degree_cap=cap)
    else:
        val = corr_multiplicative(w, model, degree_cap=cap)
    rep.outputs["value"] = val
    return rep


def cmd_ward(args, model):
    w = _state(args)
    if args.mode == "additive":
        if args.function is None:
            raise ValueError("ward --mode additive needs --function")
        f = parse_rational(args.function)
        rep = Report("ward", {"mode": "additive", "function": f, "state": w})
        val = ward_additive(f, w, model)
        rep.outputs["value"] = val
        rep.contract(val == 0)
    else:
        if args.symmetry is None:
            raise ValueError("ward --mode multiplicative needs --symmetry")
        m = parse_product(args.symmetry).bind(model)
        rep = Report("ward", {"mode": "multiplicative", "symmetry": m, "state": w})
        lhs, rhs = ward_multiplicative(m, w, model)
        rep.outputs["lhs"] = lhs
        rep.outputs["rhs"] = rhs
        rep.contract(lhs == rhs)
    return rep


def cmd_validate_model(args, model):
    if not args.model:
        raise ValueError("validate-model needs --model FILE")
    rep = Report("validate-model", {"model": args.model})
    try:
        tab = TabulatedModel.from_file(args.model, validate=False)
        violations = validate_model(tab)
    except ModelValidationError as exc:
        violations = exc.violations
    rep.outputs["violations"] = violations
    rep.contract(not violations)
    return rep


def cmd_verify(args, model):
    numbers = [int(x) for x in args.criteria.split(",")] if args.criteria else None
    reps = []
    for res in run_suites(numbers, args.seed, model if args.model else None):
        rep = Report("verify", {"criterion": res.number, "seed": args.seed})
        rep.outputs["name"] = res.name
        rep.outputs["checks"] = res.checks
        rep.outputs["failures"] = res.failures[:3]
        rep.outputs["seconds"] = f"{res.elapsed:.2f}"
        rep.outputs["limit_seconds"] = f"{res.limit:g}"
        rep.contract(res.passed and res.in_time)
        reps.append(rep)
    return reps


def cmd_export_model(args, model):
    table = export_table(P1Model(), max_order=args.max_order, window=args.window)
    with open(args.output, "w") as fh:
        json.dump(table, fh, indent=1, sort_keys=True)
    rep = Report("export-model", {"output": args.output})
    rep.outputs["points"] = table["points"]
    rep.outputs["max_order"] = table["max_order"]
    rep.outputs["window"] = table["precision"]
    return rep


VERBS = {
    "residue": cmd_residue,
    "residue-theorem": cmd_residue_theorem,
    "expand": cmd_expand,
    "divisor": cmd_divisor,
    "partial-fractions": cmd_partial_fractions,
    "tame": cmd_tame,
    "weil": cmd_weil,
    "exchange": cmd_exchange,
    "factorize": cmd_factorize,
    "prime-taylor": cmd_prime_taylor,
    "act": cmd_act,
    "correlate": cmd_correlate,
    "ward": cmd_ward,
    "validate-model": cmd_validate_model,
    "verify": cmd_verify,
    "export-model": cmd_export_model,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS,
                        help="series window length (default 24)")
    common.add_argument("--model", default=argparse.SUPPRESS,
                        help="tabulated curve model (JSON); default is the projective line")
    common.add_argument("--format", choices=("text", "records"), default=argparse.SUPPRESS)
    common.add_argument("--degree-cap", type=int, default=argparse.SUPPRESS,
                        help=f"largest monomial degree for Wick sums (default {DEGREE_CAP})")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"seed for randomized suites (default {DEFAULT_SEED})")

    parser = argparse.ArgumentParser(prog="adelic-qft", parents=[common],
                                     description="Exact residue calculus, reciprocity laws and "
                                                 "boson field theories on the projective line.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("residue", "local residues of f dz")
    p.add_argument("--f", required=True)
    p.add_argument("--at")
    p = add("residue-theorem", "check that the residues of f dz sum to 0")
    p.add_argument("--f", required=True)
    p = add("expand", "Laurent expansion at a point")
    p.add_argument("--f", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--order", type=int)
    p = add("divisor", "divisor of a rational function")
    p.add_argument("--f", required=True)
    p = add("partial-fractions", "expansion in the additive functions eta")
    p.add_argument("--f", required=True)
    p = add("tame", "local tame symbol")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--at", required=True)
    p = add("weil", "global tame symbol; must be 1")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p = add("exchange", "exchange law for exponentials of third-kind integrals")
    p.add_argument("--points", required=True, help="P,Q,R,S")
    p = add("factorize", "write f as a constant times prime factors f[P,Q]")
    p.add_argument("--f", required=True)
    p = add("prime-taylor", "local decomposition of f[P,Q] at R")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--order", type=int, default=6)
    p = add("act", "act on a Fock state with an adele or an idele")
    p.add_argument("--state", required=True)
    p.add_argument("--adele")
    p.add_argument("--idele")
    p.add_argument("--central", default="0")
    p = add("correlate", "expectation value of a state")
    p.add_argument("--state", required=True)
    p.add_argument("--mode", choices=("additive", "charged", "multiplicative"))
    p = add("ward", "check a Ward identity")
    p.add_argument("--mode", choices=("additive", "multiplicative"), default="additive")
    p.add_argument("--function")
    p.add_argument("--symmetry")
    p.add_argument("--state", required=True)
    add("validate-model", "validate a tabulated curve model")
    p = add("verify", "run the seeded acceptance suites")
    p.add_argument("--criteria", help="comma-separated criterion numbers (default all)")
    p = add("export-model", "write the tabulated copy of the genus-0 model")
    p.add_argument("--output", required=True)
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--window", type=int, default=24)
    return parser


_DEFAULTS = {"precision": 24, "model": None, "format": "text", "degree_cap": DEGREE_CAP,
             "seed": DEFAULT_SEED}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, v in _DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        with window(args.precision):
            if args.model and args.verb != "validate-model":
                model = TabulatedModel.from_file(args.model)
            else:
                model = P1Model()
            reports = VERBS[args.verb](args, model)
    except (ParseError, ValueError, ArithmeticError, KeyError, OSError) as exc:
        print(f"error: {args.verb}: {exc}", file=sys.stderr)
        return 2
    if not isinstance(reports, list):
        reports = [reports]
    for rep in reports:
        if args.format == "records":
            print(json.dumps(rep.as_record(), sort_keys=True))
        else:
            print(rep.as_text())
    return 0 if all(r.status is not False for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
