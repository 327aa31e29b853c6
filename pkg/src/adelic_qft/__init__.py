"""Exact residue calculus, reciprocity laws and boson field theories on the projective line."""

from .laurent import LaurentSeries, PrecisionError, Rat
from .p1 import INF, Divisor, GlobalDifferential, RationalFunction, eta, partial_fractions, u_gen
from .adeles import Adele, Idele, c_X, idele_divisor, res_x_pairing
from .symbols import (MultiplicativeFunction, exchange_law_check, exp_integral_3rd, f_PQ,
                      factorize, generalized_weil_check, prime_form_idele, prime_taylor,
                      tame_local, weil_global)
from .model import CurveModel, ModelValidationError, P1Model, TabulatedModel, p1_model, tabulated_model
from .fock import (ChargedFockVector, DualVector, FockVector, charged_act, contragradient_act,
                   drx_act, dual_pairing, heisenberg_act, rx_act, shift)
from .expectation import (CoefficientTable, corr_additive, corr_charged, corr_multiplicative,
                          ward_additive, ward_multiplicative)

__version__ = "0.1.0"

__all__ = [
    "LaurentSeries", "PrecisionError", "Rat",
    "INF", "Divisor", "GlobalDifferential", "RationalFunction", "eta", "partial_fractions", "u_gen",
    "Adele", "Idele", "c_X", "idele_divisor", "res_x_pairing",
    "MultiplicativeFunction", "exchange_law_check", "exp_integral_3rd", "f_PQ", "factorize",
    "generalized_weil_check", "prime_form_idele", "prime_taylor", "tame_local", "weil_global",
    "CurveModel", "ModelValidationError", "P1Model", "TabulatedModel", "p1_model", "tabulated_model",
    "ChargedFockVector", "DualVector", "FockVector", "charged_act", "contragradient_act",
    "drx_act", "dual_pairing", "heisenberg_act", "rx_act", "shift",
    "CoefficientTable", "corr_additive", "corr_charged", "corr_multiplicative",
    "ward_additive", "ward_multiplicative",
]
