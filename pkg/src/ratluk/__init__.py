"""Exact decision procedures and polyhedral duality for rational Łukasiewicz logic."""

from ._backend import BACKEND
from .algebra import UnitRational, parse_rational
from .decision import Verdict, entails, equivalent, is_satisfiable, is_tautology
from .pwl import PwlFunc, compile_formula, compile_ql, compile_ratluk, pwl_eval, pwl_max, pwl_min
from .semantics import eval_ql, eval_ratluk, evaluate
from .syntax import parse, parse_ql, parse_ratluk, to_text, translate_i1, translate_i2

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "UnitRational",
    "parse_rational",
    "Verdict",
    "entails",
    "equivalent",
    "is_satisfiable",
    "is_tautology",
    "PwlFunc",
    "compile_formula",
    "compile_ql",
    "compile_ratluk",
    "pwl_eval",
    "pwl_max",
    "pwl_min",
    "eval_ql",
    "eval_ratluk",
    "evaluate",
    "parse",
    "parse_ql",
    "parse_ratluk",
    "to_text",
    "translate_i1",
    "translate_i2",
]
