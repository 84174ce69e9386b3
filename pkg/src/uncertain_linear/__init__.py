"""Uncertain linear logic over (strength, count) truth values."""

from .evaluator import Environment, UnboundAtomError, evaluate, evaluate_report, parse_environment
from .formula import FormulaSyntaxError, nnf, parse, render
from .oracle import BACKEND
from .sequent import check, parse_proof, tv_annotate
from .truth import INF, Constant, TruthValue, UniverseConfig

__all__ = [
    "BACKEND", "Constant", "Environment", "FormulaSyntaxError", "INF", "TruthValue",
    "UnboundAtomError", "UniverseConfig", "check", "evaluate", "evaluate_report", "nnf",
    "parse", "parse_environment", "parse_proof", "render", "tv_annotate",
]
