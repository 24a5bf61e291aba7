"""Workbench for trivalent modal Hilbert logics: semantics, proofs, finite algebras, first-order models."""

from .formula import INF, QSUP, SUP, Kind, Signature
from .matrix import TruthValue, consequence, eval_c3, is_valid
from .parser import format_formula, parse_formula

__version__ = "0.1.0"

__all__ = ["INF", "SUP", "QSUP", "Kind", "Signature", "TruthValue", "consequence", "eval_c3", "is_valid",
           "format_formula", "parse_formula", "__version__"]
