"""Hilbert calculi: derivation checking, bounded proof search, and a bundled lemma corpus."""

from .builder import ProofBuilder, discharge, prune
from .calculus import CALCULI, H3SUP, IH3, QH3SUP, Calculus, get_calculus
from .corpus import lemma_corpus
from .derivation import CheckReport, Derivation, Justification, Line, LineVerdict, check_derivation
from .search import search_derivation

__all__ = ["ProofBuilder", "discharge", "prune", "CALCULI", "H3SUP", "IH3", "QH3SUP", "Calculus",
           "get_calculus", "lemma_corpus", "CheckReport", "Derivation", "Justification", "Line", "LineVerdict",
           "check_derivation", "search_derivation"]
