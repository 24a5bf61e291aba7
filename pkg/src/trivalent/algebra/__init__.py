"""Finite algebras: identity checks, deductive systems, congruences, decompositions, free algebras."""

from .analysis import analyze
from .core import (C3_LABELS, Congruence, FiniteAlgebra, Homomorphism, all_subalgebras, c2, c3, closure,
                   generate_subalgebra, is_closed, is_compatible, is_homomorphism, power, product, quotient,
                   subalgebra, trivial, weak_imp)
from .corpus import corpus
from .free import FreeAlgebra, check_universal_property, extension, free_algebra
from .identities import (Law, LawResult, VerificationReport, check_laws, missing_meet, verify_properties,
                         verify_variety)
from .simple import Decomposition, find_isomorphism, h_from_maximal, is_simple, semisimple_decomposition
from .systems import (MODAL, PLAIN, WEAK, DeductiveSystem, all_congruences, all_deductive_systems,
                      congruence_generated, congruence_to_ds, ds_to_congruence, generate_ds, generate_modal_ds,
                      is_ds, maximal_modal_ds, modal_ds_by_chains, tied_to)

__all__ = [
    "C3_LABELS", "Congruence", "FiniteAlgebra", "Homomorphism", "all_subalgebras", "c2", "c3", "closure",
    "generate_subalgebra", "is_closed", "is_compatible", "is_homomorphism", "power", "product", "quotient",
    "subalgebra", "trivial", "weak_imp", "corpus", "FreeAlgebra", "check_universal_property", "extension",
    "free_algebra", "Law", "LawResult", "VerificationReport", "check_laws", "missing_meet",
    "verify_properties", "verify_variety", "Decomposition", "find_isomorphism", "h_from_maximal",
    "is_simple", "semisimple_decomposition", "MODAL", "PLAIN", "WEAK", "DeductiveSystem",
    "all_congruences", "all_deductive_systems", "congruence_generated", "congruence_to_ds",
    "ds_to_congruence", "generate_ds", "generate_modal_ds", "is_ds", "maximal_modal_ds",
    "modal_ds_by_chains", "tied_to", "analyze",
]
