"""First-order semantics over finite structures and audits of the quantifier axioms."""

from .audit import (AxiomAuditReport, DistributionReport, audit_delta_distribution, audit_first_order_axioms,
                    generate_axiom_instances)
from .corpus import example_structure, random_structure, structure_corpus
from .semantics import (ConsequenceReport, Structure, TruthReport, eval_formula, eval_term, is_true,
                        semantic_consequence)
from .termmodel import TermModelReport, candidate_sentences, check_term_model, term_structure

__all__ = ["AxiomAuditReport", "DistributionReport", "audit_delta_distribution", "audit_first_order_axioms",
           "generate_axiom_instances", "example_structure", "random_structure", "structure_corpus",
           "ConsequenceReport", "Structure", "TruthReport", "eval_formula", "eval_term", "is_true",
           "semantic_consequence", "TermModelReport", "candidate_sentences", "check_term_model", "term_structure"]
