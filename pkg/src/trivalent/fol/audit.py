"""Audits of the first-order axioms, the quantifier rules, and necessity over joins and meets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.core import FiniteAlgebra
from ..formula import (QSUP, Const, Exists, Forall, Formula, Func, Imp, Nec, Pred, Term, TVar, free_individual_vars,
                       is_free_for, substitute)
from ..parser import format_formula, parse_formula
from ..proof.calculus import QH3SUP
from .corpus import CONSTANTS
from .semantics import Structure, is_true

EXHAUSTIVE_LIMIT = 9


# -- necessity against arbitrary joins and meets ---------------------------

@dataclass
class DistributionReport:
    algebra: str
    exhaustive: bool
    joins_checked: int = 0
    meets_checked: int = 0
    violations: List[Dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {"algebra": self.algebra, "ok": self.ok, "exhaustive": self.exhaustive,
                "joins_checked": self.joins_checked, "meets_checked": self.meets_checked,
                "violations": self.violations}


def _subsets(n: int, exhaustive: bool, samples: int, seed: int):
    if exhaustive:
        for r in range(1, n + 1):
            yield from itertools.combinations(range(n), r)
        return
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        mask = rng.random(n) < 0.5
        if mask.any():
            yield tuple(int(i) for i in np.flatnonzero(mask))


def audit_delta_distribution(A: FiniteAlgebra, *, samples: int = 2000, seed: int = 0) -> DistributionReport:
    """``#`` of a join is the join of the ``#``s, and likewise for meets wherever the meet exists."""
    exhaustive = A.size <= EXHAUSTIVE_LIMIT
    report = DistributionReport(A.name, exhaustive)
    for xs in _subsets(A.size, exhaustive, samples, seed):
        necs = [int(A.nec[x]) for x in xs]
        j = A.supremum(xs)
        if j is not None:
            report.joins_checked += 1
            jn = A.supremum(necs)
            if jn is None or int(A.nec[j]) != jn:
                report.violations.append({"kind": "join", "subset": [A.label(x) for x in xs]})
        m = A.infimum(xs)
        if m is not None:
            report.meets_checked += 1
            mn = A.infimum(necs)
            if mn is None or int(A.nec[m]) != mn:
                report.violations.append({"kind": "meet", "subset": [A.label(x) for x in xs]})
    return report


# -- generated instances of the quantifier axioms ----------------------------

_BODIES = [
    "P(x)", "R(x, y)", "R(x, x)", "#P(x)", "P(x) -> R(x, c)", "forall y. R(x, y)", "exists y. R(y, x)",
    "P(f(x)) \\/ P(y)", "(exists z. R(x, z)) -> P(x)", "#(P(x) \\/ R(c, x))", "nabla R(f(x), y)",
    "forall x. P(x)",
]
_TERMS: List[Term] = [TVar("x"), TVar("y"), TVar("z"), Const("c"), Func("f", (TVar("x"),)),
                      Func("f", (TVar("y"),)), Func("f", (Const("c"),))]


def _parse(text: str) -> Formula:
    return parse_formula(text, QSUP, constants=CONSTANTS)


@dataclass(frozen=True)
class Instance:
    axiom: str
    formula: Formula


def generate_axiom_instances() -> Tuple[List[Instance], int]:
    """Instances of the four quantifier axioms, plus the number of candidates excluded by the side condition."""
    out: List[Instance] = []
    excluded = 0
    for text in _BODIES:
        body = _parse(text)
        for t in _TERMS:
            if not is_free_for(t, "x", body):
                excluded += 1
                continue
            inst = substitute(body, "x", t)
            out.append(Instance("Ax11", Imp(inst, Exists("x", body))))
            out.append(Instance("Ax12", Imp(Forall("x", body), inst)))
        for q, ax in ((Exists, "Ax13"), (Forall, "Ax14")):
            out.append(Instance(ax, Imp(Nec(q("x", body)), q("x", Nec(body)))))
            out.append(Instance(ax, Imp(q("x", Nec(body)), Nec(q("x", body)))))
    return out, excluded


@dataclass
class AxiomAuditReport:
    instances: int
    excluded: int
    structures: List[str]
    by_axiom: Dict[str, int]
    failures: List[Dict] = field(default_factory=list)
    rule_checks: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict:
        return {"ok": self.ok, "instances": self.instances, "excluded_by_side_condition": self.excluded,
                "by_axiom": self.by_axiom, "structures": self.structures, "rule_checks": self.rule_checks,
                "failures": self.failures}


def _rule_pairs() -> List[Tuple[str, Formula, Formula, Formula]]:
    """(rule, premise, conclusion, source) triples for R3 and R4 respecting their side conditions."""
    forms = [_parse(t) for t in _BODIES]
    forms += [Exists("x", _parse("P(x)")), Forall("x", _parse("R(x, c)")), _parse("P(c)")]
    out = []
    for a, b in itertools.product(forms, repeat=2):
        prem = Imp(a, b)
        if "x" not in free_individual_vars(b):
            out.append(("R3", prem, Imp(Exists("x", a), b), prem))
        if "x" not in free_individual_vars(a):
            out.append(("R4", prem, Imp(a, Forall("x", b)), prem))
    return out


def audit_first_order_axioms(structures: Sequence[Structure],
                             instances: Optional[Sequence[Instance]] = None) -> AxiomAuditReport:
    """Every axiom instance must be true in every structure; R3 and R4 must preserve truth."""
    excluded = 0
    if instances is None:
        instances, excluded = generate_axiom_instances()
    by_axiom: Dict[str, int] = {}
    for inst in instances:
        by_axiom[inst.axiom] = by_axiom.get(inst.axiom, 0) + 1
    report = AxiomAuditReport(len(instances), excluded, [S.name for S in structures], by_axiom)
    for inst in instances:
        m = QH3SUP.match_axiom(inst.formula, inst.axiom)
        if m is None or m.failure:
            report.failures.append({"axiom": inst.axiom, "formula": format_formula(inst.formula),
                                    "structure": None, "reason": "not recognised by the checker"})
    for S in structures:
        for inst in instances:
            r = is_true(S, inst.formula)
            if not r:
                report.failures.append({"axiom": inst.axiom, "formula": format_formula(inst.formula),
                                        "structure": S.name, "witness": r.witness,
                                        "value": S.algebra.label(r.value)})
    applied = {"R3": 0, "R4": 0, "R3_true_premise": 0, "R4_true_premise": 0}
    for rule, prem, concl, _ in _rule_pairs():
        applied[rule] += 1
        for S in structures:
            if is_true(S, prem):
                applied[f"{rule}_true_premise"] += 1
                if not is_true(S, concl):
                    report.failures.append({"axiom": rule, "formula": format_formula(concl), "structure": S.name,
                                            "reason": "conclusion false although the premise is true"})
    report.rule_checks = applied
    return report
