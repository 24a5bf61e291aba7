"""A desk-scale term model: the domain is the set of closed terms and the theory is what the model makes true.

The check mirrors the canonical-model argument on a finite fragment: the theory
contains every axiom instance, is closed under the rules, quantifiers agree with
folds over closed instances, and the three-way split by membership of x and of
nabla x recovers each sentence's value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from ..algebra.core import c3
from ..formula import Const, Exists, Forall, Formula, Imp, Nec, Or, Pred, TVar, nabla, substitute
from ..parser import format_formula
from ..proof.calculus import QH3SUP
from .semantics import Structure, eval_formula, infimum_or_raise, supremum


def term_structure(constants: Sequence[str], atoms: Mapping[str, Mapping[Tuple[str, ...], int]]) -> Structure:
    """Domain = the constants themselves; each predicate takes the given C3 value on each closed atom."""
    index = {c: i for i, c in enumerate(constants)}
    preds = {}
    for p, table in atoms.items():
        arity = len(next(iter(table)))
        preds[p] = (arity, {tuple(index[a] for a in args): v for args, v in table.items()})
    return Structure(c3(), tuple(constants), consts=dict(index), preds=preds, name="term model")


def candidate_sentences(S: Structure) -> List[Formula]:
    """Closed atoms and their quantifications, then one layer of connectives over those."""
    consts = [Const(c) for c in S.consts]
    base: List[Formula] = []
    for p, (arity, _) in sorted(S.preds.items()):
        for args in itertools.product(consts, repeat=arity):
            base.append(Pred(p, tuple(args)))
        if arity == 1:
            body = Pred(p, (TVar("x"),))
            base += [Forall("x", body), Exists("x", body), Forall("x", Nec(body)), Exists("x", Nec(body))]
    layer = list(base)
    layer += [Nec(a) for a in base] + [nabla(a) for a in base]
    layer += [Nec(Forall("x", f.body)) for f in base if isinstance(f, Forall)]
    layer += [Nec(Exists("x", f.body)) for f in base if isinstance(f, Exists)]
    pairs = [Imp(a, b) for a, b in itertools.product(layer, repeat=2)]
    pairs += [Or(a, b) for a, b in itertools.product(base, repeat=2)]
    seen, out = set(), []
    for f in layer + pairs:
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


@dataclass
class TermModelReport:
    sentences: int
    theory: int
    failures: List[str] = field(default_factory=list)
    classes: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_term_model(S: Structure) -> TermModelReport:
    A = S.algebra
    cands = candidate_sentences(S)
    value = {f: eval_formula(S, {}, f) for f in cands}
    theory = {f for f, v in value.items() if v == A.one}
    report = TermModelReport(len(cands), len(theory))

    for f in cands:
        m = QH3SUP.match_axiom(f)
        if m is not None and not m.failure and f not in theory:
            report.failures.append(f"axiom instance outside the theory: {format_formula(f)}")
        # closure under necessitation
        if f in theory and Nec(f) in value and Nec(f) not in theory:
            report.failures.append(f"theory not closed under NEC at {format_formula(f)}")
        # closure under modus ponens
        if isinstance(f, Imp) and f in theory and f.lhs in theory and f.rhs in value and f.rhs not in theory:
            report.failures.append(f"theory not closed under MP at {format_formula(f)}")
        # quantifiers are folds over the closed instances
        if isinstance(f, (Forall, Exists)):
            inst = [eval_formula(S, {}, substitute(f.body, f.var, Const(c))) for c in S.consts]
            fold = infimum_or_raise(A, inst) if isinstance(f, Forall) else supremum(A, inst)
            if fold != value[f]:
                report.failures.append(f"quantifier clause fails at {format_formula(f)}")
        # the three-way split by membership recovers the value
        in_theory = f in theory
        nab_in = eval_formula(S, {}, nabla(f)) == A.one
        h = 2 if in_theory else (1 if nab_in else 0)
        if h != value[f]:
            report.failures.append(f"membership split disagrees with the value at {format_formula(f)}")

    # f ~ r when both implications hold; each class must carry a single value and vice versa
    def holds(f: Formula) -> bool:
        return eval_formula(S, {}, f) == A.one

    classes: Dict[int, int] = {}
    reps: List[Formula] = []
    for f in cands:
        if not any(holds(Imp(f, r)) and holds(Imp(r, f)) for r in reps):
            reps.append(f)
            classes[value[f]] = classes.get(value[f], 0) + 1
    if any(n != 1 for n in classes.values()):
        report.failures.append("two interderivability classes share a value")
    report.classes = {A.label(v): n for v, n in sorted(classes.items())}
    return report
