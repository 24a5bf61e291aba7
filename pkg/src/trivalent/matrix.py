"""Evaluation over the three-element chain with designated value 1.

Values are encoded 0, 1, 2 for 0, 1/2, 1.  Every evaluator here is written
against table lookups so the same code runs on scalars and on numpy arrays;
validity checks evaluate a formula on all 3**k valuations at once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from .errors import SignatureError, UnboundVariable, VariableBudgetExceeded
from .formula import And, Formula, Imp, Meta, Nabla, Nec, Or, Var, prop_vars

DEFAULT_MAX_VARS = 12


class TruthValue(IntEnum):
    ZERO = 0
    HALF = 1
    ONE = 2

    def __str__(self) -> str:
        return ("0", "1/2", "1")[self]

    @classmethod
    def parse(cls, text: str) -> "TruthValue":
        table = {"0": cls.ZERO, "1/2": cls.HALF, "½": cls.HALF, "1": cls.ONE}
        if text not in table:
            raise ValueError(f"not a truth value: {text!r}")
        return table[text]


# rows are the antecedent
IMP = np.array([[2, 2, 2],
                [0, 2, 2],
                [0, 1, 2]])
NEC = np.array([0, 0, 2])
NABLA = np.array([0, 2, 2])
# audit-only connectives
NEG = np.array([2, 1, 0])
LUKASIEWICZ = np.array([[min(2, 2 - x + y) for y in range(3)] for x in range(3)])


def evaluate(phi: Formula, v: Mapping[str, object]):
    """Evaluate ``phi``; valuation values may be ints or integer arrays of a common shape."""
    if isinstance(phi, Var):
        if phi.name not in v:
            raise UnboundVariable(phi.name)
        return v[phi.name]
    if isinstance(phi, Imp):
        return IMP[evaluate(phi.lhs, v), evaluate(phi.rhs, v)]
    if isinstance(phi, And):
        return np.minimum(evaluate(phi.lhs, v), evaluate(phi.rhs, v))
    if isinstance(phi, Or):
        return np.maximum(evaluate(phi.lhs, v), evaluate(phi.rhs, v))
    if isinstance(phi, Nec):
        return NEC[evaluate(phi.sub, v)]
    if isinstance(phi, Nabla):
        a = evaluate(phi.sub, v)
        return IMP[IMP[a, NEC[a]], NEC[a]]
    if isinstance(phi, Meta):
        raise SignatureError(f"cannot evaluate metavariable {phi.name}")
    raise SignatureError(f"{type(phi).__name__} is not propositional")


def eval_c3(phi: Formula, v: Mapping[str, int]) -> TruthValue:
    return TruthValue(int(evaluate(phi, {k: int(x) for k, x in v.items()})))


@dataclass
class ValidityReport:
    valid: bool
    countermodel: Optional[Dict[str, TruthValue]] = None
    valuations: int = 0
    variables: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> Dict:
        return {
            "valid": self.valid,
            "countermodel": None if self.countermodel is None
            else {k: str(x) for k, x in sorted(self.countermodel.items())},
            "valuations": self.valuations,
        }


def format_valuation(v: Mapping[str, int]) -> str:
    return ", ".join(f"{k}={TruthValue(int(x))}" for k, x in sorted(v.items()))


def _grid(names: Sequence[str], values: Sequence[int], max_vars: int) -> Dict[str, np.ndarray]:
    if len(names) > max_vars:
        raise VariableBudgetExceeded(f"{len(names)} variables exceed the cap of {max_vars}")
    rows = np.array(list(itertools.product(values, repeat=len(names))), dtype=np.int64)
    rows = rows.reshape(len(values) ** len(names), len(names))
    return {n: rows[:, i] for i, n in enumerate(names)}


def _scan(premises: Sequence[Formula], goal: Formula, max_vars: int, two_valued: bool) -> ValidityReport:
    names = sorted(set().union(prop_vars(goal), *(prop_vars(g) for g in premises)))
    values = (0, 2) if two_valued else (0, 1, 2)
    env = _grid(names, values, max_vars)
    total = len(values) ** len(names)
    ok = np.ones(total, dtype=bool)
    for g in premises:
        ok &= np.broadcast_to(evaluate(g, env), (total,)) == 2
    bad = ok & (np.broadcast_to(evaluate(goal, env), (total,)) != 2)
    hits = np.flatnonzero(bad)
    if hits.size == 0:
        return ValidityReport(True, None, total, names)
    # product() enumerates in lexicographic order, so the first hit is the least countermodel
    i = int(hits[0])
    return ValidityReport(False, {n: TruthValue(int(env[n][i])) for n in names}, total, names)


def is_valid(phi: Formula, *, max_vars: int = DEFAULT_MAX_VARS, two_valued: bool = False) -> ValidityReport:
    return _scan((), phi, max_vars, two_valued)


def consequence(premises: Sequence[Formula], phi: Formula, *, max_vars: int = DEFAULT_MAX_VARS,
                two_valued: bool = False) -> ValidityReport:
    return _scan(tuple(premises), phi, max_vars, two_valued)


@dataclass(frozen=True)
class ImplicationRow:
    x: TruthValue
    y: TruthValue
    modal_form: TruthValue  # #~x \/ y \/ (nabla ~x /\ nabla y)
    lukasiewicz: TruthValue  # min(1, 1 - x + y)
    goedel: TruthValue       # the implication of the calculi

    @property
    def agrees_with_lukasiewicz(self) -> bool:
        return self.modal_form == self.lukasiewicz

    @property
    def agrees_with_goedel(self) -> bool:
        return self.modal_form == self.goedel


@dataclass
class ImplicationAudit:
    rows: List[ImplicationRow]

    @property
    def disagreements(self) -> List[ImplicationRow]:
        return [r for r in self.rows if not r.agrees_with_lukasiewicz]

    @property
    def equals_lukasiewicz(self) -> bool:
        return not self.disagreements

    @property
    def equals_goedel(self) -> bool:
        return all(r.agrees_with_goedel for r in self.rows)

    def to_dict(self) -> Dict:
        return {
            "rows": [{"x": str(r.x), "y": str(r.y), "modal_form": str(r.modal_form),
                      "lukasiewicz": str(r.lukasiewicz), "goedel": str(r.goedel),
                      "agrees_with_lukasiewicz": r.agrees_with_lukasiewicz}
                     for r in self.rows],
            "equals_lukasiewicz": self.equals_lukasiewicz,
            "equals_goedel": self.equals_goedel,
        }


def check_derived_implication_formulas() -> ImplicationAudit:
    """Tabulate ``#~x \\/ y \\/ (nabla ~x /\\ nabla y)`` against both implications on all 9 pairs."""
    rows = []
    for x, y in itertools.product(range(3), repeat=2):
        form = max(NEC[NEG[x]], y, min(NABLA[NEG[x]], NABLA[y]))
        rows.append(ImplicationRow(TruthValue(x), TruthValue(y), TruthValue(int(form)),
                                   TruthValue(int(LUKASIEWICZ[x, y])), TruthValue(int(IMP[x, y]))))
    return ImplicationAudit(rows)
