"""First-order structures over finite algebras and the interpretation of terms and formulas."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..algebra.core import FiniteAlgebra
from ..errors import AssignmentBudgetExceeded, MeetUndefined, SignatureError, UnboundVariable
from ..formula import (And, Const, Exists, Forall, Formula, Func, Imp, Meta, Nabla, Nec, Or, Pred, Term, TVar, Var,
                       free_individual_vars)

DEFAULT_MAX_ASSIGNMENTS = 1_000_000

Table = Dict[Tuple[int, ...], int]


@dataclass(eq=False)
class Structure:
    """A finite domain with constants, function tables into the domain, and predicate tables into the algebra."""

    algebra: FiniteAlgebra
    domain: Tuple[str, ...]
    consts: Dict[str, int] = field(default_factory=dict)
    funcs: Dict[str, Tuple[int, Table]] = field(default_factory=dict)
    preds: Dict[str, Tuple[int, Table]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if not self.domain:
            raise ValueError("the domain must be non-empty")
        self.domain = tuple(self.domain)

    @property
    def size(self) -> int:
        return len(self.domain)

    def element(self, name: str) -> int:
        return self.domain.index(name)


Assignment = Mapping[str, int]


def eval_term(S: Structure, v: Assignment, t: Term) -> int:
    if isinstance(t, TVar):
        if t.name not in v:
            raise UnboundVariable(t.name)
        return v[t.name]
    if isinstance(t, Const):
        if t.name not in S.consts:
            raise SignatureError(f"constant {t.name!r} is not interpreted")
        return S.consts[t.name]
    if isinstance(t, Func):
        if t.symbol not in S.funcs:
            raise SignatureError(f"function {t.symbol!r} is not interpreted")
        arity, table = S.funcs[t.symbol]
        if arity != len(t.args):
            raise SignatureError(f"{t.symbol} takes {arity} argument(s)")
        return table[tuple(eval_term(S, v, a) for a in t.args)]
    raise TypeError(f"not a term: {t!r}")


def infimum_or_raise(A: FiniteAlgebra, values: Sequence[int]) -> int:
    """Greatest lower bound of ``values``; MeetUndefined names a pair without one."""
    vals = sorted(set(values))
    m = A.infimum(vals)
    if m is not None:
        return m
    for x, y in itertools.combinations(vals, 2):
        if A.infimum((x, y)) is None:
            raise MeetUndefined((A.label(x), A.label(y)))
    raise MeetUndefined(tuple(A.label(x) for x in vals))


def supremum(A: FiniteAlgebra, values: Sequence[int]) -> int:
    out = values[0]
    for x in values[1:]:
        out = int(A.sup[out, x])
    return out


def eval_formula(S: Structure, v: Assignment, phi: Formula) -> int:
    """The algebra element that ``phi`` denotes under ``v``; quantifiers fold over the whole domain."""
    A = S.algebra
    if isinstance(phi, Pred):
        if phi.symbol not in S.preds:
            raise SignatureError(f"predicate {phi.symbol!r} is not interpreted")
        arity, table = S.preds[phi.symbol]
        if arity != len(phi.args):
            raise SignatureError(f"{phi.symbol} takes {arity} argument(s)")
        return table[tuple(eval_term(S, v, a) for a in phi.args)]
    if isinstance(phi, Imp):
        return int(A.imp[eval_formula(S, v, phi.lhs), eval_formula(S, v, phi.rhs)])
    if isinstance(phi, Or):
        return int(A.sup[eval_formula(S, v, phi.lhs), eval_formula(S, v, phi.rhs)])
    if isinstance(phi, And):
        return infimum_or_raise(A, [eval_formula(S, v, phi.lhs), eval_formula(S, v, phi.rhs)])
    if isinstance(phi, Nec):
        return int(A.nec[eval_formula(S, v, phi.sub)])
    if isinstance(phi, Nabla):
        return int(A.nab[eval_formula(S, v, phi.sub)])
    if isinstance(phi, (Forall, Exists)):
        values = [eval_formula(S, {**v, phi.var: a}, phi.body) for a in range(S.size)]
        return infimum_or_raise(A, values) if isinstance(phi, Forall) else supremum(A, values)
    if isinstance(phi, (Var, Meta)):
        raise SignatureError(f"{phi} has no first-order interpretation")
    raise TypeError(f"not a formula: {phi!r}")


def assignments(S: Structure, names: Sequence[str], cap: int = DEFAULT_MAX_ASSIGNMENTS):
    total = S.size ** len(names)
    if total > cap:
        raise AssignmentBudgetExceeded(f"{total} assignments exceed the cap of {cap}")
    for combo in itertools.product(range(S.size), repeat=len(names)):
        yield dict(zip(names, combo))


@dataclass
class TruthReport:
    true: bool
    value: Optional[int] = None  # the failing value, when not true
    witness: Optional[Dict[str, str]] = None
    assignments: int = 0

    def __bool__(self) -> bool:
        return self.true

    def to_dict(self, S: Optional[Structure] = None) -> Dict:
        value = None
        if self.value is not None:
            value = S.algebra.label(self.value) if S is not None else self.value
        return {"true": self.true, "value": value, "witness": self.witness, "assignments": self.assignments}


def is_true(S: Structure, phi: Formula, *, cap: int = DEFAULT_MAX_ASSIGNMENTS) -> TruthReport:
    """True when ``phi`` evaluates to 1 under every assignment of its free variables."""
    names = sorted(free_individual_vars(phi))
    count = 0
    for v in assignments(S, names, cap):
        count += 1
        val = eval_formula(S, v, phi)
        if val != S.algebra.one:
            return TruthReport(False, val, {k: S.domain[a] for k, a in v.items()}, count)
    return TruthReport(True, None, None, count)


def value_table(S: Structure, phi: Formula) -> Dict[Tuple[int, ...], int]:
    names = sorted(free_individual_vars(phi))
    return {tuple(v[n] for n in names): eval_formula(S, v, phi) for v in assignments(S, names)}


@dataclass
class ConsequenceReport:
    holds: bool
    checked: List[str]
    counterexample: Optional[str] = None
    witness: Optional[Dict[str, str]] = None

    def to_dict(self) -> Dict:
        return {"holds": self.holds, "structures": self.checked, "counterexample": self.counterexample,
                "witness": self.witness}


def semantic_consequence(premises: Sequence[Formula], phi: Formula,
                         structures: Sequence[Structure]) -> ConsequenceReport:
    """Check, structure by structure, that truth of every premise forces truth of ``phi``."""
    names = []
    for i, S in enumerate(structures):
        label = S.name or f"structure {i}"
        names.append(label)
        if all(is_true(S, g) for g in premises):
            r = is_true(S, phi)
            if not r:
                return ConsequenceReport(False, names, label, r.witness)
    return ConsequenceReport(True, names)
