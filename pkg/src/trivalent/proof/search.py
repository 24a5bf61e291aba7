"""Bounded forward proof search for the propositional calculi.

Formulas are interned as integer ids so that the saturation loop hashes small
tuples instead of whole trees.  The search is best-first on the number of distinct
lines a derivation needs, which makes it an iterative deepening on proof length
done in a single pass: a goal is reported as soon as its cheapest derivation is
settled, and exhaustion means nothing derivable within ``depth`` lines from the
instance pool reaches the goal.
"""

from __future__ import annotations

import heapq
import itertools
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..errors import ProofNotFound
from ..formula import And, Formula, Imp, Meta, Nec, Or, SchemaPattern, Var, check_signature, subformulas
from ..parser import format_formula
from .calculus import Calculus, get_calculus
from .derivation import Derivation, Justification, Line, check_derivation

Key = Tuple


class _Interner:
    def __init__(self):
        self.ids: Dict[Key, int] = {}
        self.keys: List[Key] = []
        self._formulas: Dict[int, Formula] = {}

    def intern(self, key: Key) -> int:
        i = self.ids.get(key)
        if i is None:
            i = self.ids[key] = len(self.keys)
            self.keys.append(key)
        return i

    def lookup(self, key: Key) -> Optional[int]:
        return self.ids.get(key)

    def add(self, f: Formula) -> int:
        if isinstance(f, Var):
            return self.intern(("var", f.name))
        if isinstance(f, Imp):
            return self.intern(("imp", self.add(f.lhs), self.add(f.rhs)))
        if isinstance(f, And):
            return self.intern(("and", self.add(f.lhs), self.add(f.rhs)))
        if isinstance(f, Or):
            return self.intern(("or", self.add(f.lhs), self.add(f.rhs)))
        if isinstance(f, Nec):
            return self.intern(("nec", self.add(f.sub)))
        raise ValueError(f"search handles propositional formulas only, got {type(f).__name__}")

    def formula(self, i: int) -> Formula:
        if i not in self._formulas:
            k = self.keys[i]
            if k[0] == "var":
                f: Formula = Var(k[1])
            elif k[0] == "nec":
                f = Nec(self.formula(k[1]))
            else:
                f = {"imp": Imp, "and": And, "or": Or}[k[0]](self.formula(k[1]), self.formula(k[2]))
            self._formulas[i] = f
        return self._formulas[i]


def _compile(pattern: Formula, names: Sequence[str]):
    """Turn a schema into a function from metavariable ids (in ``names`` order) to an instance id."""
    pos = {n: i for i, n in enumerate(names)}

    def build(p: Formula):
        if isinstance(p, Meta):
            k = pos[p.name]
            return lambda intern, args: args[k]
        if isinstance(p, Nec):
            sub = build(p.sub)
            return lambda intern, args: intern(("nec", sub(intern, args)))
        if isinstance(p, (Imp, And, Or)):
            tag = {Imp: "imp", And: "and", Or: "or"}[type(p)]
            lhs, rhs = build(p.lhs), build(p.rhs)
            return lambda intern, args: intern((tag, lhs(intern, args), rhs(intern, args)))
        raise ValueError("search schemas are propositional")

    return build(pattern)


def instance_domain(goal: Formula, premises: Sequence[Formula]) -> List[Formula]:
    """Subformulas of the goal and premises, plus one layer of necessity over each."""
    base = set()
    for f in (goal, *premises):
        base.update(subformulas(f))
    dom = base | {Nec(f) for f in base}
    return sorted(dom, key=lambda f: (len(format_formula(f)), format_formula(f)))


def search_derivation(goal: Formula, premises: Sequence[Formula] = (), calculus: str = "H3sup",
                      depth: int = 8, name: str = "") -> Derivation:
    """Find a derivation of ``goal`` from ``premises`` with at most ``depth`` lines.

    Raises :class:`ProofNotFound` when the budget is exhausted; that is never a claim
    that the goal is unprovable.
    """
    calc: Calculus = get_calculus(calculus)
    if calc.signature.first_order:
        raise ValueError("proof search is only available for the propositional calculi")
    premises = tuple(premises)
    for f in (goal, *premises):
        check_signature(f, calc.signature)

    table = _Interner()
    intern = table.intern
    goal_id = table.add(goal)
    premise_ids = [table.add(p) for p in premises]
    dom = [table.add(f) for f in instance_domain(goal, premises)]

    seq = itertools.count()
    heap: list = []

    def push(i: int, just: Tuple, support: FrozenSet[int]) -> None:
        if len(support) <= depth and i not in settled:
            heapq.heappush(heap, (len(support), next(seq), i, just, support))

    settled: Dict[int, Tuple[Tuple, FrozenSet[int]]] = {}
    for k, i in enumerate(premise_ids, 1):
        push(i, ("premise", k), frozenset([i]))
    for ax in calc.axioms:
        if not isinstance(ax, SchemaPattern):
            continue
        names = sorted(ax.metavariables)
        make = _compile(ax.formula, names)
        for args in itertools.product(dom, repeat=len(names)):
            i = make(intern, args)
            push(i, ("axiom", ax.id), frozenset([i]))
    # rule conclusions other than modus ponens must be formulas already seen while building instances
    majors: Dict[int, List[int]] = {}
    explored = 0

    while heap:
        cost, _, i, just, support = heapq.heappop(heap)
        if i in settled:
            continue
        settled[i] = (just, support)
        explored += 1
        if i == goal_id:
            return _rebuild(table, settled, goal_id, calc, premises, name)
        key = table.keys[i]
        for major in majors.get(i, ()):
            rhs = table.keys[major][2]
            push(rhs, ("mp", i, major), support | settled[major][1] | {rhs})
        if key[0] == "imp":
            majors.setdefault(key[1], []).append(i)
            if key[1] in settled:
                push(key[2], ("mp", key[1], i), support | settled[key[1]][1] | {key[2]})
        if "nec" in calc.rules:
            n = table.lookup(("nec", i))
            if n is not None:
                push(n, ("nec", i), support | {n})
        if "rand" in calc.rules and key[0] == "imp":
            conj = table.lookup(("and", key[1], key[2]))
            out = None if conj is None else table.lookup(("imp", key[1], conj))
            if out is not None:
                push(out, ("rand", i), support | {out})
    raise ProofNotFound(depth, explored)


def _rebuild(table: _Interner, settled, goal: int, calc: Calculus, premises, name: str) -> Derivation:
    number: Dict[int, int] = {}
    lines: List[Line] = []

    def emit(i: int) -> int:
        if i in number:
            return number[i]
        just = settled[i][0]
        kind = just[0]
        if kind == "axiom":
            j = Justification("axiom", (), just[1])
        elif kind == "premise":
            j = Justification("premise", (just[1],))
        else:
            refs = tuple(emit(r) for r in just[1:])
            j = Justification(kind, refs)
        lines.append(Line(table.formula(i), j))
        number[i] = len(lines)
        return number[i]

    emit(goal)
    d = Derivation(calc.id, tuple(premises), tuple(lines), name)
    report = check_derivation(d)
    if not report.ok:
        raise AssertionError(f"search produced a rejected derivation: {report.first_failure}")
    return d
