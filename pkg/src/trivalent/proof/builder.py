"""Incremental construction of derivations, with a deduction-theorem step for discharging hypotheses."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from ..formula import Formula, Imp, Nec
from ..parser import parse_formula
from .calculus import get_calculus
from .derivation import Derivation, Justification, Line

Ref = int


class ProofBuilder:
    """Append-only derivation under construction.  Identical formulas are never written twice."""

    def __init__(self, calculus: str, premises: Sequence[Union[str, Formula]] = (), constants: Sequence[str] = ()):
        self.calc = get_calculus(calculus)
        self.constants = tuple(constants)
        self.premises = tuple(self.f(p) for p in premises)
        self.lines: List[Line] = []
        self._index: Dict[Formula, int] = {}

    def f(self, x: Union[str, Formula]) -> Formula:
        return parse_formula(x, self.calc.signature, constants=self.constants) if isinstance(x, str) else x

    def formula(self, ref: Ref) -> Formula:
        return self.lines[ref - 1].formula

    def _add(self, f: Formula, just: Justification) -> Ref:
        if f in self._index:
            return self._index[f]
        self.lines.append(Line(f, just))
        self._index[f] = len(self.lines)
        return len(self.lines)

    def axiom(self, f: Union[str, Formula], schema: Optional[str] = None) -> Ref:
        f = self.f(f)
        m = self.calc.match_axiom(f, schema)
        if m is None or m.failure:
            raise ValueError(f"{f} is not an axiom instance of {schema or self.calc.id}")
        return self._add(f, Justification("axiom", (), schema or m.id))

    def premise(self, k: int) -> Ref:
        return self._add(self.premises[k - 1], Justification("premise", (k,)))

    def mp(self, minor: Ref, major: Ref) -> Ref:
        imp = self.formula(major)
        if not (isinstance(imp, Imp) and imp.lhs == self.formula(minor)):
            raise ValueError(f"line {major} does not have line {minor} as antecedent")
        return self._add(imp.rhs, Justification("mp", (minor, major)))

    def nec(self, ref: Ref) -> Ref:
        return self._add(Nec(self.formula(ref)), Justification("nec", (ref,)))

    def rule(self, kind: str, ref: Ref, result: Formula, var: Optional[str] = None) -> Ref:
        return self._add(result, Justification(kind, (ref,), None, var))

    # -- derived steps -------------------------------------------------------

    def k(self, a: Formula, b: Formula) -> Ref:
        return self.axiom(Imp(a, Imp(b, a)), self.calc.k_axiom)

    def s(self, a: Formula, b: Formula, c: Formula) -> Ref:
        return self.axiom(Imp(Imp(a, Imp(b, c)), Imp(Imp(a, b), Imp(a, c))), self.calc.s_axiom)

    def identity(self, a: Formula) -> Ref:
        """``a -> a`` in five lines."""
        aa = Imp(a, a)
        s = self.s(a, aa, a)
        k1 = self.k(a, aa)
        step = self.mp(k1, s)
        k2 = self.k(a, a)
        return self.mp(k2, step)

    def weaken(self, ref: Ref, a: Formula) -> Ref:
        """From ``b`` get ``a -> b``."""
        b = self.formula(ref)
        return self.mp(ref, self.k(b, a))

    def chain(self, ab: Ref, bc: Ref) -> Ref:
        """From ``a -> b`` and ``b -> c`` get ``a -> c``."""
        a, b = self.formula(ab).lhs, self.formula(ab).rhs
        c = self.formula(bc).rhs
        lifted = self.weaken(bc, a)                 # a -> (b -> c)
        dist = self.mp(lifted, self.s(a, b, c))     # (a -> b) -> (a -> c)
        return self.mp(ab, dist)

    def build(self, name: str = "") -> Derivation:
        return Derivation(self.calc.id, self.premises, tuple(self.lines), name, self.constants)


def discharge(d: Derivation, hypothesis: int, name: str = "") -> Derivation:
    """Deduction theorem: turn a derivation of ``b`` from premises including ``a`` into one of ``a -> b``.

    ``hypothesis`` is the 1-based number of the premise ``a``; it is dropped from the
    premise list.  Necessitation may only be applied to lines that do not depend on ``a``;
    the quantifier rules are not supported.
    """
    a = d.premises[hypothesis - 1]
    rest = d.premises[:hypothesis - 1] + d.premises[hypothesis:]
    out = ProofBuilder(d.calculus, rest, d.constants)
    renumber = {k: i for i, k in enumerate((k for k in range(1, len(d.premises) + 1) if k != hypothesis), 1)}
    depends: Set[int] = set()
    # plain[n]: line of out holding the original line n (only for lines free of the hypothesis)
    plain: Dict[int, Ref] = {}
    # lifted[n]: line of out holding a -> (original line n)
    lifted: Dict[int, Ref] = {}

    def ensure_lifted(n: int) -> Ref:
        if n not in lifted:
            lifted[n] = out.weaken(plain[n], a)
        return lifted[n]

    for n, line in enumerate(d.lines, 1):
        f, j = line.formula, line.just
        if j.kind == "premise" and j.refs[0] == hypothesis:
            depends.add(n)
            lifted[n] = out.identity(a)
        elif j.kind == "premise":
            plain[n] = out.premise(renumber[j.refs[0]])
        elif j.kind == "axiom":
            plain[n] = out.axiom(f, j.schema)
        elif j.kind == "mp":
            minor, major = j.refs
            if minor in depends or major in depends:
                depends.add(n)
                lm, lM = ensure_lifted(minor), ensure_lifted(major)
                dist = out.mp(lM, out.s(a, d.lines[minor - 1].formula, f))
                lifted[n] = out.mp(lm, dist)
            else:
                plain[n] = out.mp(plain[minor], plain[major])
        elif j.refs and any(r in depends for r in j.refs):
            raise ValueError(f"line {n} applies {j.kind} to a line that depends on the hypothesis")
        elif j.kind == "nec":
            plain[n] = out.nec(plain[j.refs[0]])
        else:
            plain[n] = out.rule(j.kind, plain[j.refs[0]], f, j.var)
    last = len(d.lines)
    ensure_lifted(last)
    result = out.build(name or d.name)
    # keep only what the final line needs, so the conclusion is last
    return prune(result, lifted[last])


def prune(d: Derivation, target: Ref) -> Derivation:
    """Drop lines that ``target`` does not depend on, renumber, and end at ``target``."""
    needed: Set[int] = set()
    stack = [target]
    while stack:
        n = stack.pop()
        if n in needed:
            continue
        needed.add(n)
        j = d.lines[n - 1].just
        if j.kind not in ("axiom", "premise"):
            stack.extend(j.refs)
    order = sorted(needed)
    new_no = {old: i for i, old in enumerate(order, 1)}
    lines: List[Line] = []
    for old in order:
        line = d.lines[old - 1]
        j = line.just
        refs: Tuple[int, ...] = j.refs if j.kind in ("axiom", "premise") else tuple(new_no[r] for r in j.refs)
        lines.append(Line(line.formula, Justification(j.kind, refs, j.schema, j.var)))
    if order[-1] != target:
        raise AssertionError("target must be the latest needed line")
    return Derivation(d.calculus, d.premises, tuple(lines), d.name, d.constants)
