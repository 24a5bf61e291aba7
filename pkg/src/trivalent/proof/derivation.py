"""Derivations as lists of justified lines, and a line-by-line checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..errors import SignatureError
from ..formula import And, Exists, Forall, Formula, Imp, Nec, check_signature, free_individual_vars
from ..parser import format_formula
from .calculus import get_calculus

RULES = ("axiom", "premise", "mp", "nec", "rand", "r3", "r4")


@dataclass(frozen=True)
class Justification:
    """How a line was obtained.  ``refs`` are 1-based line numbers, or the premise number for premises."""

    kind: str
    refs: Tuple[int, ...] = ()
    schema: Optional[str] = None
    var: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == "axiom":
            return self.schema or "axiom"
        if self.kind == "premise":
            return f"premise {self.refs[0]}"
        tail = f" {self.var}" if self.var else ""
        return f"{self.kind.upper()} {','.join(map(str, self.refs))}{tail}"


@dataclass(frozen=True)
class Line:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class Derivation:
    calculus: str
    premises: Tuple[Formula, ...]
    lines: Tuple[Line, ...]
    name: str = ""
    constants: Tuple[str, ...] = ()

    @property
    def conclusion(self) -> Optional[Formula]:
        return self.lines[-1].formula if self.lines else None

    def __len__(self) -> int:
        return len(self.lines)

    def replace_line(self, number: int, line: Line) -> "Derivation":
        lines = list(self.lines)
        lines[number - 1] = line
        return Derivation(self.calculus, self.premises, tuple(lines), self.name, self.constants)

    def pretty(self) -> str:
        width = len(str(len(self.lines)))
        rows = [f"{i:>{width}}. {format_formula(l.formula)}    [{l.just}]" for i, l in enumerate(self.lines, 1)]
        return "\n".join(rows)


@dataclass(frozen=True)
class LineVerdict:
    line: int
    ok: bool
    reason: str = ""
    axiom: Optional[str] = None


@dataclass
class CheckReport:
    name: str
    calculus: str
    verdicts: List[LineVerdict] = field(default_factory=list)
    conclusion: Optional[Formula] = None

    @property
    def ok(self) -> bool:
        return bool(self.verdicts) and all(v.ok for v in self.verdicts)

    @property
    def first_failure(self) -> Optional[LineVerdict]:
        return next((v for v in self.verdicts if not v.ok), None)

    def to_dict(self) -> Dict:
        bad = self.first_failure
        return {
            "name": self.name,
            "calculus": self.calculus,
            "accepted": self.ok,
            "conclusion": None if self.conclusion is None else format_formula(self.conclusion),
            "first_failure": None if bad is None else {"line": bad.line, "reason": bad.reason},
            "lines": [{"line": v.line, "ok": v.ok, "reason": v.reason or None, "axiom": v.axiom}
                      for v in self.verdicts],
        }


def _check_line(d: Derivation, n: int) -> LineVerdict:
    calc = get_calculus(d.calculus)
    line = d.lines[n - 1]
    f, j = line.formula, line.just

    def bad(reason: str) -> LineVerdict:
        return LineVerdict(n, False, reason)

    try:
        check_signature(f, calc.signature)
    except SignatureError as e:
        return bad(f"signature: {e}")
    if j.kind not in RULES:
        return bad(f"unknown justification {j.kind!r}")
    if j.kind not in ("axiom", "premise") and j.kind not in calc.rules:
        return bad(f"rule {j.kind} is not available in {calc.id}")

    if j.kind == "axiom":
        if j.schema is not None and j.schema not in calc.axiom_ids:
            return bad(f"{j.schema} is not an axiom of {calc.id}")
        m = calc.match_axiom(f, j.schema)
        if m is None:
            target = j.schema or f"any axiom of {calc.id}"
            return bad(f"not an instance of {target}")
        if m.failure:
            return bad(m.failure)
        return LineVerdict(n, True, axiom=m.id)

    if j.kind == "premise":
        k = j.refs[0] if j.refs else 0
        if not 1 <= k <= len(d.premises):
            return bad(f"there is no premise {k}")
        if d.premises[k - 1] != f:
            return bad(f"formula differs from premise {k}")
        return LineVerdict(n, True)

    for r in j.refs:
        if not 1 <= r < n:
            return bad(f"cites line {r}, which does not precede line {n}")
    cited = [d.lines[r - 1].formula for r in j.refs]

    if j.kind == "mp":
        minor, major = cited
        if major != Imp(minor, f):
            return bad(f"line {j.refs[1]} is not line {j.refs[0]} -> this line")
        return LineVerdict(n, True)
    if j.kind == "nec":
        if f != Nec(cited[0]):
            return bad(f"not the necessitation of line {j.refs[0]}")
        return LineVerdict(n, True)
    if j.kind == "rand":
        src = cited[0]
        if not isinstance(src, Imp):
            return bad(f"line {j.refs[0]} is not an implication")
        if f != Imp(src.lhs, And(src.lhs, src.rhs)):
            return bad(f"not a -> (a /\\ b) for line {j.refs[0]}")
        return LineVerdict(n, True)

    # quantifier rules
    src, x = cited[0], j.var
    if not isinstance(src, Imp) or not isinstance(f, Imp):
        return bad(f"{j.kind.upper()} needs implications")
    if j.kind == "r3":
        if f != Imp(Exists(x, src.lhs), src.rhs):
            return bad(f"not exists {x}. a -> b for line {j.refs[0]}")
        if x in free_individual_vars(src.rhs):
            return bad(f"side condition: {x} occurs free in the consequent")
        return LineVerdict(n, True)
    if f != Imp(src.lhs, Forall(x, src.rhs)):
        return bad(f"not a -> forall {x}. b for line {j.refs[0]}")
    if x in free_individual_vars(src.lhs):
        return bad(f"side condition: {x} occurs free in the antecedent")
    return LineVerdict(n, True)


def check_derivation(d: Derivation) -> CheckReport:
    """Verify every line on its own; the derivation is accepted when all lines are."""
    get_calculus(d.calculus)
    report = CheckReport(d.name, d.calculus, conclusion=d.conclusion)
    for n in range(1, len(d.lines) + 1):
        report.verdicts.append(_check_line(d, n))
    return report
