"""Systematically broken derivations, each with the line that must fail and why."""

from dataclasses import dataclass, replace
from typing import List

from trivalent.formula import QSUP
from trivalent.parser import parse_formula
from trivalent.proof import Derivation, Justification, Line, ProofBuilder, lemma_corpus


@dataclass(frozen=True)
class Mutant:
    name: str
    family: str
    derivation: Derivation
    line: int
    reason: str  # fragment expected in the checker's message


def _shift(d: Derivation, n: int, refs) -> Derivation:
    line = d.lines[n - 1]
    return d.replace_line(n, Line(line.formula, replace(line.just, refs=tuple(refs))))


def _relabel(d: Derivation, n: int, schema: str) -> Derivation:
    line = d.lines[n - 1]
    return d.replace_line(n, Line(line.formula, replace(line.just, schema=schema)))


def _last(d: Derivation, kind: str) -> int:
    return max(i for i, l in enumerate(d.lines, 1) if l.just.kind == kind)


def index_shifts() -> List[Mutant]:
    corpus = lemma_corpus()
    out = []
    for name in ("Mi1", "Mi4", "Mi11", "Mi27", "Ps1", "Ps2", "Rv3"):
        d = corpus[name]
        n = _last(d, "mp")
        minor, major = d.lines[n - 1].just.refs
        shifted = minor - 1 if minor > 1 else minor + 1
        out.append(Mutant(f"{name}: MP minor {minor}->{shifted}", "index shift", _shift(d, n, (shifted, major)),
                          n, "is not line"))
    d = corpus["NEC"]
    out.append(Mutant("NEC: cites itself", "index shift", _shift(d, 2, (2,)), 2, "does not precede"))
    d = corpus["Rand"]
    out.append(Mutant("Rand: cites a later line", "index shift", _shift(d, 2, (3,)), 2, "does not precede"))
    d = corpus["Ax12c"]
    out.append(Mutant("Ax12c: NEC of the wrong line", "index shift", _shift(d, 4, (2,)), 4,
                      "not the necessitation"))
    return out


def schema_swaps() -> List[Mutant]:
    corpus = lemma_corpus()
    cases = [("Mi1", 2, "A2"), ("Ps1", 2, "Ax4"), ("Ai7", 1, "Ai8"), ("Ax13", 1, "Ax14"), ("R4", 1, "Ax11")]
    return [Mutant(f"{name}: line {n} cited as {schema}", "schema swap", _relabel(corpus[name], n, schema), n,
                   f"not an instance of {schema}")
            for name, n, schema in cases]


def _fo(text: str):
    return parse_formula(text, QSUP)


def _deriv(name: str, lines) -> Derivation:
    return Derivation("QH3sup", (), tuple(Line(_fo(f), j) for f, j in lines), name)


def side_condition_breaks() -> List[Mutant]:
    out = []
    # x free in the antecedent of the R4 premise
    d = _deriv("R4 free antecedent", [
        ("P(x) -> exists x. P(x)", Justification("axiom", (), "Ax11")),
        ("P(x) -> forall x. exists x. P(x)", Justification("r4", (1,), var="x"))])
    out.append(Mutant(d.name, "side condition", d, 2, "side condition"))
    # R4 on the identity P(x) -> P(x)
    b = ProofBuilder("QH3sup")
    b.identity(_fo("P(x)"))
    base = b.build()
    bad = Line(_fo("P(x) -> forall x. P(x)"), Justification("r4", (len(base),), var="x"))
    d = Derivation("QH3sup", (), base.lines + (bad,), "R4 on P(x) -> P(x)")
    out.append(Mutant(d.name, "side condition", d, len(d.lines), "side condition"))
    # x free in the consequent of the R3 premise
    d = _deriv("R3 free consequent", [
        ("(forall x. P(x)) -> P(x)", Justification("axiom", (), "Ax12")),
        ("(exists x. forall x. P(x)) -> P(x)", Justification("r3", (1,), var="x"))])
    out.append(Mutant(d.name, "side condition", d, 2, "side condition"))
    # substitution terms that get captured
    d = _deriv("Ax11 capture", [
        ("(exists y. R(y, y)) -> exists x. exists y. R(x, y)", Justification("axiom", (), "Ax11"))])
    out.append(Mutant(d.name, "side condition", d, 1, "not free for x"))
    d = _deriv("Ax12 capture", [
        ("(forall x. forall y. R(x, y)) -> forall y. R(y, y)", Justification("axiom", (), "Ax12"))])
    out.append(Mutant(d.name, "side condition", d, 1, "not free for x"))
    return out


def all_mutants() -> List[Mutant]:
    return index_shifts() + schema_swaps() + side_condition_breaks()
