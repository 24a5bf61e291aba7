"""Axiom schemas and rules of the three Hilbert calculi."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from ..formula import (INF, QSUP, SUP, Exists, Forall, Formula, Imp, Match, Meta, Nec, SchemaPattern, Signature,
                       find_substituted_term, is_free_for, match_schema)
from ..parser import format_formula, format_term, parse_schema


@dataclass(frozen=True)
class SubstitutionAxiom:
    """``phi(x/t) -> exists x. phi`` (``instance_on_left``) or ``forall x. phi -> phi(x/t)``.

    Matching recovers phi, x and t from the instance; the side condition is that t is
    free for x in phi.
    """

    id: str
    instance_on_left: bool

    def split(self, f: Formula) -> Optional[Tuple[Formula, str, Formula]]:
        """(phi, x, instance) when ``f`` has the right outer shape."""
        if not isinstance(f, Imp):
            return None
        quant, inst = (f.rhs, f.lhs) if self.instance_on_left else (f.lhs, f.rhs)
        wanted = Exists if self.instance_on_left else Forall
        if not isinstance(quant, wanted):
            return None
        return quant.body, quant.var, inst


@dataclass(frozen=True)
class AxiomMatch:
    id: str
    mapping: Match
    failure: Optional[str] = None  # set when the shape fits but a side condition fails


Axiom = Union[SchemaPattern, SubstitutionAxiom]


@dataclass(frozen=True)
class Calculus:
    id: str
    signature: Signature
    axioms: Tuple[Axiom, ...]
    rules: FrozenSet[str]
    k_axiom: str  # label of a -> (b -> a)
    s_axiom: str  # label of the self-distribution schema

    @property
    def axiom_ids(self) -> List[str]:
        out: List[str] = []
        for a in self.axioms:
            if a.id not in out:
                out.append(a.id)
        return out

    def schemas(self, axiom_id: str) -> List[Axiom]:
        return [a for a in self.axioms if a.id == axiom_id]

    def match_axiom(self, f: Formula, axiom_id: Optional[str] = None) -> Optional[AxiomMatch]:
        """First axiom that ``f`` instantiates; a side-condition failure is returned only if nothing else fits."""
        pool = self.axioms if axiom_id is None else self.schemas(axiom_id)
        near = None
        for ax in pool:
            if isinstance(ax, SchemaPattern):
                m = match_schema(ax, f)
                if m is not None:
                    return AxiomMatch(ax.id, m)
                continue
            parts = ax.split(f)
            if parts is None:
                continue
            body, x, inst = parts
            t = find_substituted_term(body, x, inst)
            if t is None:
                continue
            if not is_free_for(t, x, body):
                near = near or AxiomMatch(ax.id, {"φ": body, "x": x},
                                          f"side condition: {format_term(t)} is not free for {x} in "
                                          f"{format_formula(body)}")
                continue
            return AxiomMatch(ax.id, {"φ": body, "x": x})
        return near

    def describe(self) -> Dict:
        return {
            "id": self.id,
            "signature": str(self.signature),
            "axioms": [{"id": a.id, "schema": format_formula(a.formula, unicode=True)}
                       if isinstance(a, SchemaPattern) else {"id": a.id, "schema": "substitution instance"}
                       for a in self.axioms],
            "rules": sorted(self.rules),
        }


def _schemas(sig: Signature, table: List[Tuple[str, str]]) -> List[SchemaPattern]:
    return [SchemaPattern(i, parse_schema(text, sig)) for i, text in table]


# the third schema is the same for both propositional calculi (see the decisions log)
_IT3 = "((α -> β) -> γ) -> (((γ -> α) -> γ) -> γ)"

# The ninth modal schema in its literal form takes the value 0 at α=1, β=1/2, so it
# cannot be an axiom of a sound calculus.  NINTH is the valid schema of the same
# shape that replaces it; see the decisions log.
NINTH_AS_PRINTED = "((β -> #β) -> (α -> #(α -> β))) -> #(α -> β)"
NINTH = "((β -> #β) -> #α) -> (((α -> #α) -> #β) -> #(α -> β))"

_MODAL = [
    ("7", "#α -> α"),
    ("8", "#(#α -> β) -> (#α -> #β)"),
    ("9", NINTH),
    ("10", "((#α -> β) -> γ) -> ((#α -> γ) -> γ)"),
]

_INF_TABLE = [
    ("A1", "α -> (β -> α)"),
    ("A2", "(α -> (β -> γ)) -> ((α -> β) -> (α -> γ))"),
    ("A3", _IT3),
    ("Ai4", "(α /\\ β) -> β"),
    ("Ai5", "(α /\\ β) -> α"),
    ("Ai6", "α -> (β -> (α /\\ β))"),
] + [("Ai" + n, s) for n, s in _MODAL]

_SUP_TABLE = [
    ("Ax1", "α -> (β -> α)"),
    ("Ax2", "(α -> (β -> γ)) -> ((α -> β) -> (α -> γ))"),
    ("Ax3", _IT3),
    ("Ax4", "α -> (α \\/ β)"),
    ("Ax5", "β -> (α \\/ β)"),
    ("Ax6", "(α -> γ) -> ((β -> γ) -> ((α \\/ β) -> γ))"),
] + [("Ax" + n, s) for n, s in _MODAL]


def _quantifier_schemas() -> List[Axiom]:
    x, phi = Meta("x"), Meta("φ")
    return [
        SubstitutionAxiom("Ax11", instance_on_left=True),
        SubstitutionAxiom("Ax12", instance_on_left=False),
        # each biconditional contributes both implications
        SchemaPattern("Ax13", Imp(Nec(Exists(x, phi)), Exists(x, Nec(phi)))),
        SchemaPattern("Ax13", Imp(Exists(x, Nec(phi)), Nec(Exists(x, phi)))),
        SchemaPattern("Ax14", Imp(Nec(Forall(x, phi)), Forall(x, Nec(phi)))),
        SchemaPattern("Ax14", Imp(Forall(x, Nec(phi)), Nec(Forall(x, phi)))),
    ]


IH3 = Calculus("iH3", INF, tuple(_schemas(INF, _INF_TABLE)), frozenset({"mp", "nec", "rand"}), "A1", "A2")
H3SUP = Calculus("H3sup", SUP, tuple(_schemas(SUP, _SUP_TABLE)), frozenset({"mp", "nec"}), "Ax1", "Ax2")
QH3SUP = Calculus("QH3sup", QSUP, tuple(_schemas(SUP, _SUP_TABLE)) + tuple(_quantifier_schemas()),
                  frozenset({"mp", "nec", "r3", "r4"}), "Ax1", "Ax2")

CALCULI: Dict[str, Calculus] = {c.id: c for c in (IH3, H3SUP, QH3SUP)}


def get_calculus(name: str) -> Calculus:
    try:
        return CALCULI[name]
    except KeyError:
        raise ValueError(f"unknown calculus {name!r}; choose from {', '.join(CALCULI)}") from None
