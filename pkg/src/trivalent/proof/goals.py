"""Fixed goal lists used to exercise search, checking and the matrix semantics together."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from ..formula import Formula
from ..parser import parse_formula
from .calculus import get_calculus


@dataclass(frozen=True)
class Goal:
    calculus: str
    text: str
    premises: Tuple[str, ...] = ()

    def parsed(self) -> Tuple[Formula, Tuple[Formula, ...]]:
        sig = get_calculus(self.calculus).signature
        return parse_formula(self.text, sig), tuple(parse_formula(p, sig) for p in self.premises)


PROVABLE: List[Goal] = [
    Goal("H3sup", "p -> p"),
    Goal("H3sup", "#p -> p"),
    Goal("H3sup", "p -> (q -> p)"),
    Goal("H3sup", "#p -> ##p"),
    Goal("H3sup", "p \\/ q -> q \\/ p"),
    Goal("H3sup", "p -> (q -> q)"),
    Goal("H3sup", "#p", ("p",)),
    Goal("H3sup", "q", ("p", "p -> q")),
    Goal("H3sup", "p -> r", ("p -> q", "q -> r")),
    Goal("iH3", "p -> (p /\\ q)", ("p -> q",)),
]

# each of these has a countermodel over the three-element chain
INVALID: List[Goal] = [
    Goal("H3sup", "#p -> q"),
    Goal("H3sup", "p"),
    Goal("H3sup", "(p -> q) -> p"),
    Goal("H3sup", "p -> #p"),
    Goal("H3sup", "nabla p -> p"),
    Goal("H3sup", "((p -> q) -> p) -> p"),
    Goal("H3sup", "p \\/ (p -> q)"),
    Goal("H3sup", "nabla p -> #p"),
    Goal("H3sup", "(p -> q) -> (q -> p)"),
    Goal("iH3", "p /\\ (p -> q) -> #q"),
]
