"""The fixed family of small algebras used by the property suites."""

from __future__ import annotations

from typing import List

from ..formula import Kind
from .core import FiniteAlgebra, all_subalgebras, c2, c3, power, subalgebra


def corpus(kind: Kind = Kind.SUP) -> List[FiniteAlgebra]:
    """C2, C3, C3^2, C3^3 and every subalgebra of C3^2 (with more than one element)."""
    base = [c2(kind), c3(kind), power(c3(kind), 2), power(c3(kind), 3)]
    square = base[2]
    subs = []
    for elems in all_subalgebras(square):
        if len(elems) > 1:
            label = "{" + ",".join(square.label(e) for e in elems) + "}"
            subs.append(subalgebra(square, elems, name=f"C3^2|{label}"))
    return base + subs
