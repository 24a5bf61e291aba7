"""Exhaustive identity checking on finite algebras.

Each law is a vectorised predicate over element grids, so a three-variable law
on a 27-element algebra is a single numpy evaluation over 27**3 tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..formula import Kind
from .core import FiniteAlgebra


class Ops:
    """Operation lookups that accept scalars or index arrays."""

    def __init__(self, A: FiniteAlgebra):
        self.A = A
        self.one = A.one
        self._nab = A.nab
        self._sup = A.sup

    def imp(self, x, y):
        return self.A.imp[x, y]

    def nec(self, x):
        return self.A.nec[x]

    def nab(self, x):
        return self._nab[x]

    def meet(self, x, y):
        return self.A.meet[x, y]

    def join(self, x, y):
        return self._sup[x, y]

    def wimp(self, x, y):
        return self.A.imp[self.A.nec[x], y]

    def eq1(self, x):
        return x == self.one

    def le(self, x, y):
        return self.A.imp[x, y] == self.one


@dataclass(frozen=True)
class Law:
    name: str
    arity: int
    holds: Callable
    statement: str = ""


@dataclass(frozen=True)
class LawResult:
    name: str
    ok: bool
    witness: Optional[Tuple[int, ...]] = None
    statement: str = ""


@dataclass
class VerificationReport:
    algebra: str
    kind: Kind
    results: List[LawResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> List[LawResult]:
        return [r for r in self.results if not r.ok]

    def __getitem__(self, name: str) -> LawResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> Dict:
        return {"algebra": self.algebra, "kind": self.kind.value, "ok": self.ok,
                "laws": [{"name": r.name, "ok": r.ok, "witness": list(r.witness) if r.witness else None}
                         for r in self.results]}


def check_laws(A: FiniteAlgebra, laws: Sequence[Law]) -> List[LawResult]:
    o = Ops(A)
    out = []
    for law in laws:
        grid = np.indices((A.size,) * law.arity).reshape(law.arity, -1)
        res = np.broadcast_to(np.asarray(law.holds(o, *grid), dtype=bool), grid.shape[1:])
        bad = np.flatnonzero(~res)
        witness = tuple(int(g[bad[0]]) for g in grid) if bad.size else None
        out.append(LawResult(law.name, witness is None, witness, law.statement))
    return out


def _implies(a, b):
    return ~a | b


HILBERT = [
    Law("H1", 2, lambda o, x, y: o.eq1(o.imp(x, o.imp(y, x))), "x->(y->x)=1"),
    Law("H2", 3, lambda o, x, y, z: o.eq1(o.imp(o.imp(x, o.imp(y, z)), o.imp(o.imp(x, y), o.imp(x, z)))),
        "(x->(y->z))->((x->y)->(x->z))=1"),
    Law("H3", 2, lambda o, x, y: _implies(o.eq1(o.imp(x, y)) & o.eq1(o.imp(y, x)), x == y),
        "x->y=1 and y->x=1 imply x=y"),
    Law("IT3", 3, lambda o, x, y, z: o.eq1(o.imp(o.imp(o.imp(x, y), z),
                                                 o.imp(o.imp(o.imp(z, x), z), z))),
        "((x->y)->z)->(((z->x)->z)->z)=1"),
]

MODAL = [
    Law("M1", 1, lambda o, x: o.eq1(o.imp(o.nec(x), x)), "#x->x=1"),
    Law("M2", 2, lambda o, x, y: o.imp(o.imp(o.imp(y, o.nec(y)), o.imp(x, o.nec(o.nec(x)))), o.nec(o.imp(x, y)))
        == o.imp(o.nec(x), o.nec(o.nec(y))),
        "((y->#y)->(x->##x))->#(x->y) = #x->##y"),
    Law("M3", 2, lambda o, x, y: o.imp(o.imp(o.nec(x), o.nec(y)), o.nec(x)) == o.nec(x),
        "(#x->#y)->#x = #x"),
]

INF_LAWS = [
    Law("iH1", 3, lambda o, x, y, z: o.meet(x, o.meet(y, z)) == o.meet(o.meet(x, y), z), "x/\\(y/\\z)=(x/\\y)/\\z"),
    Law("iH2", 1, lambda o, x: o.meet(x, x) == x, "x/\\x=x"),
    Law("iH3", 2, lambda o, x, y: o.meet(x, o.imp(x, y)) == o.meet(x, y), "x/\\(x->y)=x/\\y"),
    Law("iH4", 3, lambda o, x, y, z: o.eq1(o.imp(o.imp(x, o.meet(y, z)), o.meet(o.imp(x, z), o.imp(x, y)))),
        "(x->(y/\\z))->((x->z)/\\(x->y))=1"),
]


def _nec_meet_law(A: FiniteAlgebra) -> Law:
    """``#(x/\\y) = #x /\\ #y`` wherever the infimum of x, y exists in the order."""
    n = A.size
    inf = np.full((n, n), -1, dtype=np.int64)
    for x in range(n):
        for y in range(n):
            m = A.infimum((x, y))
            inf[x, y] = -1 if m is None else m

    def holds(o, x, y):
        m = inf[x, y]
        mn = inf[o.nec(x), o.nec(y)]
        lhs = o.nec(np.where(m < 0, 0, m))
        return (m < 0) | ((mn >= 0) & (lhs == mn))

    return Law("nec-inf", 2, holds, "#(x/\\y)=#x/\\#y when x/\\y exists")


SUP_BASE = [
    Law("join-assoc", 3, lambda o, x, y, z: o.join(x, o.join(y, z)) == o.join(o.join(x, y), z)),
    Law("join-comm", 2, lambda o, x, y: o.join(x, y) == o.join(y, x)),
    Law("join-idem", 1, lambda o, x: o.join(x, x) == x),
    Law("join-top", 1, lambda o, x: o.join(x, o.one) == o.one, "x\\/1=1"),
    Law("a", 2, lambda o, x, y: o.eq1(o.imp(x, o.join(x, y))), "x->(x\\/y)=1"),
    Law("b", 2, lambda o, x, y: o.eq1(o.imp(o.imp(x, y), o.imp(o.join(x, y), y))), "(x->y)->((x\\/y)->y)=1"),
]

# properties 1-15 of iH3-triangle algebras
INF_PROPERTIES = [
    Law("P1", 2, lambda o, x, y: o.eq1(o.imp(x, y)) == (o.meet(x, y) == x), "x<=y iff x->y=1 iff x/\\y=x"),
    Law("P2", 3, lambda o, x, y, z: o.imp(x, o.imp(y, z)) == o.imp(o.meet(x, y), z), "x->(y->z)=(x/\\y)->z"),
    Law("P3", 2, lambda o, x, y: o.imp(x, o.meet(x, y)) == o.imp(x, y), "x->(x/\\y)=x->y"),
    Law("P4", 2, lambda o, x, y: o.eq1(o.imp(o.meet(x, y), o.imp(x, y))), "(x/\\y)->(x->y)=1"),
    Law("P5", 3, lambda o, x, y, z: o.eq1(o.imp(o.imp(x, y), o.imp(o.meet(z, x), o.meet(z, y)))),
        "(x->y)->((z/\\x)->(z/\\y))=1"),
    Law("P6", 2, lambda o, x, y: o.eq1(o.imp(o.meet(x, y), x)), "(x/\\y)->x=1"),
    Law("P7", 2, lambda o, x, y: o.eq1(o.imp(o.meet(x, y), y)), "(x/\\y)->y=1"),
    Law("P8", 1, lambda o, x: o.meet(o.one, x) == x, "1/\\x=x"),
    Law("P9", 2, lambda o, x, y: o.eq1(o.imp(x, o.imp(y, o.meet(x, y)))), "x->(y->(x/\\y))=1"),
    Law("P10", 1, lambda o, x: o.eq1(o.nec(np.full_like(x, o.one))), "#1=1"),
    Law("P11", 2, lambda o, x, y: o.eq1(o.imp(o.nec(o.imp(x, y)), o.imp(o.nec(x), o.nec(y)))),
        "#(x->y)->(#x->#y)=1"),
    Law("P12", 2, lambda o, x, y: o.nab(o.meet(x, y)) == o.meet(o.nab(x), o.nab(y)), "nabla(x/\\y)=nabla x/\\nabla y"),
    Law("P13", 2, lambda o, x, y: o.nec(o.meet(x, y)) == o.meet(o.nec(x), o.nec(y)), "#(x/\\y)=#x/\\#y"),
    Law("P14", 1, lambda o, x: o.meet(o.imp(o.nab(x), x), o.nab(x)) == x, "(nabla x->x)/\\nabla x=x"),
    Law("P15", 2, lambda o, x, y: o.imp(x, o.meet(x, y)) == o.imp(x, y), "x->(x/\\y)=x->y"),
]

SUP_PROPERTIES = [
    Law("HV1", 2, lambda o, a, b: _implies(o.eq1(o.imp(a, b)), o.join(a, b) == b), "a->b=1 implies a\\/b=b"),
    Law("HV2", 3, lambda o, a, b, c: _implies(o.eq1(o.imp(a, c)) & o.eq1(o.imp(b, c)),
                                               o.eq1(o.imp(o.join(a, b), c))),
        "a->c=1 and b->c=1 imply (a\\/b)->c=1"),
    Law("HV3", 2, lambda o, a, b: o.eq1(o.imp(a, o.join(a, b))), "a->(a\\/b)=1"),
    Law("HV4", 3, lambda o, a, b, c: o.eq1(o.imp(o.imp(a, c), o.imp(o.imp(b, c), o.imp(o.join(a, b), c)))),
        "(a->c)->((b->c)->((a\\/b)->c))=1"),
    Law("HV5", 2, lambda o, a, b: o.nec(o.join(a, b)) == o.join(o.nec(a), o.nec(b)), "#(a\\/b)=#a\\/#b"),
    Law("HV6", 2, lambda o, a, b: o.nab(o.join(a, b)) == o.join(o.nab(a), o.nab(b)), "nabla(a\\/b)=nabla a\\/nabla b"),
]

WEAK_IMPLICATION = [
    Law("wi1", 1, lambda o, x: o.wimp(o.one, x) == x, "1>->x=x"),
    Law("wi2", 1, lambda o, x: o.eq1(o.wimp(x, x)), "x>->x=1"),
    Law("wi3", 1, lambda o, x: o.eq1(o.wimp(x, o.nec(x))), "x>->#x=1"),
    Law("wi4", 3, lambda o, x, y, z: o.wimp(x, o.wimp(y, z)) == o.wimp(o.wimp(x, y), o.wimp(x, z)),
        "x>->(y>->z)=(x>->y)>->(x>->z)"),
    Law("wi5", 2, lambda o, x, y: o.eq1(o.wimp(x, o.wimp(y, x))), "x>->(y>->x)=1"),
    Law("wi6", 2, lambda o, x, y: o.eq1(o.wimp(o.wimp(o.wimp(x, y), x), x)), "((x>->y)>->x)>->x=1"),
]

# the defined join of an INF algebra is the least upper bound
SUPREMUM = [
    Law("sup-upper", 2, lambda o, x, y: o.le(x, o.join(x, y)) & o.le(y, o.join(x, y))),
    Law("sup-least", 3, lambda o, x, y, z: _implies(o.le(x, z) & o.le(y, z), o.le(o.join(x, y), z))),
]


def variety_laws(A: FiniteAlgebra) -> List[Law]:
    if A.kind is Kind.INF:
        return HILBERT + INF_LAWS + MODAL
    return HILBERT + SUP_BASE + [_nec_meet_law(A)] + MODAL


def verify_variety(A: FiniteAlgebra, kind: Optional[Kind] = None) -> VerificationReport:
    """Check every defining law of the algebra's variety, with a witness tuple for each failure."""
    if kind is not None and kind is not A.kind:
        raise ValueError(f"algebra has signature {A.kind.value}, not {kind.value}")
    return VerificationReport(A.name, A.kind, check_laws(A, variety_laws(A)))


def property_laws(A: FiniteAlgebra) -> List[Law]:
    """The derived properties that the theory predicts for the algebra's signature."""
    common = WEAK_IMPLICATION
    if A.kind is Kind.INF:
        return INF_PROPERTIES + SUPREMUM + common
    return SUP_PROPERTIES + common


def verify_properties(A: FiniteAlgebra) -> VerificationReport:
    return VerificationReport(A.name, A.kind, check_laws(A, property_laws(A)))


def missing_meet(A: FiniteAlgebra) -> Optional[Tuple[int, int]]:
    """First pair (in lexicographic order) without an infimum, or None when all meets exist."""
    for x in range(A.size):
        for y in range(x + 1, A.size):
            if A.infimum((x, y)) is None:
                return (x, y)
    return None
