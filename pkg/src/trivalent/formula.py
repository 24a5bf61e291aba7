"""Formula and term ASTs, signatures, substitution and schema matching.

Formulas are immutable, hashable trees.  Two signatures are supported:
``INF`` with primitives {->, /\\, #} and ``SUP`` with {->, \\/, #}.  The
possibility operator is never primitive; ``Nabla`` exists only as surface
syntax until :func:`expand` rewrites it, and under ``INF`` the same holds
for disjunction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from .errors import CaptureError, SignatureError


class Kind(Enum):
    INF = "INF"
    SUP = "SUP"


@dataclass(frozen=True)
class Signature:
    kind: Kind = Kind.SUP
    first_order: bool = False

    def __str__(self) -> str:
        return ("Q" if self.first_order else "") + self.kind.value


INF = Signature(Kind.INF)
SUP = Signature(Kind.SUP)
QSUP = Signature(Kind.SUP, first_order=True)


# -- terms -----------------------------------------------------------------

class Term:
    __slots__ = ()

    def __str__(self) -> str:
        from .parser import format_term
        return format_term(self)


@dataclass(frozen=True)
class TVar(Term):
    name: str


@dataclass(frozen=True)
class Const(Term):
    name: str


@dataclass(frozen=True)
class Func(Term):
    symbol: str
    args: Tuple[Term, ...]


# -- formulas --------------------------------------------------------------

class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        from .parser import format_formula
        return format_formula(self)


@dataclass(frozen=True)
class Var(Formula):
    """Propositional variable."""
    name: str


@dataclass(frozen=True)
class Meta(Formula):
    """Schema metavariable; also used in quantifier position for individual metavariables."""
    name: str


@dataclass(frozen=True)
class Imp(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class And(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Or(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Nec(Formula):
    sub: Formula


@dataclass(frozen=True)
class Nabla(Formula):
    """Surface-only possibility operator, removed by :func:`expand`."""
    sub: Formula


@dataclass(frozen=True)
class Pred(Formula):
    symbol: str
    args: Tuple[Term, ...]


@dataclass(frozen=True)
class Forall(Formula):
    var: Union[str, Meta]
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: Union[str, Meta]
    body: Formula


Binary = (Imp, And, Or)
Unary = (Nec, Nabla)
Quantifier = (Forall, Exists)


def nabla(a: Formula) -> Formula:
    """The possibility macro ``(a -> #a) -> #a``."""
    return Imp(Imp(a, Nec(a)), Nec(a))


def inf_join(a: Formula, b: Formula) -> Formula:
    """Disjunction defined from implication and meet."""
    return And(Imp(Imp(a, b), b), Imp(Imp(b, a), a))


def iff(a: Formula, b: Formula) -> Tuple[Formula, Formula]:
    """A biconditional is a pair of implications."""
    return Imp(a, b), Imp(b, a)


# -- traversal -------------------------------------------------------------

def subformulas(phi: Formula) -> Iterator[Formula]:
    """All subformula occurrences, parents before children."""
    stack = [phi]
    while stack:
        f = stack.pop()
        yield f
        if isinstance(f, Binary):
            stack.append(f.rhs)
            stack.append(f.lhs)
        elif isinstance(f, Unary):
            stack.append(f.sub)
        elif isinstance(f, Quantifier):
            stack.append(f.body)


def size(phi: Formula) -> int:
    return sum(1 for _ in subformulas(phi))


def depth(phi: Formula) -> int:
    if isinstance(phi, Binary):
        return 1 + max(depth(phi.lhs), depth(phi.rhs))
    if isinstance(phi, Unary):
        return 1 + depth(phi.sub)
    if isinstance(phi, Quantifier):
        return 1 + depth(phi.body)
    return 0


def term_vars(t: Term) -> frozenset:
    if isinstance(t, TVar):
        return frozenset([t.name])
    if isinstance(t, Func):
        return frozenset().union(*(term_vars(a) for a in t.args))
    return frozenset()


def prop_vars(phi: Formula) -> frozenset:
    return frozenset(f.name for f in subformulas(phi) if isinstance(f, Var))


def metavariables(phi: Formula) -> frozenset:
    names = set()
    for f in subformulas(phi):
        if isinstance(f, Meta):
            names.add(f.name)
        elif isinstance(f, Quantifier) and isinstance(f.var, Meta):
            names.add(f.var.name)
    return frozenset(names)


def free_individual_vars(phi: Formula) -> frozenset:
    if isinstance(phi, Pred):
        return frozenset().union(*(term_vars(t) for t in phi.args))
    if isinstance(phi, Binary):
        return free_individual_vars(phi.lhs) | free_individual_vars(phi.rhs)
    if isinstance(phi, Unary):
        return free_individual_vars(phi.sub)
    if isinstance(phi, Quantifier):
        return free_individual_vars(phi.body) - {phi.var}
    return frozenset()


def free_vars(phi: Formula) -> frozenset:
    """Free individual variables together with propositional variables."""
    return free_individual_vars(phi) | prop_vars(phi)


def is_sentence(phi: Formula) -> bool:
    return not free_individual_vars(phi)


# -- substitution ----------------------------------------------------------

def substitute_term(t: Term, x: str, s: Term) -> Term:
    if isinstance(t, TVar):
        return s if t.name == x else t
    if isinstance(t, Func):
        return Func(t.symbol, tuple(substitute_term(a, x, s) for a in t.args))
    return t


def is_free_for(t: Term, x: str, phi: Formula) -> bool:
    """True unless some free occurrence of ``x`` sits under a quantifier binding a variable of ``t``."""
    tv = term_vars(t)

    def walk(f: Formula, bound: frozenset) -> bool:
        if isinstance(f, Pred):
            if x in bound:
                return True
            occurs = any(x in term_vars(a) for a in f.args)
            return not (occurs and tv & bound)
        if isinstance(f, Binary):
            return walk(f.lhs, bound) and walk(f.rhs, bound)
        if isinstance(f, Unary):
            return walk(f.sub, bound)
        if isinstance(f, Quantifier):
            if f.var == x:
                return True
            return walk(f.body, bound | {f.var})
        return True

    return walk(phi, frozenset())


def substitute(phi: Formula, x: str, t: Term) -> Formula:
    """``phi(x/t)``: replace free occurrences of ``x``; never renames bound variables."""
    if not is_free_for(t, x, phi):
        raise CaptureError(f"term {t} is not free for {x} in {phi}")
    return _subst(phi, x, t)


def _subst(f: Formula, x: str, t: Term) -> Formula:
    if isinstance(f, Pred):
        return Pred(f.symbol, tuple(substitute_term(a, x, t) for a in f.args))
    if isinstance(f, Binary):
        return type(f)(_subst(f.lhs, x, t), _subst(f.rhs, x, t))
    if isinstance(f, Unary):
        return type(f)(_subst(f.sub, x, t))
    if isinstance(f, Quantifier):
        if f.var == x:
            return f
        return type(f)(f.var, _subst(f.body, x, t))
    return f


def find_substituted_term(phi: Formula, x: str, inst: Formula) -> Optional[Term]:
    """Find ``t`` with ``phi(x/t) == inst`` structurally, ignoring the free-for condition.

    Returns ``TVar(x)`` when ``x`` is not free in ``phi`` and ``inst == phi``; None when no
    such term exists.
    """
    found: Dict[str, Term] = {}

    def term_walk(a: Term, b: Term, bound: bool) -> bool:
        if isinstance(a, TVar) and a.name == x and not bound:
            if "t" in found:
                return found["t"] == b
            found["t"] = b
            return True
        if isinstance(a, Func):
            return (isinstance(b, Func) and a.symbol == b.symbol and len(a.args) == len(b.args)
                    and all(term_walk(p, q, bound) for p, q in zip(a.args, b.args)))
        return a == b

    def walk(f: Formula, g: Formula, bound: bool) -> bool:
        if type(f) is not type(g):
            return False
        if isinstance(f, Pred):
            return (f.symbol == g.symbol and len(f.args) == len(g.args)
                    and all(term_walk(p, q, bound) for p, q in zip(f.args, g.args)))
        if isinstance(f, Binary):
            return walk(f.lhs, g.lhs, bound) and walk(f.rhs, g.rhs, bound)
        if isinstance(f, Unary):
            return walk(f.sub, g.sub, bound)
        if isinstance(f, Quantifier):
            return f.var == g.var and walk(f.body, g.body, bound or f.var == x)
        return f == g

    if not walk(phi, inst, False):
        return None
    return found.get("t", TVar(x))


# -- schemas ---------------------------------------------------------------

@dataclass(frozen=True)
class SchemaPattern:
    id: str
    formula: Formula

    @property
    def metavariables(self) -> frozenset:
        return metavariables(self.formula)


Match = Dict[str, Union[Formula, str]]


def match_schema(pattern, phi: Formula) -> Optional[Match]:
    """Uniform-substitution match of ``pattern`` against ``phi``; None when there is no match."""
    if isinstance(pattern, SchemaPattern):
        pattern = pattern.formula
    m: Match = {}
    return m if _match(pattern, phi, m) else None


def _match(p: Formula, f: Formula, m: Match) -> bool:
    if isinstance(p, Meta):
        if p.name in m:
            return m[p.name] == f
        m[p.name] = f
        return True
    if type(p) is not type(f):
        return False
    if isinstance(p, Binary):
        return _match(p.lhs, f.lhs, m) and _match(p.rhs, f.rhs, m)
    if isinstance(p, Unary):
        return _match(p.sub, f.sub, m)
    if isinstance(p, Quantifier):
        if isinstance(p.var, Meta):
            bound = m.setdefault(p.var.name, f.var)
            if bound != f.var:
                return False
        elif p.var != f.var:
            return False
        return _match(p.body, f.body, m)
    return p == f


def instantiate(pattern, mapping: Mapping[str, Union[Formula, str]]) -> Formula:
    if isinstance(pattern, SchemaPattern):
        pattern = pattern.formula

    def go(p: Formula) -> Formula:
        if isinstance(p, Meta):
            return mapping[p.name]
        if isinstance(p, Binary):
            return type(p)(go(p.lhs), go(p.rhs))
        if isinstance(p, Unary):
            return type(p)(go(p.sub))
        if isinstance(p, Quantifier):
            var = mapping[p.var.name] if isinstance(p.var, Meta) else p.var
            return type(p)(var, go(p.body))
        return p

    return go(pattern)


# -- defined connectives and signature checks -------------------------------

def expand(phi: Formula, sig: Signature) -> Formula:
    """Rewrite the macros: nabla always, disjunction under INF."""
    def go(f: Formula) -> Formula:
        if isinstance(f, Nabla):
            return nabla(go(f.sub))
        if isinstance(f, Or) and sig.kind is Kind.INF:
            return inf_join(go(f.lhs), go(f.rhs))
        if isinstance(f, Binary):
            return type(f)(go(f.lhs), go(f.rhs))
        if isinstance(f, Nec):
            return Nec(go(f.sub))
        if isinstance(f, Quantifier):
            return type(f)(f.var, go(f.body))
        return f

    out = go(phi)
    check_signature(out, sig)
    return out


defined_connectives = expand


def check_signature(phi: Formula, sig: Signature) -> None:
    for f in subformulas(phi):
        if isinstance(f, And) and sig.kind is Kind.SUP:
            raise SignatureError("conjunction is not available in the SUP signature")
        if isinstance(f, Or) and sig.kind is Kind.INF:
            raise SignatureError("disjunction is a defined connective in the INF signature")
        if isinstance(f, Nabla):
            raise SignatureError("nabla must be expanded before use")
        if not sig.first_order and isinstance(f, (Pred, Forall, Exists)):
            raise SignatureError("predicates and quantifiers need a first-order signature")
        if sig.first_order and isinstance(f, Var):
            raise SignatureError(f"propositional variable {f.name!r} in a first-order formula")


def universal_closure(phi: Formula) -> Formula:
    """Prefix universal quantifiers for the free individual variables, in lexicographic order."""
    out = phi
    for x in sorted(free_individual_vars(phi), reverse=True):
        out = Forall(x, out)
    return out
