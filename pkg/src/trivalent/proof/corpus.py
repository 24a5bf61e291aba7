"""Bundled machine-checked derivations of lemma items and rule witnesses."""

from __future__ import annotations

from typing import Callable, Dict

from ..formula import Exists, Forall, Imp, Nec, Or, Pred, TVar, Var
from .builder import ProofBuilder, discharge
from .derivation import Derivation

p, q, r = Var("p"), Var("q"), Var("r")


def _mi1() -> Derivation:
    b = ProofBuilder("iH3")
    b.identity(p)
    return b.build("Mi1")


def _mi4() -> Derivation:
    # from p -> (q -> r), q, p derive r, then discharge p, q and the first premise
    b = ProofBuilder("iH3", ["p -> (q -> r)", "q", "p"])
    qr = b.mp(b.premise(3), b.premise(1))
    b.mp(b.premise(2), qr)
    d = discharge(b.build(), 3)
    d = discharge(d, 2)
    return discharge(d, 1, "Mi4")


def _mi11() -> Derivation:
    b = ProofBuilder("iH3", ["p -> (p -> q)", "p"])
    pq = b.mp(b.premise(2), b.premise(1))
    b.mp(b.premise(2), pq)
    return discharge(discharge(b.build(), 2), 1, "Mi11")


def _mi27() -> Derivation:
    # p -> nabla p, where nabla p abbreviates (p -> #p) -> #p
    b = ProofBuilder("iH3", ["p", "p -> #p"])
    b.mp(b.premise(1), b.premise(2))
    return discharge(discharge(b.build(), 2), 1, "Mi27")


def _ai7() -> Derivation:
    b = ProofBuilder("iH3")
    b.axiom("#p -> p", "Ai7")
    return b.build("Ai7")


def _nec() -> Derivation:
    b = ProofBuilder("H3sup", ["p"])
    b.nec(b.premise(1))
    return b.build("NEC")


def _rand() -> Derivation:
    b = ProofBuilder("iH3", ["p -> q"])
    src = b.premise(1)
    b.rule("rand", src, b.f("p -> (p /\\ q)"))
    return b.build("Rand")


def _ps1() -> Derivation:
    b = ProofBuilder("H3sup")
    qp = Or(q, p)
    elim = b.axiom(Imp(Imp(p, qp), Imp(Imp(q, qp), Imp(Or(p, q), qp))), "Ax6")
    left = b.axiom(Imp(p, qp), "Ax5")
    right = b.axiom(Imp(q, qp), "Ax4")
    b.mp(right, b.mp(left, elim))
    return b.build("Ps1")


def _ps2() -> Derivation:
    # {p -> q} |- (p \/ r) -> (q \/ r)
    b = ProofBuilder("H3sup", ["p -> q"])
    qr = Or(q, r)
    into = b.chain(b.premise(1), b.axiom(Imp(q, qr), "Ax4"))
    elim = b.axiom(Imp(Imp(p, qr), Imp(Imp(r, qr), Imp(Or(p, r), qr))), "Ax6")
    b.mp(b.axiom(Imp(r, qr), "Ax5"), b.mp(into, elim))
    return b.build("Ps2")


def _rv3() -> Derivation:
    # the rule a -> b / (a \/ b) -> b, witnessed with premise slot p -> q
    b = ProofBuilder("H3sup", ["p -> q"])
    elim = b.axiom(Imp(Imp(p, q), Imp(Imp(q, q), Imp(Or(p, q), q))), "Ax6")
    step = b.mp(b.premise(1), elim)
    b.mp(b.identity(q), step)
    return b.build("Rv3")


_P = Pred("P", (TVar("x"),))


def _r3() -> Derivation:
    b = ProofBuilder("QH3sup")
    ax = b.axiom(Imp(_P, Exists("x", _P)), "Ax11")
    b.rule("r3", ax, Imp(Exists("x", _P), Exists("x", _P)), "x")
    return b.build("R3")


def _r4() -> Derivation:
    b = ProofBuilder("QH3sup")
    ax = b.axiom(Imp(Forall("x", _P), _P), "Ax12")
    b.rule("r4", ax, Imp(Forall("x", _P), Forall("x", _P)), "x")
    return b.build("R4")


def _ax13() -> Derivation:
    b = ProofBuilder("QH3sup")
    b.axiom(Imp(Nec(Exists("x", _P)), Exists("x", Nec(_P))), "Ax13")
    b.axiom(Imp(Exists("x", Nec(_P)), Nec(Exists("x", _P))), "Ax13")
    return b.build("Ax13")


def _ax14() -> Derivation:
    # both halves of the biconditional
    b = ProofBuilder("QH3sup")
    b.axiom(Imp(Forall("x", Nec(_P)), Nec(Forall("x", _P))), "Ax14")
    b.axiom(Imp(Nec(Forall("x", _P)), Forall("x", Nec(_P))), "Ax14")
    return b.build("Ax14")


def _ax12_const() -> Derivation:
    # instantiate a universal at a constant, then necessitate
    b = ProofBuilder("QH3sup", ["forall x. P(x)"], constants=["c"])
    inst = b.mp(b.premise(1), b.axiom("(forall x. P(x)) -> P(c)", "Ax12"))
    b.nec(inst)
    return b.build("Ax12c")


_BUILDERS: Dict[str, Callable[[], Derivation]] = {
    "Mi1": _mi1, "Mi4": _mi4, "Mi11": _mi11, "Mi27": _mi27, "Ai7": _ai7, "NEC": _nec, "Rand": _rand,
    "Ps1": _ps1, "Ps2": _ps2, "Rv3": _rv3, "R3": _r3, "R4": _r4, "Ax13": _ax13, "Ax14": _ax14,
    "Ax12c": _ax12_const,
}


def lemma_corpus() -> Dict[str, Derivation]:
    """Named derivations, rebuilt on each call."""
    return {name: build() for name, build in _BUILDERS.items()}
