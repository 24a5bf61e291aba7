"""Deductive systems and congruences of finite algebras, and the bijection between them."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import CarrierBudgetExceeded, NotCongruence, NotModal
from .core import Congruence, FiniteAlgebra, is_compatible

DEFAULT_MAX_CARRIER = 32

PLAIN, MODAL, WEAK = "plain", "modal", "weak"


def max_carrier() -> int:
    return int(os.environ.get("TRIV_MAX_CARRIER", DEFAULT_MAX_CARRIER))


@dataclass(frozen=True)
class DeductiveSystem:
    """A subset of the carrier, kept as a sorted tuple of elements."""

    elements: Tuple[int, ...]
    modal: bool = False
    weak: bool = False
    maximal: bool = False
    tied_to: Optional[int] = None

    @classmethod
    def of(cls, elements: Iterable[int], **flags) -> "DeductiveSystem":
        return cls(tuple(sorted(set(int(e) for e in elements))), **flags)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __le__(self, other: "DeductiveSystem") -> bool:
        return set(self.elements) <= set(other.elements)

    def __lt__(self, other: "DeductiveSystem") -> bool:
        return set(self.elements) < set(other.elements)

    @property
    def members(self) -> FrozenSet[int]:
        return frozenset(self.elements)

    def same_set(self, other: "DeductiveSystem") -> bool:
        return self.elements == other.elements


def _mask(A: FiniteAlgebra, H: Iterable[int]) -> np.ndarray:
    m = np.zeros(A.size, dtype=bool)
    m[list(H)] = True
    m[A.one] = True
    return m


def _detach(imp: np.ndarray, m: np.ndarray, nec: Optional[np.ndarray]) -> np.ndarray:
    """Least superset of ``m`` closed under detachment along ``imp`` (and ``nec`` when given)."""
    while True:
        # y joins when some x in m has imp[x, y] in m
        grow = m | (m[imp] & m[:, None]).any(axis=0)
        if nec is not None:
            grow[nec[grow]] = True
        if np.array_equal(grow, m):
            return m
        m = grow


def is_ds(A: FiniteAlgebra, D: Iterable[int], kind: str = PLAIN) -> bool:
    m = _mask(A, ())
    m[:] = False
    m[list(D)] = True
    if not m[A.one]:
        return False
    imp = _weak_table(A) if kind == WEAK else A.imp
    if (m[imp] & m[:, None]).any(axis=0)[~m].any():
        return False
    if kind == MODAL and not m[A.nec[m]].all():
        return False
    return True


def _weak_table(A: FiniteAlgebra) -> np.ndarray:
    return A.imp[A.nec]


def generate_ds(A: FiniteAlgebra, H: Iterable[int] = (), kind: str = PLAIN) -> DeductiveSystem:
    """Least deductive system of the given kind containing ``H``, by fixpoint iteration."""
    m = _mask(A, H)
    if kind == PLAIN:
        m = _detach(A.imp, m, None)
    elif kind == MODAL:
        m = _detach(A.imp, m, A.nec)
    elif kind == WEAK:
        m = _detach(_weak_table(A), m, None)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return DeductiveSystem.of(np.flatnonzero(m), modal=kind != PLAIN, weak=kind == WEAK)


def generate_modal_ds(A: FiniteAlgebra, H: Iterable[int] = ()) -> DeductiveSystem:
    return generate_ds(A, H, MODAL)


def modal_ds_by_chains(A: FiniteAlgebra, H: Iterable[int]) -> DeductiveSystem:
    """Elements x with ``#h1 -> (#h2 -> ... -> (#hk -> x)) = 1`` for some h1..hk in H.

    Reading the chain from the inside out, x qualifies iff 1 is reachable from x
    by repeatedly applying ``v |-> #h -> v``.  Independent of the fixpoint route.
    """
    guards = sorted({int(A.nec[h]) for h in H})
    found = []
    for x in range(A.size):
        seen = {x}
        queue = deque([x])
        while queue:
            v = queue.popleft()
            for g in guards:
                w = int(A.imp[g, v])
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if A.one in seen:
            found.append(x)
    return DeductiveSystem.of(found, modal=True)


def _check_budget(A: FiniteAlgebra, cap: Optional[int]) -> None:
    cap = max_carrier() if cap is None else cap
    if A.size > cap:
        raise CarrierBudgetExceeded(f"carrier of size {A.size} exceeds the cap of {cap}")


def all_deductive_systems(A: FiniteAlgebra, kind: str = PLAIN, *, cap: Optional[int] = None) -> List[DeductiveSystem]:
    """Every deductive system of the given kind, smallest first.

    On a finite algebra every system is generated by its own elements, so a
    breadth-first search that adds one element at a time reaches all of them.
    """
    _check_budget(A, cap)
    start = generate_ds(A, (), kind)
    seen = {start.elements: start}
    queue = deque([start])
    while queue:
        D = queue.popleft()
        for a in range(A.size):
            if a in D:
                continue
            E = generate_ds(A, D.elements + (a,), kind)
            if E.elements not in seen:
                seen[E.elements] = E
                queue.append(E)
    out = sorted(seen.values(), key=lambda d: (len(d), d.elements))
    if kind == MODAL:
        weak = [d.elements for d in all_deductive_systems(A, WEAK, cap=cap)]
        assert [d.elements for d in out] == weak, "modal and weak deductive systems differ"
    return out


def ds_to_congruence(A: FiniteAlgebra, D: DeductiveSystem | Iterable[int]) -> Congruence:
    """The relation ``x ~ y`` iff ``x->y`` and ``y->x`` are both in D."""
    elems = D.elements if isinstance(D, DeductiveSystem) else tuple(D)
    if not is_ds(A, elems, MODAL):
        raise NotModal(f"{sorted(elems)} is not a modal deductive system")
    m = np.zeros(A.size, dtype=bool)
    m[list(elems)] = True
    rel = m[A.imp] & m[A.imp.T]
    labels = [int(np.flatnonzero(rel[x])[0]) for x in range(A.size)]
    theta = Congruence.from_labels(labels)
    if not is_compatible(A, theta):
        raise NotCongruence("relation induced by the system is not a congruence")
    return theta


def congruence_to_ds(A: FiniteAlgebra, theta: Congruence) -> DeductiveSystem:
    if not is_compatible(A, theta):
        raise NotCongruence("partition is not compatible with the operations")
    return DeductiveSystem.of(theta.block(A.one), modal=True)


# -- congruences computed without reference to deductive systems ------------

class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[max(rx, ry)] = min(rx, ry)
        return True


def congruence_generated(A: FiniteAlgebra, pairs: Iterable[Tuple[int, int]]) -> Congruence:
    """Least congruence identifying every given pair."""
    uf = _UnionFind(A.size)
    for x, y in pairs:
        uf.union(x, y)
    tables = [t for _, t in A.operations()]
    changed = True
    while changed:
        changed = False
        for x in range(A.size):
            r = uf.find(x)
            if r == x:
                continue
            # x is related to its representative r; push that through every operation
            for t in tables:
                if t.ndim == 1:
                    changed |= uf.union(int(t[x]), int(t[r]))
                else:
                    for z in range(A.size):
                        changed |= uf.union(int(t[x, z]), int(t[r, z]))
                        changed |= uf.union(int(t[z, x]), int(t[z, r]))
    return Congruence.from_labels([uf.find(x) for x in range(A.size)])


def join_congruences(A: FiniteAlgebra, a: Congruence, b: Congruence) -> Congruence:
    pairs = [(x, blk[0]) for c in (a, b) for blk in c.blocks() for x in blk]
    return congruence_generated(A, pairs)


def all_congruences(A: FiniteAlgebra, *, cap: Optional[int] = None) -> List[Congruence]:
    """Every congruence, as joins of principal congruences (finest first)."""
    _check_budget(A, cap)
    principal = {}
    for x in range(A.size):
        for y in range(x + 1, A.size):
            c = congruence_generated(A, [(x, y)])
            principal[c.classes] = c
    bottom = Congruence.identity(A.size)
    seen = {bottom.classes: bottom}
    queue = deque([bottom])
    while queue:
        c = queue.popleft()
        for p in principal.values():
            j = join_congruences(A, c, p)
            if j.classes not in seen:
                seen[j.classes] = j
                queue.append(j)
    return sorted(seen.values(), key=lambda c: (-c.count, c.classes))


# -- maximal systems -------------------------------------------------------

def tied_to(A: FiniteAlgebra, D: DeductiveSystem, systems: Sequence[DeductiveSystem]) -> Optional[int]:
    """Least p outside D lying in every system that strictly contains D, if any."""
    above = [E.members for E in systems if D < E]
    for p in range(A.size):
        if p not in D and all(p in E for E in above):
            return p
    return None


def maximal_modal_ds(A: FiniteAlgebra, *, cap: Optional[int] = None) -> List[DeductiveSystem]:
    """All maximal proper modal deductive systems, each annotated with the element it is tied to."""
    systems = all_deductive_systems(A, MODAL, cap=cap)
    proper = [D for D in systems if len(D) < A.size]
    out = []
    for D in proper:
        if any(D < E for E in proper):
            continue
        p = tied_to(A, D, systems)
        assert p is not None, f"maximal system {D.elements} is not tied to any element"
        out.append(DeductiveSystem(D.elements, modal=True, weak=True, maximal=True, tied_to=p))
    return out
