"""Finite algebras given by operation tables, and the basic constructions on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import NotCongruence
from ..formula import Kind


def _frozen(table, dims: int) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)
    if arr.ndim != dims:
        raise ValueError(f"expected a {dims}-dimensional table")
    arr.setflags(write=False)
    return arr


@dataclass(eq=False)
class FiniteAlgebra:
    """Algebra on ``0..n-1`` with implication, necessity, a distinguished top, and either meet or join.

    Which lattice operation is present fixes the signature: ``meet`` gives INF,
    ``join`` gives SUP.  The other one is only available through the order.
    """

    imp: np.ndarray
    nec: np.ndarray
    one: int
    meet: Optional[np.ndarray] = None
    join: Optional[np.ndarray] = None
    labels: Optional[Tuple[str, ...]] = None
    name: str = ""

    def __post_init__(self):
        if (self.meet is None) == (self.join is None):
            raise ValueError("exactly one of meet or join must be given")
        self.imp = _frozen(self.imp, 2)
        self.nec = _frozen(self.nec, 1)
        if self.meet is not None:
            self.meet = _frozen(self.meet, 2)
        if self.join is not None:
            self.join = _frozen(self.join, 2)
        n = len(self.nec)
        for t in (self.imp, self.meet if self.meet is not None else self.join):
            if t.shape != (n, n):
                raise ValueError("tables must be n x n")
        if not 0 <= self.one < n:
            raise ValueError("distinguished element outside carrier")
        if self.labels is not None:
            self.labels = tuple(self.labels)

    @property
    def size(self) -> int:
        return len(self.nec)

    def __len__(self) -> int:
        return self.size

    @property
    def kind(self) -> Kind:
        return Kind.INF if self.meet is not None else Kind.SUP

    @property
    def lattice(self) -> np.ndarray:
        """The primitive lattice table of the signature."""
        return self.meet if self.meet is not None else self.join

    @property
    def nab(self) -> np.ndarray:
        t = self.imp[np.arange(self.size), self.nec]
        return self.imp[t, self.nec]

    @property
    def sup(self) -> np.ndarray:
        """Join table; derived as ``((x->y)->y) /\\ ((y->x)->x)`` under INF."""
        if self.join is not None:
            return self.join
        i = self.imp
        a = i[i, np.arange(self.size)[None, :]]
        b = i[i.T, np.arange(self.size)[:, None]]
        return self.meet[a, b]

    @property
    def order(self) -> np.ndarray:
        """Boolean matrix ``order[x, y]`` iff ``x <= y`` iff ``x -> y = 1``."""
        return self.imp == self.one

    def leq(self, x: int, y: int) -> bool:
        return bool(self.imp[x, y] == self.one)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def infimum(self, xs: Iterable[int]) -> Optional[int]:
        """Greatest lower bound in the order, or None when it does not exist."""
        xs = list(xs)
        le = self.order
        lower = [z for z in range(self.size) if all(le[z, x] for x in xs)]
        top = [z for z in lower if all(le[w, z] for w in lower)]
        return top[0] if top else None

    def supremum(self, xs: Iterable[int]) -> Optional[int]:
        xs = list(xs)
        le = self.order
        upper = [z for z in range(self.size) if all(le[x, z] for x in xs)]
        bottom = [z for z in upper if all(le[z, w] for w in upper)]
        return bottom[0] if bottom else None

    def operations(self) -> List[Tuple[str, np.ndarray]]:
        lat = ("meet", self.meet) if self.kind is Kind.INF else ("join", self.join)
        return [("imp", self.imp), lat, ("nec", self.nec)]

    def same_tables(self, other: "FiniteAlgebra") -> bool:
        return (self.kind is other.kind and self.one == other.one
                and np.array_equal(self.imp, other.imp) and np.array_equal(self.nec, other.nec)
                and np.array_equal(self.lattice, other.lattice))

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name or '?'}, n={self.size}, {self.kind.value})"


def weak_imp(A: FiniteAlgebra, x: int, y: int) -> int:
    """``x >-> y = #x -> y``."""
    return int(A.imp[A.nec[x], y])


# -- the generating chains -------------------------------------------------

C3_LABELS = ("0", "1/2", "1")


def c3(kind: Kind = Kind.SUP) -> FiniteAlgebra:
    from ..matrix import IMP, NEC
    lat = [[min(x, y) if kind is Kind.INF else max(x, y) for y in range(3)] for x in range(3)]
    return FiniteAlgebra(IMP, NEC, 2, meet=lat if kind is Kind.INF else None,
                         join=lat if kind is Kind.SUP else None, labels=C3_LABELS, name="C3")


def c2(kind: Kind = Kind.SUP) -> FiniteAlgebra:
    # the {0, 1} subalgebra, re-indexed as 0, 1
    imp = [[1, 1], [0, 1]]
    lat = [[0, 0], [0, 1]] if kind is Kind.INF else [[0, 1], [1, 1]]
    return FiniteAlgebra(imp, [0, 1], 1, meet=lat if kind is Kind.INF else None,
                         join=lat if kind is Kind.SUP else None, labels=("0", "1"), name="C2")


def trivial(kind: Kind = Kind.SUP) -> FiniteAlgebra:
    t = [[0]]
    return FiniteAlgebra(t, [0], 0, meet=t if kind is Kind.INF else None,
                         join=t if kind is Kind.SUP else None, labels=("1",), name="1")


# -- constructions ---------------------------------------------------------

def product(algebras: Sequence[FiniteAlgebra], name: str = "") -> FiniteAlgebra:
    """Direct product; elements are tuples in lexicographic order."""
    algebras = list(algebras)
    kinds = {A.kind for A in algebras}
    if len(kinds) != 1:
        raise ValueError("factors must share a signature")
    kind = kinds.pop()
    elems = list(itertools.product(*(range(A.size) for A in algebras)))
    index = {e: i for i, e in enumerate(elems)}
    cols = np.array(elems, dtype=np.int64).reshape(len(elems), len(algebras))

    def binary(tables):
        out = np.empty((len(elems), len(elems)), dtype=np.int64)
        comps = [t[cols[:, k][:, None], cols[:, k][None, :]] for k, t in enumerate(tables)]
        stacked = np.stack(comps, axis=-1)
        for a in range(len(elems)):
            out[a] = [index[tuple(row)] for row in stacked[a]]
        return out

    imp = binary([A.imp for A in algebras])
    lat = binary([A.lattice for A in algebras])
    nec = [index[tuple(int(A.nec[x]) for A, x in zip(algebras, e))] for e in elems]
    one = index[tuple(A.one for A in algebras)]
    labels = tuple("(" + ",".join(A.label(x) for A, x in zip(algebras, e)) + ")" for e in elems)
    name = name or "x".join(A.name or "?" for A in algebras)
    return FiniteAlgebra(imp, nec, one, meet=lat if kind is Kind.INF else None,
                         join=lat if kind is Kind.SUP else None, labels=labels, name=name)


def power(A: FiniteAlgebra, k: int) -> FiniteAlgebra:
    return product([A] * k, name=f"{A.name}^{k}")


def closure(A: FiniteAlgebra, gens: Iterable[int]) -> Tuple[int, ...]:
    """Carrier of the subalgebra generated by ``gens`` (the constant 1 is always included)."""
    S = {A.one, *gens}
    frontier = list(S)
    binary = [t for _, t in A.operations() if t.ndim == 2]
    while frontier:
        new = set()
        members = list(S)
        for a in frontier:
            new.add(int(A.nec[a]))
            for b in members:
                for t in binary:
                    new.add(int(t[a, b]))
                    new.add(int(t[b, a]))
        frontier = list(new - S)
        S |= new
    return tuple(sorted(S))


def is_closed(A: FiniteAlgebra, elements: Iterable[int]) -> bool:
    S = set(elements)
    if A.one not in S:
        return False
    idx = np.array(sorted(S))
    for _, t in A.operations():
        vals = t[idx] if t.ndim == 1 else t[np.ix_(idx, idx)]
        if not set(np.unique(vals).tolist()) <= S:
            return False
    return True


def subalgebra(A: FiniteAlgebra, elements: Iterable[int], name: str = "") -> FiniteAlgebra:
    """Restrict ``A`` to a closed subset, re-indexed in increasing order."""
    elems = sorted(set(elements))
    if not is_closed(A, elems):
        raise ValueError("subset is not closed under the operations")
    pos = {e: i for i, e in enumerate(elems)}
    idx = np.array(elems)
    remap = np.vectorize(pos.__getitem__, otypes=[np.int64])
    imp = remap(A.imp[np.ix_(idx, idx)])
    lat = remap(A.lattice[np.ix_(idx, idx)])
    nec = remap(A.nec[idx])
    labels = tuple(A.label(e) for e in elems)
    kind = A.kind
    return FiniteAlgebra(imp, nec, pos[A.one], meet=lat if kind is Kind.INF else None,
                         join=lat if kind is Kind.SUP else None, labels=labels,
                         name=name or f"Sub({A.name})")


def generate_subalgebra(A: FiniteAlgebra, gens: Iterable[int]) -> FiniteAlgebra:
    return subalgebra(A, closure(A, gens))


def all_subalgebras(A: FiniteAlgebra) -> List[Tuple[int, ...]]:
    """Every closed subset, by brute force over subsets containing 1 (small carriers only)."""
    rest = [x for x in range(A.size) if x != A.one]
    found = []
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            S = (A.one,) + combo
            if is_closed(A, S):
                found.append(tuple(sorted(S)))
    return sorted(found, key=lambda s: (len(s), s))


# -- congruences and quotients ---------------------------------------------

@dataclass(frozen=True)
class Congruence:
    """A partition, stored as a canonical class id per element (ids in order of first appearance)."""

    classes: Tuple[int, ...]

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Congruence":
        ids, out = {}, []
        for lab in labels:
            out.append(ids.setdefault(lab, len(ids)))
        return cls(tuple(out))

    @classmethod
    def identity(cls, n: int) -> "Congruence":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "Congruence":
        return cls((0,) * n)

    @property
    def size(self) -> int:
        return len(self.classes)

    @property
    def count(self) -> int:
        return len(set(self.classes))

    def related(self, x: int, y: int) -> bool:
        return self.classes[x] == self.classes[y]

    def block(self, x: int) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.classes) if c == self.classes[x])

    def blocks(self) -> List[Tuple[int, ...]]:
        out = {}
        for i, c in enumerate(self.classes):
            out.setdefault(c, []).append(i)
        return [tuple(b) for _, b in sorted(out.items())]

    def __le__(self, other: "Congruence") -> bool:
        return all(other.classes[x] == other.classes[y]
                   for x, y in itertools.combinations(range(self.size), 2)
                   if self.classes[x] == self.classes[y])


def is_compatible(A: FiniteAlgebra, theta: Congruence) -> bool:
    c = np.array(theta.classes)
    for _, t in A.operations():
        if t.ndim == 1:
            img = c[t]
            for blk in theta.blocks():
                if len(set(img[list(blk)].tolist())) > 1:
                    return False
        else:
            img = c[t]
            # rows (resp. columns) of related elements must agree class-wise
            for blk in theta.blocks():
                b = list(blk)
                if (img[b] != img[b[0]]).any() or (img[:, b] != img[:, [b[0]]]).any():
                    return False
    return True


def quotient(A: FiniteAlgebra, theta: Congruence) -> FiniteAlgebra:
    if theta.size != A.size or not is_compatible(A, theta):
        raise NotCongruence("partition is not compatible with the operations")
    blocks = theta.blocks()
    reps = np.array([b[0] for b in blocks])
    c = np.array(theta.classes)
    imp = c[A.imp[np.ix_(reps, reps)]]
    lat = c[A.lattice[np.ix_(reps, reps)]]
    nec = c[A.nec[reps]]
    labels = tuple("[" + A.label(b[0]) + "]" for b in blocks)
    kind = A.kind
    return FiniteAlgebra(imp, nec, int(c[A.one]), meet=lat if kind is Kind.INF else None,
                         join=lat if kind is Kind.SUP else None, labels=labels,
                         name=f"{A.name}/theta")


# -- homomorphisms ---------------------------------------------------------

def is_homomorphism(source: FiniteAlgebra, target: FiniteAlgebra, mapping: Sequence[int]) -> bool:
    if source.kind is not target.kind or len(mapping) != source.size:
        return False
    m = np.array(mapping, dtype=np.int64)
    if m.size and (m.min() < 0 or m.max() >= target.size):
        return False
    if m[source.one] != target.one:
        return False
    for (_, s), (_, t) in zip(source.operations(), target.operations()):
        if s.ndim == 1:
            if not np.array_equal(m[s], t[m]):
                return False
        elif not np.array_equal(m[s], t[np.ix_(m, m)]):
            return False
    return True


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def is_valid(self) -> bool:
        return is_homomorphism(self.source, self.target, self.mapping)

    @property
    def injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def kernel(self) -> Congruence:
        return Congruence.from_labels(self.mapping)

    def preimage(self, y: int) -> Tuple[int, ...]:
        return tuple(x for x, v in enumerate(self.mapping) if v == y)
