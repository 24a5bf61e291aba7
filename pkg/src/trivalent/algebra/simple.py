"""Homomorphisms onto the three-element chain, semisimple decomposition, simplicity and isomorphism."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import NotSemisimpleWitness, PartitionError, TrivalentError, TrivialAlgebraError
from .core import FiniteAlgebra, Homomorphism, c3, product, quotient
from .systems import DeductiveSystem, all_congruences, ds_to_congruence, maximal_modal_ds


def h_from_maximal(A: FiniteAlgebra, M: DeductiveSystem) -> Homomorphism:
    """Send x to 1 on M, to 1/2 when x is outside M but nabla x is in it, and to 0 otherwise."""
    nab = A.nab
    inside = set(M.elements)
    zero = {x for x in range(A.size) if int(nab[x]) not in inside}
    half = {x for x in range(A.size) if x not in inside and int(nab[x]) in inside}
    parts = (zero, half, inside)
    if sum(map(len, parts)) != A.size or set().union(*parts) != set(range(A.size)):
        raise PartitionError(f"the three parts do not partition the carrier for M={M.elements}")
    mapping = tuple(0 if x in zero else 1 if x in half else 2 for x in range(A.size))
    h = Homomorphism(A, c3(A.kind), mapping)
    if not h.is_valid():
        raise PartitionError(f"the map induced by M={M.elements} is not a homomorphism")
    return h


@dataclass
class Decomposition:
    """The embedding of an algebra into the product of its quotients by maximal systems."""

    algebra: FiniteAlgebra
    maximal: List[DeductiveSystem]
    quotients: List[FiniteAlgebra]
    target: FiniteAlgebra
    embedding: Homomorphism

    def to_dict(self) -> Dict:
        return {
            "maximal": [list(M.elements) for M in self.maximal],
            "quotient_sizes": [Q.size for Q in self.quotients],
            "map": list(self.embedding.mapping),
            "injective": self.embedding.injective,
        }


def semisimple_decomposition(A: FiniteAlgebra) -> Decomposition:
    if A.size < 2:
        raise TrivialAlgebraError("the one-element algebra has no proper deductive systems")
    maximal = maximal_modal_ds(A)
    common = set(range(A.size)).intersection(*(M.members for M in maximal))
    if common != {A.one}:
        x = min(common - {A.one})
        raise NotSemisimpleWitness(x, A.one)
    thetas = [ds_to_congruence(A, M) for M in maximal]
    quotients = [quotient(A, t) for t in thetas]
    target = product(quotients, name="prod A/M")
    # product elements are enumerated lexicographically, so a mixed-radix index locates each tuple
    mapping = []
    for x in range(A.size):
        idx = 0
        for Q, t in zip(quotients, thetas):
            idx = idx * Q.size + t.classes[x]
        mapping.append(idx)
    phi = Homomorphism(A, target, tuple(mapping))
    seen: Dict[int, int] = {}
    for x, y in enumerate(mapping):
        if y in seen:
            raise NotSemisimpleWitness(seen[y], x)
        seen[y] = x
    if not phi.is_valid():
        raise TrivalentError("decomposition map does not preserve the operations")
    return Decomposition(A, maximal, quotients, target, phi)


def is_simple(A: FiniteAlgebra) -> bool:
    return A.size > 1 and len(all_congruences(A)) == 2


def _invariants(A: FiniteAlgebra) -> List[Tuple]:
    le = A.order
    nec = A.nec
    return [(bool(nec[x] == x), int(le[:, x].sum()), int(le[x].sum()), x == A.one)
            for x in range(A.size)]


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Optional[Tuple[int, ...]]:
    """A bijection preserving every operation and 1, by backtracking; None when there is none."""
    if A.size != B.size or A.kind is not B.kind:
        return None
    ia, ib = _invariants(A), _invariants(B)
    if sorted(ia) != sorted(ib):
        return None
    ops = list(zip((t for _, t in A.operations()), (t for _, t in B.operations())))
    n = A.size
    image = [-1] * n
    used = [False] * n
    image[A.one] = B.one
    used[B.one] = True
    order = [A.one] + [x for x in range(n) if x != A.one]

    def consistent() -> bool:
        for s, t in ops:
            if s.ndim == 1:
                for x in range(n):
                    fx, fs = image[x], image[int(s[x])]
                    if fx >= 0 and fs >= 0 and int(t[fx]) != fs:
                        return False
            else:
                for x in range(n):
                    if image[x] < 0:
                        continue
                    for y in range(n):
                        if image[y] < 0:
                            continue
                        fz = image[int(s[x, y])]
                        if fz >= 0 and int(t[image[x], image[y]]) != fz:
                            return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        x = order[k]
        if image[x] >= 0:
            return extend(k + 1)
        for y in range(n):
            if used[y] or ia[x] != ib[y]:
                continue
            image[x], used[y] = y, True
            if consistent() and extend(k + 1):
                return True
            image[x], used[y] = -1, False
        return False

    if not consistent() or not extend(0):
        return None
    return tuple(image)


def simple_algebras_by_iso(algebras: Sequence[FiniteAlgebra]) -> Dict[str, Optional[str]]:
    """For each simple algebra in the list, the name of the chain it is isomorphic to (or None)."""
    from .core import c2
    out = {}
    for A in algebras:
        if not is_simple(A):
            continue
        match = None
        for C in (c2(A.kind), c3(A.kind)):
            if find_isomorphism(A, C) is not None:
                match = C.name
        out[A.name] = match
    return out
