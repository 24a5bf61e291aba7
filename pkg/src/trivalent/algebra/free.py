"""Finitely generated free algebras, realised inside powers of the three-element chain.

The free algebra on n generators of a variety generated by C3 is the algebra of
n-ary term functions on C3.  A term function is stored as its value vector over
all 3**n argument tuples, so the algebra is the subalgebra of C3**(3**n)
generated by the n projection vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..errors import BudgetExceeded
from ..formula import Kind
from ..matrix import IMP, NEC
from .core import FiniteAlgebra, c3, is_homomorphism

MAX_GENERATORS = 2


@dataclass
class FreeAlgebra:
    algebra: FiniteAlgebra
    generators: Tuple[int, ...]
    vectors: np.ndarray  # row i is the value vector of element i

    def to_dict(self) -> Dict:
        return {"generators": len(self.generators), "size": self.algebra.size,
                "generator_elements": list(self.generators)}


def _lattice(kind: Kind):
    return np.minimum if kind is Kind.INF else np.maximum


def _codes(vectors: np.ndarray) -> np.ndarray:
    """Base-3 code of each value vector (first coordinate most significant)."""
    weights = 3 ** np.arange(vectors.shape[-1] - 1, -1, -1, dtype=np.int64)
    return vectors @ weights


def _close(seed: np.ndarray, kind: Kind) -> np.ndarray:
    """Closure of a set of value vectors under the pointwise operations."""
    lat = _lattice(kind)
    width = seed.shape[1]
    member = np.zeros(3 ** width, dtype=bool)
    rows = np.unique(seed, axis=0)
    member[_codes(rows)] = True
    new = rows
    while len(new):
        a, b = rows[:, None, :], new[None, :, :]
        cand = np.concatenate([NEC[new], IMP[a, b].reshape(-1, width), IMP[b, a].reshape(-1, width),
                               lat(a, b).reshape(-1, width)])
        codes = _codes(cand)
        fresh = ~member[codes]
        codes, keep = np.unique(codes[fresh], return_index=True)
        new = cand[fresh][keep]
        member[codes] = True
        rows = np.concatenate([rows, new])
    return rows


def free_algebra(n: int, kind: Kind = Kind.SUP) -> FreeAlgebra:
    if n < 0:
        raise ValueError("generator count must be non-negative")
    if n > MAX_GENERATORS:
        raise BudgetExceeded(f"free algebras are limited to {MAX_GENERATORS} generators")
    points = np.array(list(itertools.product(range(3), repeat=n)), dtype=np.int64).reshape(3 ** n, n)
    one = np.full(3 ** n, 2, dtype=np.int64)
    projections = points.T.copy()
    vectors = _close(np.vstack([one[None, :], projections]), kind)
    # canonical order: increasing base-3 code, i.e. lexicographic on value vectors
    codes = _codes(vectors)
    order = np.argsort(codes)
    vectors, codes = vectors[order], codes[order]
    position = np.full(3 ** (3 ** n), -1, dtype=np.int64)
    position[codes] = np.arange(len(codes))

    def lookup(batch: np.ndarray) -> np.ndarray:
        return position[_codes(batch)]

    lat = _lattice(kind)
    a, b = vectors[:, None, :], vectors[None, :, :]
    imp = lookup(IMP[a, b])
    latt = lookup(lat(a, b))
    nec = lookup(NEC[vectors])
    gens = tuple(int(i) for i in lookup(projections))
    labels = tuple("".join(str(int(x)) for x in v) for v in vectors)
    A = FiniteAlgebra(imp, nec, int(lookup(one[None, :])[0]), meet=latt if kind is Kind.INF else None,
                      join=latt if kind is Kind.SUP else None, labels=labels, name=f"Free{n}")
    return FreeAlgebra(A, gens, vectors)


def extension(F: FreeAlgebra, values: Sequence[int]) -> Tuple[int, ...]:
    """The map into C3 that sends the generators to ``values``.

    Each element is a term function, so its image is simply its value at that point.
    """
    n = len(F.generators)
    if len(values) != n:
        raise ValueError(f"expected {n} values")
    point = 0
    for v in values:
        point = point * 3 + int(v)
    return tuple(int(x) for x in F.vectors[:, point])


def check_universal_property(F: FreeAlgebra) -> Optional[Tuple[int, ...]]:
    """Return the first generator assignment whose extension fails to be a homomorphism, or None."""
    target = c3(F.algebra.kind)
    for values in itertools.product(range(3), repeat=len(F.generators)):
        h = extension(F, values)
        if not is_homomorphism(F.algebra, target, h):
            return tuple(values)
        if any(h[g] != v for g, v in zip(F.generators, values)):
            return tuple(values)
    return None
