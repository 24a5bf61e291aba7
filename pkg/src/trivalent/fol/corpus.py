"""Small seeded structures over C3 for the first-order audits."""

from __future__ import annotations

import itertools
from typing import List

import numpy as np

from ..algebra.core import c3
from ..formula import Kind
from .semantics import Structure

CONSTANTS = ("c",)


def example_structure() -> Structure:
    """Domain {a, b} with P(a) = 1/2 and P(b) = 1."""
    A = c3(Kind.SUP)
    dom = ("a", "b")
    return Structure(
        A, dom, consts={"c": 0},
        funcs={"f": (1, {(0,): 1, (1,): 0})},
        preds={"P": (1, {(0,): 1, (1,): 2}),
               "R": (2, {(0, 0): 2, (0, 1): 1, (1, 0): 0, (1, 1): 2})},
        name="example")


def random_structure(size: int, seed: int) -> Structure:
    """Constant c, unary f, unary P and binary R, with tables drawn from a seeded generator."""
    rng = np.random.default_rng(seed)
    A = c3(Kind.SUP)
    dom = tuple(f"d{i}" for i in range(size))
    f = {(a,): int(rng.integers(size)) for a in range(size)}
    P = {(a,): int(rng.integers(3)) for a in range(size)}
    R = {args: int(rng.integers(3)) for args in itertools.product(range(size), repeat=2)}
    return Structure(A, dom, consts={"c": int(rng.integers(size))}, funcs={"f": (1, f)},
                     preds={"P": (1, P), "R": (2, R)}, name=f"random-{size}-{seed}")


def structure_corpus() -> List[Structure]:
    """The example structure plus seeded random ones with domains of size 1 to 4."""
    out = [example_structure()]
    for seed, size in enumerate((1, 2, 3, 4, 3, 4), start=11):
        out.append(random_structure(size, seed))
    return out
