"""One-shot structural report on a finite algebra, serialisable as JSON."""

from __future__ import annotations

from typing import Dict

from ..errors import TrivialAlgebraError
from .core import FiniteAlgebra
from .identities import missing_meet, verify_properties, verify_variety
from .simple import find_isomorphism, h_from_maximal, is_simple, semisimple_decomposition
from .systems import (MODAL, PLAIN, all_congruences, all_deductive_systems, congruence_to_ds,
                      ds_to_congruence, maximal_modal_ds)


def analyze(A: FiniteAlgebra) -> Dict:
    variety = verify_variety(A)
    report: Dict = {
        "name": A.name,
        "size": A.size,
        "kind": A.kind.value,
        "labels": [A.label(x) for x in range(A.size)],
        "identities": variety.to_dict()["laws"],
        "properties": verify_properties(A).to_dict()["laws"],
        "verified": variety.ok,
    }
    if not variety.ok:
        return report
    plain = all_deductive_systems(A, PLAIN)
    modal = all_deductive_systems(A, MODAL)
    cons = all_congruences(A)
    report["deductive_systems"] = [list(D.elements) for D in plain]
    report["modal_deductive_systems"] = [list(D.elements) for D in modal]
    report["congruences"] = [[list(b) for b in c.blocks()] for c in cons]
    report["ds_congruence_bijection"] = (
        len(modal) == len(cons)
        and all(congruence_to_ds(A, ds_to_congruence(A, D)).elements == D.elements for D in modal))
    maximal = maximal_modal_ds(A)
    report["maximal"] = [{"elements": list(M.elements), "tied_to": M.tied_to,
                          "h": list(h_from_maximal(A, M).mapping)} for M in maximal]
    try:
        report["decomposition"] = semisimple_decomposition(A).to_dict()
    except TrivialAlgebraError:
        report["decomposition"] = None
    simple = is_simple(A)
    report["simple"] = simple
    if simple:
        from .core import c2, c3
        report["isomorphic_to"] = next((C.name for C in (c2(A.kind), c3(A.kind))
                                        if find_isomorphism(A, C) is not None), None)
    gap = missing_meet(A)
    report["missing_meet"] = None if gap is None else [A.label(x) for x in gap]
    return report
