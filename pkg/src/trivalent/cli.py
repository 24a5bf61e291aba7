"""Command-line entry point: ``trivalent <group> <command> [options]``.

Exit status is 0 when the property holds or the proof is accepted, 1 when it is
refuted or rejected, and 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from .errors import BudgetExceeded, ParseError, ProofNotFound, SchemaError, TrivalentError
from .formula import QSUP, Kind, Signature
from .matrix import DEFAULT_MAX_VARS, consequence, format_valuation, is_valid
from .parser import (dump_derivation, format_formula, parse_algebra, parse_derivation, parse_formula,
                     parse_structure)

OK, REFUTED, BAD_INPUT = 0, 1, 2
CALCULI = ("iH3", "H3sup", "QH3sup")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the message on stderr
        self.print_usage(sys.stderr)
        raise UsageError(message)


# -- helpers ----------------------------------------------------------------

def _emit(args, payload: Dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _signature(calculus: str) -> Signature:
    from .proof.calculus import get_calculus
    return get_calculus(calculus).signature


def _kind(calculus: str) -> Kind:
    return Kind.INF if calculus == "iH3" else Kind.SUP


def _formula(text: str, calculus: str, constants: Sequence[str] = ()):
    return parse_formula(text, _signature(calculus), constants=constants)


def _bundled(kind: str, name: str) -> Optional[str]:
    node = resources.files("trivalent") / "data" / kind / name
    return node.read_text(encoding="utf-8") if node.is_file() else None


def _read(path: str, kind: str) -> str:
    """Read ``path``; a bare file name that does not exist falls back to the bundled data of ``kind``."""
    p = Path(path)
    if p.is_file():
        return p.read_text(encoding="utf-8")
    if p.name == path:
        text = _bundled(kind, path) or _bundled(kind, path + ".json")
        if text is not None:
            return text
    raise FileNotFoundError(f"no such file: {path}")


def _load_algebra(spec: str, kind: Kind):
    """A JSON file, or one of the built-in names c2, c3, c3^2, c3^3 and the corpus names."""
    from .algebra import c2, c3, corpus, power
    builtin = {"c2": lambda: c2(kind), "c3": lambda: c3(kind),
               "c3^2": lambda: power(c3(kind), 2), "c3^3": lambda: power(c3(kind), 3)}
    if spec.lower() in builtin:
        return builtin[spec.lower()]()
    if not Path(spec).is_file():
        for A in corpus(kind):
            if A.name == spec:
                return A
    return parse_algebra(_read(spec, "algebras"))


def _structures(paths: Sequence[str]):
    from .fol import structure_corpus
    if not paths:
        return structure_corpus()
    return [parse_structure(_read(p, "structures")) for p in paths]


# -- check ------------------------------------------------------------------

def _report_validity(args, rep, what: str) -> int:
    payload = rep.to_dict()
    if rep.valid:
        _emit(args, payload, f"{what}: holds ({rep.valuations} valuations)")
        return OK
    _emit(args, payload, f"{what}: refuted\ncountermodel: {format_valuation(rep.countermodel)}")
    return REFUTED


def cmd_check_valid(args) -> int:
    phi = _formula(args.formula, args.calculus)
    rep = is_valid(phi, max_vars=args.max_vars)
    return _report_validity(args, rep, "valid")


def cmd_check_consequence(args) -> int:
    prem = [_formula(p, args.calculus) for p in args.premise]
    phi = _formula(args.formula, args.calculus)
    rep = consequence(prem, phi, max_vars=args.max_vars)
    return _report_validity(args, rep, "consequence")


# -- proof ------------------------------------------------------------------

def cmd_proof_check(args) -> int:
    from .proof import check_derivation
    d = parse_derivation(_read(args.file, "derivations"))
    rep = check_derivation(d)
    rows = []
    for v, line in zip(rep.verdicts, d.lines):
        status = "OK  " if v.ok else "FAIL"
        extra = "" if v.ok else f"  -- {v.reason}"
        rows.append(f"{v.line:>3}. {status} {format_formula(line.formula)}  [{line.just}]{extra}")
    bad = rep.first_failure
    tail = "accepted" if rep.ok else f"rejected at line {bad.line}: {bad.reason}" if bad else "rejected: empty"
    _emit(args, rep.to_dict(), "\n".join(rows + [tail]))
    return OK if rep.ok else REFUTED


def cmd_proof_search(args) -> int:
    from .proof import search_derivation
    prem = [_formula(p, args.calculus) for p in args.premise]
    phi = _formula(args.formula, args.calculus)
    try:
        d = search_derivation(phi, prem, calculus=args.calculus, depth=args.depth)
    except ProofNotFound as e:
        _emit(args, {"found": False, "depth": args.depth, "explored": e.explored},
              f"no derivation within {args.depth} lines ({e.explored} formulas settled)")
        return REFUTED
    if args.out:
        Path(args.out).write_text(dump_derivation(d) + "\n", encoding="utf-8")
    payload = {"found": True, "lines": len(d.lines), "derivation": json.loads(dump_derivation(d))}
    _emit(args, payload, d.pretty())
    return OK


# -- algebra ----------------------------------------------------------------

def cmd_algebra_analyze(args) -> int:
    from .algebra import analyze
    A = _load_algebra(args.algebra, _kind(args.calculus))
    rep = analyze(A)
    if args.json:
        _emit(args, rep, "")
        return OK if rep["verified"] else REFUTED
    lines = [f"{rep['name'] or 'algebra'}: {rep['size']} elements, {rep['kind']}"]
    failed = [law for law in rep["identities"] if not law["ok"]]
    if failed:
        for law in failed:
            lines.append(f"identity {law['name']} fails at {law['witness']}")
        print("\n".join(lines))
        return REFUTED
    lines.append("identities: all hold")
    lines.append(f"deductive systems: {len(rep['deductive_systems'])} plain, "
                 f"{len(rep['modal_deductive_systems'])} modal")
    lines.append(f"congruences: {len(rep['congruences'])}")
    lines.append(f"maximal modal systems: {len(rep['maximal'])}")
    if rep.get("decomposition"):
        sizes = " x ".join(f"C{n}" for n in rep["decomposition"]["quotient_sizes"])
        lines.append(f"semisimple: embeds into {sizes}")
    lines.append(f"simple: {rep['simple']}" + (f" (isomorphic to {rep['isomorphic_to']})"
                                                 if rep.get("isomorphic_to") else ""))
    if rep.get("missing_meet"):
        lines.append(f"no meet for {rep['missing_meet']}")
    print("\n".join(lines))
    return OK


def cmd_algebra_free(args) -> int:
    from .algebra import check_universal_property, free_algebra
    F = free_algebra(args.generators, _kind(args.calculus))
    bad = check_universal_property(F)
    payload = {**F.to_dict(), "kind": _kind(args.calculus).value, "universal_property": bad is None}
    _emit(args, payload, f"free algebra on {args.generators} generator(s): {F.algebra.size} elements; "
                         f"universal property {'holds' if bad is None else f'fails at {bad}'}")
    return OK if bad is None else REFUTED


# -- fol --------------------------------------------------------------------

def cmd_fol_eval(args) -> int:
    from .fol import is_true
    if not args.structure:
        raise UsageError("fol eval needs --structure FILE")
    S = _structures(args.structure)[0]
    phi = parse_formula(args.formula, QSUP, constants=tuple(S.consts))
    rep = is_true(S, phi)
    payload = {"formula": format_formula(phi), "structure": S.name, **rep.to_dict(S)}
    if rep:
        _emit(args, payload, f"true in {S.name or 'the structure'} ({rep.assignments} assignments)")
        return OK
    where = ", ".join(f"{k}={v}" for k, v in sorted(rep.witness.items())) or "the empty assignment"
    _emit(args, payload, f"not true: value {S.algebra.label(rep.value)} under {where}")
    return REFUTED


def cmd_fol_audit(args) -> int:
    from .algebra import c3
    from .fol import audit_delta_distribution, audit_first_order_axioms
    structures = _structures(args.structure)
    axioms = audit_first_order_axioms(structures)
    dist = audit_delta_distribution(c3(Kind.SUP))
    ok = axioms.ok and dist.ok
    payload = {"ok": ok, "axioms": axioms.to_dict(), "distribution": dist.to_dict()}
    text = [f"axiom instances: {axioms.instances} ({axioms.excluded} excluded by the side condition)",
            f"structures: {len(structures)}",
            "quantifier axioms and rules: " + ("ok" if axioms.ok else f"{len(axioms.failures)} failure(s)"),
            f"necessity over joins and meets: {'ok' if dist.ok else dist.violations}"]
    text += [f"  {f}" for f in axioms.failures[:10]]
    _emit(args, payload, "\n".join(text))
    return OK if ok else REFUTED


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--calculus", choices=CALCULI, default="H3sup",
                        help="signature and axiom set (default H3sup)")

    p = _Parser(prog="trivalent", description="Trivalent modal Hilbert logics: matrices, proofs, algebras.")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def add(group, name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = group.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    check = groups.add_parser("check", help="semantic checks over C3").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    for name, fn, help in (("valid", cmd_check_valid, "is FORMULA valid?"),
                           ("consequence", cmd_check_consequence, "do the premises entail FORMULA?")):
        sp = add(check, name, fn, help)
        sp.add_argument("formula")
        sp.add_argument("--max-vars", type=int, default=DEFAULT_MAX_VARS)
        if name == "consequence":
            sp.add_argument("-p", "--premise", action="append", default=[])

    proof = groups.add_parser("proof", help="derivations").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    sp = add(proof, "check", cmd_proof_check, "check a derivation file")
    sp.add_argument("file")
    sp = add(proof, "search", cmd_proof_search, "search for a derivation")
    sp.add_argument("formula")
    sp.add_argument("-p", "--premise", action="append", default=[])
    sp.add_argument("--depth", type=int, default=8)
    sp.add_argument("--out", help="write the derivation found to this file")

    alg = groups.add_parser("algebra", help="finite algebras").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    sp = add(alg, "analyze", cmd_algebra_analyze, "structural report on one algebra")
    sp.add_argument("--algebra", required=True, help="JSON file or c2, c3, c3^2, c3^3")
    sp = add(alg, "free", cmd_algebra_free, "free algebra on N generators")
    sp.add_argument("generators", type=int)

    fol = groups.add_parser("fol", help="first-order structures").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    sp = add(fol, "eval", cmd_fol_eval, "truth of a formula in a structure")
    sp.add_argument("formula")
    sp.add_argument("--structure", action="append", default=[])
    sp = add(fol, "audit", cmd_fol_audit, "quantifier axioms and rules over structures")
    sp.add_argument("--structure", action="append", default=[], help="defaults to the bundled corpus")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except UsageError as e:
        print(f"trivalent: error: {e}", file=sys.stderr)
    except ParseError as e:
        print(f"trivalent: parse error: {e}", file=sys.stderr)
    except (SchemaError, OSError, ValueError, BudgetExceeded, TrivalentError) as e:
        print(f"trivalent: error: {e}", file=sys.stderr)
    return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
