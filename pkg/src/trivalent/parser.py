"""Concrete syntax: formula grammar, pretty printers, and the JSON container formats.

Grammar (loosest to tightest)::

    formula := ('forall' | 'exists') IDENT '.' formula | imp
    imp     := junct ['->' (quantified | imp)]          right associative
    junct   := unary (('/\\' | '\\/') unary)*            left associative
    unary   := ('#' | 'nabla') unary | atom
    atom    := '(' formula ')' | var | Pred '(' terms ')' | metavariable

Unicode spellings are accepted for every connective.  Lower-case identifiers
are propositional variables (or terms inside predicate arguments); upper-case
identifiers are predicate symbols.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ArityError, DomainError, ParseError, SchemaError, SignatureError
from .formula import (
    SUP, And, Binary, Const, Exists, Forall, Formula, Func, Imp, Kind, Meta, Nabla, Nec,
    Or, Pred, Quantifier, Signature, Term, TVar, Var, expand,
)


@dataclass(frozen=True)
class SourceSpan:
    start: int  # byte offsets into the UTF-8 encoding
    end: int
    line: int
    column: int

    @classmethod
    def at(cls, text: str, start: int, end: Optional[int] = None) -> "SourceSpan":
        end = start if end is None else end
        start, end = min(start, len(text)), min(end, len(text))
        line = text.count("\n", 0, start) + 1
        column = start - (text.rfind("\n", 0, start) + 1) + 1
        b = lambda i: len(text[:i].encode("utf-8"))
        return cls(b(start), b(end), line, column)


# -- tokens ----------------------------------------------------------------

_SYMBOLS = {
    "->": "IMP", "→": "IMP",
    "/\\": "AND", "∧": "AND",
    "\\/": "OR", "∨": "OR",
    "#": "NEC", "△": "NEC", "∆": "NEC",
    "∇": "NABLA",
    "∀": "FORALL", "∃": "EXISTS",
    "(": "(", ")": ")", ",": ",", ".": ".",
}
_KEYWORDS = {"nabla": "NABLA", "forall": "FORALL", "exists": "EXISTS"}
_GREEK = "αβγδεζηθικλμνξοπρστυφχψω"
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<sym>->|/\\|\\/|[→∧∨#△∆∇∀∃(),.])"
    r"|(?P<meta>\$[A-Za-z_][A-Za-z0-9_]*|[" + _GREEK + r"][0-9']*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*))"
)

_EXPECT_ATOM = ("(", "#", "nabla", "variable", "predicate")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int
    end: int


def _tokenize(text: str) -> List[_Tok]:
    toks, i = [], 0
    while True:
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text):
            break
        m = _TOKEN_RE.match(text, i)
        if m is None or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", SourceSpan.at(text, i, i + 1),
                             _EXPECT_ATOM)
        if m.group("sym"):
            s = m.group("sym")
            toks.append(_Tok(_SYMBOLS[s], s, m.start("sym"), m.end()))
        elif m.group("meta"):
            s = m.group("meta")
            toks.append(_Tok("META", s.lstrip("$"), m.start("meta"), m.end()))
        else:
            s = m.group("ident")
            toks.append(_Tok(_KEYWORDS.get(s, "IDENT"), s, m.start("ident"), m.end()))
        i = m.end()
    toks.append(_Tok("EOF", "", len(text), len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, sig: Signature, constants: frozenset, allow_meta: bool):
        self.text = text
        self.sig = sig
        self.constants = constants
        self.allow_meta = allow_meta
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def span(self, tok: _Tok) -> SourceSpan:
        return SourceSpan.at(self.text, tok.pos, tok.end)

    def fail(self, expected: Iterable[str], message: Optional[str] = None):
        tok = self.tok
        what = "end of input" if tok.kind == "EOF" else repr(tok.text)
        raise ParseError(message or f"unexpected {what}", self.span(tok), expected)

    def eat(self, kind: str, expected: str) -> _Tok:
        if self.tok.kind != kind:
            self.fail([expected])
        tok = self.tok
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.formula()
        if self.tok.kind != "EOF":
            self.fail(["end of input", "->", "/\\", "\\/"])
        return f

    def formula(self) -> Formula:
        if self.tok.kind in ("FORALL", "EXISTS"):
            return self.quantified()
        return self.imp()

    def quantified(self) -> Formula:
        tok = self.tok
        if not self.sig.first_order:
            raise SignatureError(f"quantifier at offset {tok.pos} needs a first-order signature")
        self.i += 1
        var = self.eat("IDENT", "variable")
        if not var.text[0].islower():
            raise ParseError("bound variables must start in lower case", self.span(var), ["variable"])
        self.eat(".", ".")
        body = self.formula()
        return (Forall if tok.kind == "FORALL" else Exists)(var.text, body)

    def imp(self) -> Formula:
        lhs = self.junct()
        if self.tok.kind == "IMP":
            self.i += 1
            rhs = self.quantified() if self.tok.kind in ("FORALL", "EXISTS") else self.imp()
            return Imp(lhs, rhs)
        return lhs

    def junct(self) -> Formula:
        f = self.unary()
        while self.tok.kind in ("AND", "OR"):
            tok = self.tok
            if tok.kind == "AND" and self.sig.kind is Kind.SUP:
                raise SignatureError(f"conjunction at offset {tok.pos} is not in the SUP signature")
            self.i += 1
            f = (And if tok.kind == "AND" else Or)(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.tok.kind
        if kind in ("NEC", "NABLA"):
            self.i += 1
            return (Nec if kind == "NEC" else Nabla)(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.tok
        if tok.kind == "(":
            self.i += 1
            f = self.formula()
            self.eat(")", ")")
            return f
        if tok.kind == "META":
            if not self.allow_meta:
                raise ParseError("metavariables are only allowed in schemas", self.span(tok), _EXPECT_ATOM)
            self.i += 1
            return Meta(tok.text)
        if tok.kind == "IDENT":
            self.i += 1
            if tok.text[0].isupper():
                if not self.sig.first_order:
                    raise SignatureError(f"predicate {tok.text} needs a first-order signature")
                self.eat("(", "(")
                return Pred(tok.text, self.terms())
            if self.tok.kind == "(":
                self.fail(["->", "/\\", "\\/", ")"], "propositional variables take no arguments")
            return Var(tok.text)
        self.fail(_EXPECT_ATOM)

    def terms(self) -> Tuple[Term, ...]:
        args = [self.term()]
        while self.tok.kind == ",":
            self.i += 1
            args.append(self.term())
        self.eat(")", ")")
        return tuple(args)

    def term(self) -> Term:
        tok = self.eat("IDENT", "term")
        if tok.text[0].isupper():
            raise ParseError("terms start in lower case", self.span(tok), ["term"])
        if self.tok.kind == "(":
            self.i += 1
            return Func(tok.text, self.terms())
        return Const(tok.text) if tok.text in self.constants else TVar(tok.text)


def parse_formula(text: str, sig: Signature = SUP, *, constants: Iterable[str] = (),
                  allow_meta: bool = False, expand_macros: bool = True) -> Formula:
    """Parse ``text`` under ``sig``.  Macros are expanded unless ``expand_macros`` is false."""
    f = _Parser(text, sig, frozenset(constants), allow_meta).parse()
    return expand(f, sig) if expand_macros else f


def parse_schema(text: str, sig: Signature = SUP) -> Formula:
    return parse_formula(text, sig, allow_meta=True)


# -- printing --------------------------------------------------------------

_ASCII = {"imp": " -> ", "and": " /\\ ", "or": " \\/ ", "nec": "#", "nabla": "nabla ",
          "forall": "forall {}. ", "exists": "exists {}. "}
_UNICODE = {"imp": " → ", "and": " ∧ ", "or": " ∨ ", "nec": "△", "nabla": "∇",
            "forall": "∀{}. ", "exists": "∃{}. "}


def format_term(t: Term) -> str:
    if isinstance(t, Func):
        return f"{t.symbol}({', '.join(format_term(a) for a in t.args)})"
    return t.name


def format_formula(phi: Formula, unicode: bool = False) -> str:
    sym = _UNICODE if unicode else _ASCII

    def meta(name: str) -> str:
        return name if name[0] in _GREEK else "$" + name

    def paren(s: str) -> str:
        return "(" + s + ")"

    def go(f: Formula) -> str:
        if isinstance(f, Var):
            return f.name
        if isinstance(f, Meta):
            return meta(f.name)
        if isinstance(f, Pred):
            return f"{f.symbol}({', '.join(format_term(a) for a in f.args)})"
        if isinstance(f, (Nec, Nabla)):
            inner = go(f.sub)
            if isinstance(f.sub, Binary + Quantifier):
                inner = paren(inner)
            return sym["nec" if isinstance(f, Nec) else "nabla"] + inner
        if isinstance(f, Imp):
            left = go(f.lhs)
            if isinstance(f.lhs, (Imp,) + Quantifier):
                left = paren(left)
            return left + sym["imp"] + go(f.rhs)
        if isinstance(f, (And, Or)):
            left, right = go(f.lhs), go(f.rhs)
            if isinstance(f.lhs, (Imp,) + Quantifier) or (isinstance(f.lhs, (And, Or)) and type(f.lhs) is not type(f)):
                left = paren(left)
            if isinstance(f.rhs, Binary + Quantifier):
                right = paren(right)
            return left + sym["and" if isinstance(f, And) else "or"] + right
        if isinstance(f, Quantifier):
            var = meta(f.var.name) if isinstance(f.var, Meta) else f.var
            return sym["forall" if isinstance(f, Forall) else "exists"].format(var) + go(f.body)
        raise TypeError(f"not a formula: {f!r}")

    return go(phi)


# -- JSON containers -------------------------------------------------------

def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, SourceSpan.at(text, e.pos, min(e.pos + 1, len(text))), ["JSON value"])


def _require(d: Dict, key: str, field: str, types) -> Any:
    if not isinstance(d, dict):
        raise SchemaError(field or "<root>", "expected a JSON object")
    if key not in d:
        raise SchemaError(f"{field}.{key}".lstrip("."), "missing field")
    value = d[key]
    if not isinstance(value, types) or isinstance(value, bool):
        raise SchemaError(f"{field}.{key}".lstrip("."), f"wrong type {type(value).__name__}")
    return value


def _table(rows: Any, n: int, dims: int, field: str) -> List:
    if dims == 1:
        if not isinstance(rows, list) or len(rows) != n:
            raise ArityError(field, f"expected a list of {n} entries")
        for i, v in enumerate(rows):
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError(f"{field}[{i}]", "entries must be integers")
            if not 0 <= v < n:
                raise DomainError(f"{field}[{i}]", f"entry {v} outside carrier 0..{n - 1}")
        return list(rows)
    if not isinstance(rows, list) or len(rows) != n:
        raise ArityError(field, f"expected {n} rows")
    return [_table(r, n, 1, f"{field}[{i}]") for i, r in enumerate(rows)]


def algebra_from_dict(d: Dict, field: str = ""):
    from .algebra.core import FiniteAlgebra

    n = _require(d, "carrier", field, int)
    if n < 1:
        raise SchemaError(f"{field}.carrier".lstrip("."), "carrier must be positive")
    one = _require(d, "one", field, int)
    if not 0 <= one < n:
        raise DomainError(f"{field}.one".lstrip("."), f"element {one} outside carrier")
    imp = _table(_require(d, "imp", field, list), n, 2, f"{field}.imp".lstrip("."))
    nec = _table(_require(d, "nec", field, list), n, 1, f"{field}.nec".lstrip("."))
    has_meet, has_join = "meet" in d, "join" in d
    if has_meet == has_join:
        raise SchemaError(field or "<root>", "exactly one of 'meet' or 'join' is required")
    key = "meet" if has_meet else "join"
    lattice = _table(_require(d, key, field, list), n, 2, f"{field}.{key}".lstrip("."))
    labels = d.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n
                               or not all(isinstance(s, str) for s in labels)):
        raise SchemaError(f"{field}.labels".lstrip("."), f"expected {n} strings")
    return FiniteAlgebra(imp=imp, nec=nec, one=one, meet=lattice if has_meet else None,
                         join=lattice if has_join else None,
                         labels=tuple(labels) if labels else None, name=d.get("name", ""))


def algebra_to_dict(A) -> Dict:
    d: Dict[str, Any] = {"carrier": A.size, "one": A.one, "imp": A.imp.tolist()}
    if A.kind is Kind.INF:
        d["meet"] = A.meet.tolist()
    else:
        d["join"] = A.join.tolist()
    d["nec"] = A.nec.tolist()
    if A.labels:
        d["labels"] = list(A.labels)
    if A.name:
        d["name"] = A.name
    return d


def parse_algebra(text: str):
    return algebra_from_dict(_load_json(text))


def dump_algebra(A) -> str:
    return json.dumps(algebra_to_dict(A), indent=2)


_JUST_ARITY = {"axiom": 0, "premise": 0, "mp": 2, "nec": 1, "rand": 1, "r3": 1, "r4": 1}


def derivation_from_dict(d: Dict):
    from .proof.calculus import CALCULI
    from .proof.derivation import Derivation, Justification, Line

    calc_id = _require(d, "calculus", "", str)
    if calc_id not in CALCULI:
        raise SchemaError("calculus", f"unknown calculus {calc_id!r}")
    sig = CALCULI[calc_id].signature
    constants = d.get("constants", [])
    if not isinstance(constants, list) or not all(isinstance(c, str) for c in constants):
        raise SchemaError("constants", "expected a list of strings")

    def formula(text: Any, field: str) -> Formula:
        if not isinstance(text, str):
            raise SchemaError(field, "formulas are strings")
        try:
            return parse_formula(text, sig, constants=constants)
        except ParseError as e:
            raise ParseError(f"{field}: {e.message}", e.span, e.expected) from e
        except SignatureError as e:
            raise SignatureError(f"{field}: {e}") from e

    premises = d.get("premises", [])
    if not isinstance(premises, list):
        raise SchemaError("premises", "expected a list")
    prem = tuple(formula(p, f"premises[{i}]") for i, p in enumerate(premises))
    lines = []
    for i, raw in enumerate(_require(d, "lines", "", list)):
        field = f"lines[{i}]"
        f = formula(_require(raw, "formula", field, str), f"{field}.formula")
        j = _require(raw, "just", field, dict)
        kind = _require(j, "kind", f"{field}.just", str)
        if kind not in _JUST_ARITY:
            raise SchemaError(f"{field}.just.kind", f"unknown rule {kind!r}")
        refs: Tuple[int, ...] = ()
        if _JUST_ARITY[kind]:
            refs = tuple(_require(j, "from", f"{field}.just", list))
            if len(refs) != _JUST_ARITY[kind]:
                raise ArityError(f"{field}.just.from", f"{kind} cites {_JUST_ARITY[kind]} line(s)")
            if not all(isinstance(r, int) and not isinstance(r, bool) for r in refs):
                raise SchemaError(f"{field}.just.from", "line numbers are integers")
        if kind == "premise":
            refs = (_require(j, "index", f"{field}.just", int),)
        schema = j.get("schema") if kind == "axiom" else None
        if schema is not None and not isinstance(schema, str):
            raise SchemaError(f"{field}.just.schema", "expected a string")
        var = None
        if kind in ("r3", "r4"):
            var = _require(j, "var", f"{field}.just", str)
        lines.append(Line(f, Justification(kind, refs, schema, var)))
    return Derivation(calc_id, prem, tuple(lines), name=d.get("name", ""),
                      constants=tuple(constants))


def derivation_to_dict(D) -> Dict:
    def just(j) -> Dict:
        out: Dict[str, Any] = {"kind": j.kind}
        if j.kind == "premise":
            out["index"] = j.refs[0]
        elif j.refs:
            out["from"] = list(j.refs)
        if j.schema:
            out["schema"] = j.schema
        if j.var:
            out["var"] = j.var
        return out

    d: Dict[str, Any] = {}
    if D.name:
        d["name"] = D.name
    d["calculus"] = D.calculus
    if D.constants:
        d["constants"] = list(D.constants)
    d["premises"] = [format_formula(p) for p in D.premises]
    d["lines"] = [{"formula": format_formula(l.formula), "just": just(l.just)} for l in D.lines]
    return d


def parse_derivation(text: str):
    return derivation_from_dict(_load_json(text))


def dump_derivation(D) -> str:
    return json.dumps(derivation_to_dict(D), indent=2, ensure_ascii=False)


def _tuple_key(key: str, field: str) -> Tuple[str, ...]:
    if not (key.startswith("(") and key.endswith(")")):
        raise SchemaError(field, f"tuple keys look like '(a,b)', got {key!r}")
    inner = key[1:-1].strip()
    return tuple(p.strip() for p in inner.split(",")) if inner else ()


def _interp_table(raw: Any, domain: Sequence[str], field: str, value) -> Tuple[int, Dict]:
    if not isinstance(raw, dict) or not raw:
        raise SchemaError(field, "expected a non-empty object of tuple keys")
    table, arity = {}, None
    index = {a: i for i, a in enumerate(domain)}
    for key, v in raw.items():
        args = _tuple_key(key, f"{field}[{key}]")
        if arity is None:
            arity = len(args)
        if len(args) != arity:
            raise ArityError(f"{field}[{key}]", f"expected {arity} arguments")
        for a in args:
            if a not in index:
                raise DomainError(f"{field}[{key}]", f"{a!r} is not in the domain")
        table[tuple(index[a] for a in args)] = value(v, f"{field}[{key}]")
    if arity == 0:
        raise ArityError(field, "functions and predicates have arity at least 1")
    for args in itertools.product(range(len(domain)), repeat=arity):
        if args not in table:
            raise SchemaError(field, f"missing entry ({','.join(domain[a] for a in args)})")
    return arity, table


def structure_from_dict(d: Dict):
    from .fol.semantics import Structure

    A = algebra_from_dict(_require(d, "algebra", "", dict), "algebra")
    domain = _require(d, "domain", "", list)
    if not domain or not all(isinstance(a, str) and a and not set(a) & set("(),") for a in domain):
        raise SchemaError("domain", "expected a non-empty list of plain names")
    if len(set(domain)) != len(domain):
        raise SchemaError("domain", "duplicate elements")
    index = {a: i for i, a in enumerate(domain)}
    labels = {lab: i for i, lab in enumerate(A.labels or ())}

    def element(v: Any, field: str) -> int:
        if v in index and isinstance(v, str):
            return index[v]
        raise DomainError(field, f"{v!r} is not in the domain")

    def truth(v: Any, field: str) -> int:
        if isinstance(v, str) and v in labels:
            return labels[v]
        if isinstance(v, int) and not isinstance(v, bool):
            if 0 <= v < A.size:
                return v
            raise DomainError(field, f"value {v} outside carrier 0..{A.size - 1}")
        raise SchemaError(field, f"bad algebra element {v!r}")

    consts = d.get("consts", {})
    if not isinstance(consts, dict):
        raise SchemaError("consts", "expected an object")
    const_map = {c: element(v, f"consts.{c}") for c, v in consts.items()}
    funcs = {f: _interp_table(t, domain, f"funcs.{f}", element) for f, t in d.get("funcs", {}).items()}
    preds = {p: _interp_table(t, domain, f"preds.{p}", truth) for p, t in d.get("preds", {}).items()}
    clash = set(const_map) & set(funcs) or set(preds) & (set(const_map) | set(funcs))
    if clash:
        raise SchemaError("consts", f"symbol used twice: {sorted(clash)}")
    return Structure(A, tuple(domain), const_map, funcs, preds, name=d.get("name", ""))


def structure_to_dict(S) -> Dict:
    def key(args) -> str:
        return "(" + ",".join(S.domain[a] for a in args) + ")"

    d: Dict[str, Any] = {}
    if S.name:
        d["name"] = S.name
    d["algebra"] = algebra_to_dict(S.algebra)
    d["domain"] = list(S.domain)
    d["consts"] = {c: S.domain[a] for c, a in sorted(S.consts.items())}
    d["funcs"] = {f: {key(k): S.domain[v] for k, v in sorted(t.items())}
                  for f, (_, t) in sorted(S.funcs.items())}
    d["preds"] = {p: {key(k): v for k, v in sorted(t.items())} for p, (_, t) in sorted(S.preds.items())}
    return d


def parse_structure(text: str):
    return structure_from_dict(_load_json(text))


def dump_structure(S) -> str:
    return json.dumps(structure_to_dict(S), indent=2)
