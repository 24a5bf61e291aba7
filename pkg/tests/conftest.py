"""Shared hypothesis strategies for formulas, terms and valuations."""

from hypothesis import strategies as st

from trivalent.formula import (And, Const, Exists, Forall, Func, Imp, Meta, Nec, Or, Pred, TVar, Var)

PROP_NAMES = ("p", "q", "r")
IND_NAMES = ("x", "y", "z")
GREEK = ("α", "β", "γ")


def prop_formulas(connectives=("imp", "or", "and", "nec"), names=PROP_NAMES, max_leaves=8):
    leaves = st.sampled_from([Var(n) for n in names])

    def extend(sub):
        options = []
        if "imp" in connectives:
            options.append(st.builds(Imp, sub, sub))
        if "and" in connectives:
            options.append(st.builds(And, sub, sub))
        if "or" in connectives:
            options.append(st.builds(Or, sub, sub))
        if "nec" in connectives:
            options.append(st.builds(Nec, sub))
        return st.one_of(options)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def sup_formulas(**kw):
    return prop_formulas(("imp", "or", "nec"), **kw)


def inf_formulas(**kw):
    return prop_formulas(("imp", "and", "nec"), **kw)


def schemas(max_leaves=6):
    leaves = st.sampled_from([Meta(g) for g in GREEK])
    return st.recursive(leaves, lambda s: st.one_of(st.builds(Imp, s, s), st.builds(Or, s, s), st.builds(Nec, s)),
                        max_leaves=max_leaves)


terms = st.recursive(
    st.one_of(st.sampled_from([TVar(n) for n in IND_NAMES]), st.just(Const("c"))),
    lambda s: st.builds(lambda a: Func("f", (a,)), s),
    max_leaves=3,
)


def fo_formulas(max_leaves=6):
    atoms = st.one_of(st.builds(lambda t: Pred("P", (t,)), terms),
                      st.builds(lambda a, b: Pred("R", (a, b)), terms, terms))
    quant = st.sampled_from(IND_NAMES)

    def extend(sub):
        return st.one_of(st.builds(Imp, sub, sub), st.builds(Or, sub, sub), st.builds(Nec, sub),
                         st.builds(Forall, quant, sub), st.builds(Exists, quant, sub))

    return st.recursive(atoms, extend, max_leaves=max_leaves)


valuations = st.fixed_dictionaries({n: st.integers(0, 2) for n in PROP_NAMES})
