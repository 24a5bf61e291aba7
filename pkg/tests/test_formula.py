import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trivalent.errors import CaptureError, SignatureError
from trivalent.fol import example_structure, is_true
from trivalent.fol.semantics import eval_formula
from trivalent.formula import (INF, QSUP, SUP, And, Const, Exists, Forall, Func, Imp, Meta, Nabla, Nec, Or, Pred,
                               TVar, Var, expand, free_individual_vars, free_vars, instantiate, is_free_for,
                               match_schema, metavariables, nabla, substitute, term_vars,
                               universal_closure)
from trivalent.parser import parse_formula

from conftest import GREEK, fo_formulas, schemas, sup_formulas, terms

p, q, r = Var("p"), Var("q"), Var("r")
x, y = TVar("x"), TVar("y")
c = Const("c")


def P(*args):
    return Pred("P", args)


class TestSubstitute:
    def test_replaces_free_occurrence(self):
        assert substitute(P(x), "x", c) == P(c)

    def test_bound_occurrence_untouched(self):
        f = Forall("x", P(x))
        assert substitute(f, "x", c) == f

    def test_capture_is_reported(self):
        f = Exists("y", P(x, y))
        with pytest.raises(CaptureError):
            substitute(f, "x", Func("f", (y,)))

    def test_no_renaming_under_capture(self):
        assert not is_free_for(y, "x", Forall("y", P(x, y)))

    @given(fo_formulas(), terms, st.sampled_from("xyz"))
    @settings(max_examples=200)
    def test_capture_check_is_exact(self, phi, t, var):
        """Substitution succeeds exactly when no variable of the term ends up bound."""
        if not is_free_for(t, var, phi):
            with pytest.raises(CaptureError):
                substitute(phi, var, t)
            return
        out = substitute(phi, var, t)
        if var in free_individual_vars(phi):
            assert term_vars(t) <= free_individual_vars(out)
        else:
            assert out == phi


class TestFreeVars:
    def test_quantified_variable_is_bound(self):
        assert free_vars(Forall("x", Pred("P", (x, y)))) == {"y"}

    def test_propositional(self):
        assert free_vars(Imp(p, Nec(p))) == {"p"}

    def test_sentence(self):
        assert free_vars(Exists("x", P(x))) == frozenset()


class TestMatchSchema:
    k = Imp(Meta("α"), Imp(Meta("β"), Meta("α")))

    def test_match(self):
        assert match_schema(self.k, Imp(p, Imp(q, p))) == {"α": p, "β": q}

    def test_no_match(self):
        assert match_schema(self.k, Imp(p, Imp(q, r))) is None

    def test_compound_instance(self):
        t = Imp(Nec(Meta("α")), Meta("α"))
        assert match_schema(t, Imp(Nec(Or(p, q)), Or(p, q))) == {"α": Or(p, q)}

    def test_metavariable_positions_are_opaque(self):
        # the bound formula is compared whole, never matched again inside
        t = Imp(Meta("α"), Meta("α"))
        assert match_schema(t, Imp(Imp(p, q), Imp(p, q))) == {"α": Imp(p, q)}
        assert match_schema(t, Imp(Imp(p, q), Imp(q, p))) is None

    @given(schemas(), st.fixed_dictionaries({g: sup_formulas(max_leaves=4) for g in GREEK}))
    def test_match_inverts_instantiate(self, pattern, mapping):
        found = match_schema(pattern, instantiate(pattern, mapping))
        assert found == {k: v for k, v in mapping.items() if k in metavariables(pattern)}


class TestDefinedConnectives:
    def test_nabla_expands(self):
        assert expand(Nabla(p), SUP) == Imp(Imp(p, Nec(p)), Nec(p))

    def test_nabla_helper_matches(self):
        assert nabla(p) == Imp(Imp(p, Nec(p)), Nec(p))

    def test_join_under_inf(self):
        want = And(Imp(Imp(p, q), q), Imp(Imp(q, p), p))
        assert expand(Or(p, q), INF) == want

    def test_meet_is_not_definable_in_sup(self):
        with pytest.raises(SignatureError):
            expand(And(p, q), SUP)

    def test_join_is_primitive_in_sup(self):
        assert expand(Or(p, q), SUP) == Or(p, q)


class TestUniversalClosure:
    def test_lexicographic_order(self):
        f = Pred("R", (x, y))
        assert universal_closure(f) == Forall("x", Forall("y", f))
        assert universal_closure(Pred("R", (y, x))) == Forall("x", Forall("y", Pred("R", (y, x))))

    def test_sentence_unchanged(self):
        f = Forall("x", P(x))
        assert universal_closure(f) is f

    def test_propositional_unchanged(self):
        assert universal_closure(Imp(p, p)) == Imp(p, p)

    def test_either_order_gives_the_same_value(self):
        S = example_structure()
        f = parse_formula("R(x, y) -> R(y, x)", QSUP)
        lex = universal_closure(f)
        other = Forall("y", Forall("x", f))
        assert eval_formula(S, {}, lex) == eval_formula(S, {}, other)

    @given(fo_formulas(max_leaves=4))
    @settings(max_examples=60)
    def test_closure_is_a_sentence(self, phi):
        closed = universal_closure(phi)
        assert free_individual_vars(closed) == frozenset()
        S = example_structure()
        values = {eval_formula(S, {"x": a, "y": b, "z": a}, closed) for a in range(2) for b in range(2)}
        assert len(values) == 1
        assert bool(is_true(S, closed)) == (values == {2})
