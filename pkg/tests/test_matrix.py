import itertools

import pytest
from hypothesis import given, settings

from trivalent.errors import VariableBudgetExceeded
from trivalent.formula import INF, SUP, And, Imp, Nec, Or, Var, nabla
from trivalent.matrix import (TruthValue, check_derived_implication_formulas, consequence, eval_c3, format_valuation,
                              is_valid)
from trivalent.parser import parse_formula
from trivalent.proof import H3SUP, IH3
from trivalent.formula import SchemaPattern, instantiate

from conftest import inf_formulas, sup_formulas, valuations

ZERO, HALF, ONE = TruthValue.ZERO, TruthValue.HALF, TruthValue.ONE
p, q, r = Var("p"), Var("q"), Var("r")


def oracle(phi, v):
    """Scalar evaluator from the closed forms, independent of the shipped tables."""
    if isinstance(phi, Var):
        return v[phi.name]
    if isinstance(phi, Imp):
        a, b = oracle(phi.lhs, v), oracle(phi.rhs, v)
        return 2 if a <= b else b
    if isinstance(phi, And):
        return min(oracle(phi.lhs, v), oracle(phi.rhs, v))
    if isinstance(phi, Or):
        return max(oracle(phi.lhs, v), oracle(phi.rhs, v))
    if isinstance(phi, Nec):
        return 2 if oracle(phi.sub, v) == 2 else 0
    raise TypeError(phi)


class TestTables:
    # implication, rows are the antecedent
    IMPLICATION = {(0, 0): 2, (0, 1): 2, (0, 2): 2, (1, 0): 0, (1, 1): 2, (1, 2): 2, (2, 0): 0, (2, 1): 1, (2, 2): 2}
    # x -> (nabla x, necessity x)
    MODAL = {0: (0, 0), 1: (2, 0), 2: (2, 2)}

    @pytest.mark.parametrize("x,y", list(IMPLICATION))
    def test_implication(self, x, y):
        assert eval_c3(Imp(p, q), {"p": x, "q": y}) == self.IMPLICATION[x, y]

    @pytest.mark.parametrize("x", [0, 1, 2])
    def test_modal_operators(self, x):
        poss, nec = self.MODAL[x]
        assert eval_c3(nabla(p), {"p": x}) == poss
        assert eval_c3(Nec(p), {"p": x}) == nec

    def test_half_cases(self):
        assert eval_c3(Imp(p, q), {"p": HALF, "q": ZERO}) == ZERO
        assert eval_c3(Nec(p), {"p": HALF}) == ZERO
        assert eval_c3(nabla(p), {"p": HALF}) == ONE

    def test_defined_join_under_inf(self):
        # ((1/2 -> 0) -> 0) /\ ((0 -> 1/2) -> 1/2) = 1 /\ 1/2
        f = parse_formula("p \\/ q", INF)
        assert eval_c3(f, {"p": HALF, "q": ZERO}) == HALF

    def test_truth_value_labels(self):
        assert [str(v) for v in TruthValue] == ["0", "1/2", "1"]
        assert TruthValue.parse("½") is HALF

    @given(sup_formulas(), valuations)
    def test_matches_oracle_sup(self, phi, v):
        assert eval_c3(phi, v) == oracle(phi, v)

    @given(inf_formulas(), valuations)
    def test_matches_oracle_inf(self, phi, v):
        assert eval_c3(phi, v) == oracle(phi, v)

    @given(inf_formulas(), valuations)
    def test_defined_join_is_max(self, phi, v):
        f = parse_formula("p \\/ q", INF)
        assert eval_c3(f, v) == max(v["p"], v["q"])

    @given(sup_formulas(), valuations)
    def test_nabla_macro_coherent(self, phi, v):
        assert eval_c3(nabla(phi), v) == eval_c3(Imp(Imp(phi, Nec(phi)), Nec(phi)), v)
        assert eval_c3(nabla(phi), v) == (0 if oracle(phi, v) == 0 else 2)

    @given(inf_formulas(), valuations)
    def test_two_valued_restriction_is_classical(self, phi, v):
        v = {k: 2 * (x // 2) for k, x in v.items()}  # collapse 1/2 to 0
        classical = _classical(phi, {k: x == 2 for k, x in v.items()})
        assert (eval_c3(phi, v) == 2) == classical
        assert eval_c3(phi, v) in (0, 2)

    def test_order_via_implication(self):
        for x, y in itertools.product(range(3), repeat=2):
            assert (eval_c3(Imp(p, q), {"p": x, "q": y}) == 2) == (x <= y)


def _classical(phi, v):
    if isinstance(phi, Var):
        return v[phi.name]
    if isinstance(phi, Imp):
        return (not _classical(phi.lhs, v)) or _classical(phi.rhs, v)
    if isinstance(phi, And):
        return _classical(phi.lhs, v) and _classical(phi.rhs, v)
    if isinstance(phi, Or):
        return _classical(phi.lhs, v) or _classical(phi.rhs, v)
    if isinstance(phi, Nec):
        return _classical(phi.sub, v)
    raise TypeError(phi)


class TestValidity:
    def test_identity(self):
        assert is_valid(Imp(p, p))

    def test_literal_ninth_schema_is_not_valid(self):
        f = parse_formula("((q -> #q) -> (p -> #(p -> q))) -> #(p -> q)", INF)
        rep = is_valid(f)
        assert not rep and rep.countermodel == {"p": ONE, "q": HALF}

    def test_adopted_ninth_schema_is_valid(self):
        f = parse_formula("((q -> #q) -> #p) -> (((p -> #p) -> #q) -> #(p -> q))", INF)
        assert is_valid(f)

    def test_countermodel_is_least(self):
        rep = is_valid(Imp(Nec(p), q))
        assert not rep.valid
        assert rep.countermodel == {"p": ONE, "q": ZERO}
        assert format_valuation(rep.countermodel) == "p=1, q=0"
        assert rep.valuations == 9

    def test_countermodel_is_lexicographically_least(self):
        phi = parse_formula("(p -> q) \\/ r")
        bad = [v for v in itertools.product(range(3), repeat=3)
               if oracle(phi, dict(zip("pqr", v))) != 2]
        rep = is_valid(phi)
        assert tuple(int(rep.countermodel[k]) for k in "pqr") == min(bad)

    def test_third_value_matters(self):
        # excluded middle in implicational form: classically valid, fails at 1/2
        phi = parse_formula("((p -> q) -> p) -> p")
        assert is_valid(phi, two_valued=True)
        assert not is_valid(phi)

    def test_variable_cap(self):
        phi = parse_formula(" -> ".join(f"p{i}" for i in range(5)))
        with pytest.raises(VariableBudgetExceeded):
            is_valid(phi, max_vars=4)

    @given(sup_formulas(max_leaves=6))
    @settings(max_examples=150)
    def test_validity_matches_oracle(self, phi):
        expected = all(oracle(phi, dict(zip("pqr", v))) == 2 for v in itertools.product(range(3), repeat=3))
        assert bool(is_valid(phi)) == expected


class TestConsequence:
    def test_modus_ponens(self):
        assert consequence([p, Imp(p, q)], q)

    def test_necessitation(self):
        assert consequence([p], Nec(p))

    def test_empty_premises(self):
        rep = consequence([], p)
        assert not rep and rep.countermodel == {"p": ZERO}

    @given(sup_formulas(max_leaves=4), sup_formulas(max_leaves=4))
    @settings(max_examples=100)
    def test_rules_preserve_truth(self, a, b):
        assert consequence([a, Imp(a, b)], b)
        assert consequence([a], Nec(a))

    @given(inf_formulas(max_leaves=4), inf_formulas(max_leaves=4))
    @settings(max_examples=100)
    def test_conjunction_rule_preserves_truth(self, a, b):
        assert consequence([Imp(a, b)], Imp(a, And(a, b)))


def _axiom_instances(calc):
    letters = [p, q, r]
    for ax in calc.axioms:
        if isinstance(ax, SchemaPattern):
            names = sorted(ax.metavariables)
            yield ax.id, instantiate(ax, dict(zip(names, letters)))


@pytest.mark.parametrize("calc", [IH3, H3SUP], ids=lambda c: c.id)
def test_axioms_are_valid(calc):
    seen = 0
    for axiom_id, inst in _axiom_instances(calc):
        seen += 1
        assert is_valid(inst), axiom_id
    assert seen == 10


@pytest.mark.parametrize("calc", [IH3, H3SUP], ids=lambda c: c.id)
def test_axioms_valid_under_all_small_instantiations(calc):
    subs = [p, q, Nec(p), Imp(p, q)] + ([Or(p, q)] if calc is H3SUP else [And(p, q)])
    for ax in calc.axioms:
        if not isinstance(ax, SchemaPattern):
            continue
        names = sorted(ax.metavariables)
        for combo in itertools.product(subs, repeat=len(names)):
            assert is_valid(instantiate(ax, dict(zip(names, combo)))), ax.id


class TestImplicationAudit:
    def setup_method(self):
        self.audit = check_derived_implication_formulas()
        self.rows = {(int(r.x), int(r.y)): r for r in self.audit.rows}

    def test_nine_rows(self):
        assert len(self.audit.rows) == 9

    def test_agreements(self):
        assert self.rows[2, 1].modal_form == HALF and self.rows[2, 1].lukasiewicz == HALF
        assert self.rows[0, 0].modal_form == ONE and self.rows[0, 0].lukasiewicz == ONE

    def test_disagreement_flagged(self):
        row = self.rows[1, 0]
        assert row.modal_form == ZERO and row.lukasiewicz == HALF
        assert [(int(r.x), int(r.y)) for r in self.audit.disagreements] == [(1, 0)]

    def test_form_reproduces_the_calculus_implication(self):
        assert self.audit.equals_goedel
