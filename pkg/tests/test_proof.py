import json
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trivalent.errors import ProofNotFound
from trivalent.fol import is_true, structure_corpus
from trivalent.formula import INF, QSUP, SUP, Imp, Nec, Var
from trivalent.matrix import consequence, is_valid
from trivalent.parser import dump_derivation, parse_derivation, parse_formula
from trivalent.proof import (CALCULI, H3SUP, IH3, QH3SUP, Derivation, Justification, Line, ProofBuilder,
                             check_derivation, discharge, get_calculus, lemma_corpus, prune, search_derivation)
from trivalent.proof.calculus import NINTH, NINTH_AS_PRINTED
from trivalent.proof.goals import INVALID, PROVABLE

from mutants import all_mutants

p, q = Var("p"), Var("q")


def _semantically_sound(d: Derivation) -> bool:
    if d.calculus == "QH3sup":
        return all(is_true(S, d.conclusion) for S in structure_corpus()
                   if all(is_true(S, g) for g in d.premises))
    return bool(consequence(d.premises, d.conclusion))


class TestCalculi:
    def test_axiom_counts(self):
        assert IH3.axiom_ids == ["A1", "A2", "A3"] + [f"Ai{i}" for i in range(4, 11)]
        assert H3SUP.axiom_ids == [f"Ax{i}" for i in range(1, 11)]
        assert QH3SUP.axiom_ids == [f"Ax{i}" for i in range(1, 15)]

    def test_rules(self):
        assert IH3.rules == {"mp", "nec", "rand"}
        assert H3SUP.rules == {"mp", "nec"}
        assert QH3SUP.rules == {"mp", "nec", "r3", "r4"}

    def test_unknown_calculus(self):
        with pytest.raises(ValueError):
            get_calculus("K")

    def test_ninth_schema_replacement(self):
        assert not is_valid(parse_formula(NINTH_AS_PRINTED.replace("α", "p").replace("β", "q"), SUP))
        assert is_valid(parse_formula(NINTH.replace("α", "p").replace("β", "q"), SUP))

    def test_biconditionals_contribute_two_schemas(self):
        assert len(QH3SUP.schemas("Ax13")) == 2 and len(QH3SUP.schemas("Ax14")) == 2

    def test_describe_is_json(self):
        for calc in CALCULI.values():
            json.dumps(calc.describe())


class TestChecker:
    def test_identity_in_five_lines(self):
        d = lemma_corpus()["Mi1"]
        assert len(d) == 5 and check_derivation(d).ok
        assert d.conclusion == Imp(p, p)

    def test_necessitation_of_a_premise(self):
        d = Derivation("H3sup", (p,), (Line(p, Justification("premise", (1,))),
                                        Line(Nec(p), Justification("nec", (1,)))))
        assert check_derivation(d).ok

    def test_r4_side_condition(self):
        d = Derivation("QH3sup", (), (
            Line(parse_formula("P(x) -> exists x. P(x)", QSUP), Justification("axiom", (), "Ax11")),
            Line(parse_formula("P(x) -> forall x. exists x. P(x)", QSUP), Justification("r4", (1,), var="x"))))
        report = check_derivation(d)
        assert not report.ok
        assert report.first_failure.line == 2 and "side condition" in report.first_failure.reason

    def test_ax13_halves_accepted(self):
        d = lemma_corpus()["Ax13"]
        report = check_derivation(d)
        assert report.ok and [v.axiom for v in report.verdicts] == ["Ax13", "Ax13"]

    def test_unlabelled_axiom_is_identified(self):
        d = Derivation("H3sup", (), (Line(Imp(Nec(p), p), Justification("axiom")),))
        assert check_derivation(d).verdicts[0].axiom == "Ax7"

    def test_rule_outside_calculus(self):
        d = Derivation("H3sup", (Imp(p, q),), (Line(Imp(p, q), Justification("premise", (1,))),
                                               Line(parse_formula("p -> p /\\ q", INF), Justification("rand", (1,)))))
        reasons = [v.reason for v in check_derivation(d).verdicts if not v.ok]
        assert reasons and reasons[0].startswith("signature")

    def test_rand_not_available_in_sup(self):
        d = Derivation("H3sup", (Imp(p, q),), (Line(Imp(p, q), Justification("premise", (1,))),
                                               Line(Imp(p, q), Justification("rand", (1,)))))
        assert "not available" in check_derivation(d).first_failure.reason

    def test_premise_out_of_range(self):
        d = Derivation("H3sup", (p,), (Line(p, Justification("premise", (2,))),))
        assert "no premise 2" in check_derivation(d).first_failure.reason

    def test_empty_derivation_is_not_accepted(self):
        assert not check_derivation(Derivation("H3sup", (), ())).ok

    def test_line_locality(self):
        """A verdict depends only on the lines up to it."""
        d = lemma_corpus()["Mi4"]
        full = check_derivation(d).verdicts
        for n in range(1, len(d) + 1):
            prefix = Derivation(d.calculus, d.premises, d.lines[:n])
            assert check_derivation(prefix).verdicts == full[:n]


class TestCorpus:
    NAMES = {"Mi1", "Ai7", "Ps1", "NEC", "R3", "R4"}

    def test_required_items_present(self):
        assert self.NAMES <= set(lemma_corpus())

    @pytest.mark.parametrize("name", sorted(lemma_corpus()))
    def test_accepted_and_sound(self, name):
        d = lemma_corpus()[name]
        report = check_derivation(d)
        assert report.ok, report.first_failure
        assert _semantically_sound(d)

    def test_ps1_shape(self):
        d = lemma_corpus()["Ps1"]
        assert {l.just.schema for l in d.lines if l.just.kind == "axiom"} == {"Ax4", "Ax5", "Ax6"}
        assert d.conclusion == parse_formula("p \\/ q -> q \\/ p")

    def test_uses_required_rules(self):
        kinds = {l.just.kind for d in lemma_corpus().values() for l in d.lines}
        assert {"nec", "r3", "r4", "mp", "rand"} <= kinds

    @pytest.mark.parametrize("name", sorted(lemma_corpus()))
    def test_bundled_file_matches(self, name):
        node = resources.files("trivalent") / "data" / "derivations" / f"{name.lower()}.json"
        assert parse_derivation(node.read_text()) == lemma_corpus()[name]


class TestMutants:
    @pytest.mark.parametrize("m", all_mutants(), ids=lambda m: m.name)
    def test_rejected_at_the_mutated_line(self, m):
        report = check_derivation(m.derivation)
        bad = [v for v in report.verdicts if not v.ok]
        assert [v.line for v in bad] == [m.line]
        assert m.reason in bad[0].reason

    def test_family_sizes(self):
        families = [m.family for m in all_mutants()]
        assert len(families) == 20
        assert set(families) == {"index shift", "schema swap", "side condition"}

    @given(st.sampled_from(sorted(lemma_corpus())), st.data())
    @settings(max_examples=60, deadline=None)
    def test_any_reference_shift_is_caught(self, name, data):
        d = lemma_corpus()[name]
        candidates = [i for i, l in enumerate(d.lines, 1) if l.just.kind in ("mp", "nec", "rand", "r3", "r4")]
        if not candidates:
            return
        n = data.draw(st.sampled_from(candidates))
        just = d.lines[n - 1].just
        k = data.draw(st.integers(0, len(just.refs) - 1))
        delta = data.draw(st.sampled_from([-2, -1, 1, 2]))
        refs = list(just.refs)
        refs[k] += delta
        if refs == list(just.refs):
            return
        mutated = d.replace_line(n, Line(d.lines[n - 1].formula, Justification(just.kind, tuple(refs),
                                                                                  just.schema, just.var)))
        report = check_derivation(mutated)
        if report.ok:
            # a shift can land on an identical formula; then the derivation is still a proof
            cited = [mutated.lines[r - 1].formula for r in refs]
            original = [d.lines[r - 1].formula for r in just.refs]
            assert cited == original
        else:
            assert report.first_failure.line == n


class TestBuilder:
    def test_identity(self):
        b = ProofBuilder("H3sup")
        b.identity(parse_formula("#p"))
        d = b.build()
        assert check_derivation(d).ok and d.conclusion == parse_formula("#p -> #p")

    def test_chain(self):
        b = ProofBuilder("H3sup", ["p -> q", "q -> r"])
        b.chain(b.premise(1), b.premise(2))
        d = b.build()
        assert check_derivation(d).ok and d.conclusion == parse_formula("p -> r")

    def test_bad_axiom_refused(self):
        b = ProofBuilder("H3sup")
        with pytest.raises(ValueError):
            b.axiom("p -> q", "Ax1")

    def test_discharge_gives_the_implication(self):
        b = ProofBuilder("H3sup", ["p", "p -> q"])
        b.mp(b.premise(1), b.premise(2))
        d = discharge(b.build(), 1)
        assert check_derivation(d).ok
        assert d.premises == (Imp(p, q),) and d.conclusion == Imp(p, q)

    def test_prune_keeps_only_support(self):
        b = ProofBuilder("H3sup", ["p"])
        b.identity(q)
        target = b.nec(b.premise(1))
        d = prune(b.build(), target)
        assert len(d) == 2 and check_derivation(d).ok


class TestSearch:
    def test_identity_needs_five_lines(self):
        d = search_derivation(Imp(p, p), depth=6)
        assert len(d) == 5 and check_derivation(d).ok

    def test_identity_not_within_four(self):
        with pytest.raises(ProofNotFound):
            search_derivation(Imp(p, p), depth=4)

    def test_axiom_in_one_line(self):
        d = search_derivation(Imp(Nec(p), p), depth=2)
        assert len(d) == 1 and d.lines[0].just.schema == "Ax7"

    def test_invalid_goal_not_found(self):
        with pytest.raises(ProofNotFound) as info:
            search_derivation(Imp(Nec(p), q), depth=8)
        assert info.value.explored > 0

    def test_first_order_refused(self):
        with pytest.raises(ValueError):
            search_derivation(parse_formula("P(c)", QSUP, constants=["c"]), calculus="QH3sup")

    def test_output_is_minimal_in_lines(self):
        # the five-line identity proof is the shortest; best-first search must find no longer one
        for depth in (5, 7, 9):
            assert len(search_derivation(Imp(p, p), depth=depth)) == 5

    @pytest.mark.parametrize("goal", PROVABLE, ids=lambda g: f"{g.calculus}:{g.text}")
    def test_bundled_goals(self, goal):
        phi, prem = goal.parsed()
        d = search_derivation(phi, prem, calculus=goal.calculus, depth=8)
        assert check_derivation(d).ok and d.conclusion == phi
        assert consequence(prem, phi)
        assert parse_derivation(dump_derivation(d)) == d

    @pytest.mark.parametrize("goal", INVALID, ids=lambda g: f"{g.calculus}:{g.text}")
    def test_bundled_invalid(self, goal):
        phi, prem = goal.parsed()
        assert not consequence(prem, phi)
        with pytest.raises(ProofNotFound):
            search_derivation(phi, prem, calculus=goal.calculus, depth=8)

    @given(st.sampled_from(["p", "q", "#p", "p -> q", "p \\/ q", "#(p -> q)"]))
    @settings(max_examples=12, deadline=None)
    def test_k_instances_found_and_sound(self, text):
        a = parse_formula(text)
        goal = Imp(a, Imp(q, a))
        d = search_derivation(goal, depth=3)
        assert check_derivation(d).ok and is_valid(d.conclusion)
