import json
from importlib import resources

import pytest

from trivalent.cli import main
from trivalent.parser import parse_derivation
from trivalent.proof import check_derivation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCheck:
    def test_valid(self, capsys):
        code, out, _ = run(capsys, "check", "valid", "p -> p")
        assert code == 0 and "holds (3 valuations)" in out

    def test_refuted_with_countermodel(self, capsys):
        code, out, _ = run(capsys, "check", "valid", "#p -> q")
        assert code == 1 and "countermodel: p=1, q=0" in out

    def test_consequence(self, capsys):
        assert run(capsys, "check", "consequence", "q", "-p", "p", "-p", "p -> q")[0] == 0
        assert run(capsys, "check", "consequence", "#q", "-p", "p -> q")[0] == 1

    def test_inf_signature(self, capsys):
        assert run(capsys, "check", "valid", "--calculus", "iH3", "p /\\ q -> p")[0] == 0
        # join is a defined macro under the meet signature
        code, out, _ = run(capsys, "check", "valid", "--calculus", "iH3", "p \\/ q -> p")
        assert code == 1 and "p=0, q=1/2" in out
        code, _, err = run(capsys, "check", "valid", "p /\\ q -> p")
        assert code == 2 and "not in the SUP signature" in err

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "check", "valid", "p ->")
        assert code == 2 and "parse error" in err

    def test_variable_cap(self, capsys):
        code, _, err = run(capsys, "check", "valid", "p -> q -> r", "--max-vars", "2")
        assert code == 2 and err

    def test_json_is_stable(self, capsys):
        _, first, _ = run(capsys, "check", "valid", "#p -> q", "--json")
        _, second, _ = run(capsys, "check", "valid", "#p -> q", "--json")
        assert first == second
        payload = json.loads(first)
        assert payload["valid"] is False


class TestUsage:
    def test_no_arguments(self, capsys):
        assert run(capsys)[0] == 2

    def test_unknown_command(self, capsys):
        assert run(capsys, "prove", "p")[0] == 2

    def test_unknown_calculus(self, capsys):
        assert run(capsys, "check", "valid", "p", "--calculus", "S5")[0] == 2

    def test_help_exits_zero(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--help"])
        assert info.value.code == 0


class TestProof:
    def test_check_bundled(self, capsys):
        code, out, _ = run(capsys, "proof", "check", "mi1.json")
        assert code == 0 and out.strip().endswith("accepted")
        assert out.count("OK") == 5

    def test_check_rejects(self, capsys, tmp_path):
        d = json.loads(run(capsys, "proof", "search", "p -> p", "--json")[1])["derivation"]
        d["lines"][-1]["just"]["from"] = [2, 4]
        f = tmp_path / "bad.json"
        f.write_text(json.dumps(d))
        code, out, _ = run(capsys, "proof", "check", str(f))
        assert code == 1 and "rejected at line 5" in out

    def test_missing_file(self, capsys):
        assert run(capsys, "proof", "check", "/nonexistent/x.json")[0] == 2

    def test_malformed_json(self, capsys, tmp_path):
        f = tmp_path / "broken.json"
        f.write_text('{"calculus": ')
        assert run(capsys, "proof", "check", str(f))[0] == 2

    def test_search_writes_a_checkable_file(self, capsys, tmp_path):
        out_file = tmp_path / "id.json"
        code, out, _ = run(capsys, "proof", "search", "p -> p", "--depth", "6", "--out", str(out_file))
        assert code == 0
        d = parse_derivation(out_file.read_text())
        assert len(d) == 5 and check_derivation(d).ok

    def test_search_not_found(self, capsys):
        code, out, _ = run(capsys, "proof", "search", "#p -> q", "--depth", "4")
        assert code == 1 and "no derivation within 4 lines" in out


class TestAlgebra:
    def test_analyze_c3(self, capsys):
        code, out, _ = run(capsys, "algebra", "analyze", "--algebra", "c3")
        assert code == 0 and "simple: True" in out

    def test_analyze_square(self, capsys):
        code, out, _ = run(capsys, "algebra", "analyze", "--algebra", "c3^2")
        assert code == 0 and "embeds into C3 x C3" in out

    def test_analyze_bad_table(self, capsys, tmp_path):
        spec = json.loads(run(capsys, "algebra", "analyze", "--algebra", "c3", "--json")[1])
        assert spec["verified"]
        alg = json.loads((resources.files("trivalent") / "data" / "algebras" / "c3-SUP.json").read_text())
        alg["imp"][2][1] = 2  # 1 -> 1/2 = 1 breaks the order
        f = tmp_path / "bad.json"
        f.write_text(json.dumps(alg))
        code, out, _ = run(capsys, "algebra", "analyze", "--algebra", str(f))
        assert code == 1 and "fails at" in out

    def test_free(self, capsys):
        code, out, _ = run(capsys, "algebra", "free", "1")
        assert code == 0 and "universal property holds" in out


class TestFol:
    def test_eval_bundled(self, capsys):
        code, out, _ = run(capsys, "fol", "eval", "exists x. P(x)", "--structure", "example.json")
        assert code == 0
        code, out, _ = run(capsys, "fol", "eval", "forall x. P(x)", "--structure", "example.json")
        assert code == 1 and "value 1/2" in out

    def test_eval_needs_a_structure(self, capsys):
        assert run(capsys, "fol", "eval", "P(c)")[0] == 2

    def test_audit(self, capsys):
        code, out, _ = run(capsys, "fol", "audit")
        assert code == 0 and "quantifier axioms and rules: ok" in out
