import json

import pytest

from iwalab import ParseError, ValidationError
from iwalab.cli import main
from iwalab.problems import parse_problem
from iwalab.workbench import run


MINIMAL_GAMMA = {"kind": "gamma", "p": 3, "d": 1, "F": [[["-3", "1"]]]}
MINIMAL_CROSSED = {
    "kind": "crossed",
    "p": 3,
    "d": 1,
    "kappa": "4",
    "A": [[["1"]]],
    "levels": [[1, 1]],
}


def parse(obj):
    return parse_problem(json.dumps(obj))


class TestParse:
    def test_minimal_gamma(self):
        pf = parse(MINIMAL_GAMMA)
        assert pf.kind == "gamma" and pf.module.d == 1
        assert pf.module.char_invariants() == (1, 0)

    def test_unicode_minus_accepted(self):
        pf = parse({"kind": "gamma", "p": 3, "d": 1, "F": [[["−3", "1"]]]})
        assert pf.module.exact_entries == (((-3, 1),),)

    def test_unknown_key_rejected(self):
        bad = dict(MINIMAL_GAMMA, foo=1)
        with pytest.raises(ParseError):
            parse(bad)

    def test_missing_key(self):
        with pytest.raises(ParseError):
            parse({"kind": "gamma", "p": 3, "d": 1})

    def test_not_json(self):
        with pytest.raises(ParseError):
            parse_problem("{ not json")

    def test_normality_violation(self):
        bad = dict(MINIMAL_CROSSED, levels=[[0, 2]])
        with pytest.raises(ValidationError) as exc:
            parse(bad)
        assert "normality" in str(exc.value)

    def test_character_invariant_checked(self):
        bad = dict(MINIMAL_GAMMA, characters=["2"])
        with pytest.raises(ValidationError):
            parse(bad)

    def test_non_torsion_rejected(self):
        bad = {"kind": "gamma", "p": 3, "d": 1, "F": [[["0"]]]}
        from iwalab import ZeroDeterminantError

        with pytest.raises(ZeroDeterminantError):
            parse(bad)

    def test_strings_and_ints_equivalent(self):
        a = parse(MINIMAL_GAMMA)
        b = parse({"kind": "gamma", "p": "3", "d": "1", "F": [[[-3, 1]]]})
        assert a.module.exact_entries == b.module.exact_entries

    def test_crossed_requires_kappa(self):
        bad = {k: v for k, v in MINIMAL_CROSSED.items() if k != "kappa"}
        with pytest.raises(ParseError):
            parse(bad)

    def test_wrong_shape_matrix(self):
        bad = dict(MINIMAL_GAMMA, F=[[["1"], ["2"]]])
        with pytest.raises(ParseError):
            parse(bad)


class TestRun:
    def test_euler_gamma(self):
        pf = parse(dict(MINIMAL_GAMMA, characters=["1", "4"], n_levels=[0, 1]))
        report, code = run(pf, "euler", input_digest="sha256:x")
        assert code == 0
        assert [t["chi_exponent"] for t in report["tasks"]] == ["1", "2", "1", "2"]
        assert all(t["routes_agree"] for t in report["tasks"])

    def test_euler_crossed(self):
        pf = parse(dict(MINIMAL_CROSSED, characters=["4"]))
        report, code = run(pf, "euler")
        assert code == 0
        (task,) = report["tasks"]
        assert task["chi_exponent"] == "6" and task["akashi_exponent"] == "6"

    def test_akashi(self):
        pf = parse(MINIMAL_CROSSED)
        report, code = run(pf, "akashi")
        assert code == 0
        assert report["tasks"][0]["coefficients"] == ["0", "0", "0", "1"]

    def test_char(self):
        pf = parse(MINIMAL_GAMMA)
        report, code = run(pf, "char")
        assert report["tasks"][0]["lambda"] == "1"

    def test_command_stanza_mismatch(self):
        pf = parse(MINIMAL_CROSSED)
        with pytest.raises(ValidationError):
            run(pf, "char")

    def test_find_twist_gamma(self):
        pf = parse({"kind": "gamma", "p": 3, "d": 1, "F": [[["0", "1"]]], "n_max": 1})
        report, code = run(pf, "find-twist")
        assert code == 0
        task = report["tasks"][0]
        assert task["accepted_u"] == "4"
        assert task["reverified_ok"] is True

    def test_escalation_from_low_precision(self):
        pf = parse(dict(MINIMAL_GAMMA, precision=1, n_levels=[0]))
        report, code = run(pf, "euler")
        assert code == 0
        assert report["escalations"]
        (task,) = report["tasks"]
        assert task["status"] == "exists" and task["precision"] == "2"

    def test_escalation_respects_cap(self):
        pf = parse(dict(MINIMAL_GAMMA, precision=1, n_levels=[0]))
        report, code = run(pf, "euler", max_precision=1)
        assert code == 2
        assert report["tasks"][0]["status"] == "indeterminate-at-precision"

    def test_determinism_modulo_timing(self):
        pf1 = parse(dict(MINIMAL_CROSSED, characters=["1", "4"]))
        pf2 = parse(dict(MINIMAL_CROSSED, characters=["1", "4"]))
        r1, _ = run(pf1, "euler", input_digest="sha256:y")
        r2, _ = run(pf2, "euler", input_digest="sha256:y")
        r1.pop("timing")
        r2.pop("timing")
        assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)

    def test_selftest_passes(self):
        report, code = run(None, "selftest")
        assert code == 0
        assert all(c["pass"] for c in report["tasks"])


class TestCli:
    def test_euler_roundtrip(self, tmp_path, capsys):
        inp = tmp_path / "prob.json"
        inp.write_text(json.dumps(dict(MINIMAL_GAMMA, characters=["4"], n_levels=[0])))
        out = tmp_path / "rep.json"
        code = main(["euler", "--input", str(inp), "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["tasks"][0]["chi_exponent"] == "1"
        assert report["input_digest"].startswith("sha256:")
        assert "exists" in capsys.readouterr().out

    def test_parse_error_exit_code(self, tmp_path, capsys):
        inp = tmp_path / "bad.json"
        inp.write_text('{"kind": "gamma", "foo": 1}')
        assert main(["euler", "--input", str(inp)]) == 1
        assert "error:" in capsys.readouterr().err

    def test_missing_input(self, capsys):
        assert main(["euler"]) == 1
        capsys.readouterr()

    def test_precision_override(self, tmp_path, capsys):
        inp = tmp_path / "prob.json"
        inp.write_text(json.dumps(dict(MINIMAL_GAMMA, n_levels=[0])))
        code = main(["euler", "--input", str(inp), "--precision", "8", "--out",
                     str(tmp_path / "r.json")])
        assert code == 0
        report = json.loads((tmp_path / "r.json").read_text())
        assert report["context"]["precision"] == "8"
        capsys.readouterr()

    def test_find_twist_cli(self, tmp_path, capsys):
        inp = tmp_path / "prob.json"
        inp.write_text(json.dumps(MINIMAL_CROSSED))
        code = main(["find-twist", "--input", str(inp), "--out", str(tmp_path / "r.json")])
        assert code == 0
        assert "ACCEPTED" in capsys.readouterr().out
