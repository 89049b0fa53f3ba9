import io
import json
import subprocess
import sys
import warnings

import pytest

from choicekit import DegreeAssignment, builtin_registry, compile_formula, parse, render, size_of
from choicekit.cli import run
from choicekit.equivalence import ContextWitness
from choicekit.kernel import INF


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def cli_json(*argv):
    code, out, err = cli(*argv)
    return code, json.loads(out) if out else None


@pytest.fixture
def inst_file(tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps({"matrix": "x1 | x2", "order": ["x1", "x2"], "query": "x2"}))
    return str(path)


class TestExamples:
    def test_eval(self):
        code, out, _ = cli("eval", "--logic", "qcl", "-i", "b", "a |> b")
        assert code == 0
        assert out.strip() == '{"degree": 2, "optionality": 2}'

    def test_eval_inf_and_empty(self):
        assert cli_json("eval", "-i", "", "a |> b") == (0, {"degree": "inf", "optionality": 2})

    def test_preferred(self):
        code, data = cli_json("preferred", "--logic", "qcl", "a |> b")
        assert code == 0
        assert data == {"min_degree": 1, "models": [["a"], ["a", "b"]]}

    def test_equiv_strong(self):
        code, data = cli_json("equiv", "--logic", "sccl", "--kind", "strong", "a", "a *> a")
        assert code == 0
        assert data == {"status": "equivalent", "method": "degree-route"}

    def test_lexsolve_check(self, inst_file):
        code, data = cli_json("lexsolve", inst_file, "--target", "lcl", "--check")
        assert code == 0
        assert data == {"answer": True, "oracle_agrees": True}

    def test_models(self):
        code, data = cli_json("models", "--logic", "lcl", "a @> b")
        assert code == 0
        assert data["optionality"] == 3
        assert data["variables"] == ["a", "b"]
        assert [e["degree"] for e in data["profile"]] == ["inf", 2, 3, 1]

    def test_classify(self):
        code, data = cli_json("classify", "--logic", "sccl")
        assert code == 0
        (row,) = data["connectives"]
        assert row["opt_ignoring_check"] == "confirmed-up-to-bound"
        assert row["associativity_check"] == "refuted"
        assert data["opt_ignoring"] is True

    def test_classify_qccl(self):
        code, data = cli_json("classify", "--logic", "qccl", "--assoc-vars", "2")
        assert code == 0
        assert {r["name"] for r in data["connectives"]} == {"ordered_disjunction", "ordered_conjunction"}
        assert all(r["associativity_check"] == "confirmed-up-to-bound" for r in data["connectives"])
        assert all(r["opt_ignoring_check"] == "refuted" for r in data["connectives"])


class TestExitCodes:
    def test_strict_negative(self):
        code, data = cli_json("equiv", "--kind", "strong", "--strict", "a", "a |> a")
        assert code == 1 and data["status"] == "inequivalent"
        code, _ = cli_json("equiv", "--kind", "degree", "--strict", "a", "a |> a")
        assert code == 0

    def test_without_strict_is_zero(self):
        code, data = cli_json("equiv", "--kind", "full", "a", "a |> a")
        assert code == 0 and data["witness"] == {"kind": "optionality", "optionalities": [1, 2]}

    @pytest.mark.parametrize(
        "argv",
        [
            ["eval", "a |>"],
            ["eval", "--logic", "pl", "a |> b"],
            ["nonsense"],
            ["eval", "--logic", "xcl", "a"],
            ["models", "--var-cap", "0", "a"],
            [],
        ],
    )
    def test_usage_errors(self, argv):
        code, out, err = cli(*argv)
        assert code == 2
        assert out == ""

    def test_parse_error_message(self):
        code, _, err = cli("eval", "a & ")
        assert code == 2 and "position" in err

    def test_cap(self):
        formula = " | ".join(f"x{i}" for i in range(5))
        code, _, err = cli("models", "--var-cap", "4", formula)
        assert code == 3 and "cap" in err

    def test_env_cap(self, monkeypatch):
        monkeypatch.setenv("CHOICEKIT_VAR_CAP", "2")
        code, _, _ = cli("preferred", "a | b | c")
        assert code == 3
        code, _, _ = cli("preferred", "--var-cap", "3", "a | b | c")
        assert code == 0
        monkeypatch.setenv("CHOICEKIT_VAR_CAP", "lots")
        assert cli("preferred", "a")[0] == 2

    def test_log_bound_error(self, inst_file):
        code, _, err = cli("reduce", "--target", "qcl", inst_file)
        assert code == 2 and "log" in err
        assert cli("reduce", "--target", "qcl", "--no-log-bound", inst_file)[0] == 0

    def test_bad_json(self, tmp_path):
        path = tmp_path / "t.json"
        path.write_text("{not json")
        assert cli("synth", str(path))[0] == 2
        path.write_text(json.dumps({"variables": ["a"], "table": {"": 1}}))
        assert cli("synth", str(path))[0] == 2
        assert cli("synth", str(tmp_path / "missing.json"))[0] == 2

    def test_unobtainable(self, tmp_path):
        path = tmp_path / "t.json"
        path.write_text(json.dumps({"variables": ["a"], "table": {"": 2, "a": 1}}))
        code, _, err = cli("synth", "--logic", "pl", str(path))
        assert code == 2 and "bound" in err

    def test_lexsolve_check_beyond_log_bound(self, inst_file):
        code, data = cli_json("lexsolve", inst_file, "--target", "sccl", "--no-log-bound", "--check")
        assert code == 0 and data["oracle_agrees"] is True


class TestRoundTrips:
    def test_synth_output_parses_and_matches(self, tmp_path):
        table = {"variables": ["a", "b"], "table": {"": "inf", "a": 1, "b": 2, "a,b": 3}}
        path = tmp_path / "t.json"
        path.write_text(json.dumps(table))
        code, data = cli_json("synth", "--logic", "qcl", str(path))
        assert code == 0
        reg = builtin_registry("QCL")
        f = parse(reg, data["formula"], allow_reserved=True)
        assign = DegreeAssignment.from_json(table)
        cf = compile_formula(reg, f)
        for s in assign.table:
            assert cf(s) == assign(s)

    @pytest.mark.parametrize("target", ["lcl", "qcl", "ccl", "sccl"])
    def test_reduce_output_parses(self, tmp_path, target):
        path = tmp_path / "i.json"
        path.write_text(json.dumps({"matrix": "(x1 | x2) & (x1 | ~x2)", "order": ["x1", "x2"], "query": "x2"}))
        code, data = cli_json("reduce", "--target", target, str(path))
        assert code == 0
        reg = builtin_registry(target)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            f = parse(reg, data["formula"])
        assert size_of(f) == data["size"]
        assert render(f, reg) == data["formula"]

    def test_context_witness_round_trip(self):
        code, data = cli_json("equiv", "--kind", "strong", "a", "a |> a")
        w = data["witness"]
        reg = builtin_registry("QCL")
        ctx = parse(reg, w["context"], allow_reserved=True)
        cw = ContextWitness(ctx, tuple(w["path"]), frozenset(w["model"]))
        assert cw.recheck(reg, parse(reg, "a"), parse(reg, "a |> a"))

    def test_interpretation_witness_round_trip(self):
        code, data = cli_json("equiv", "--kind", "degree", "a", "a |> b")
        assert data["witness"] == {"kind": "interpretation", "interpretation": ["b"], "degrees": ["inf", 2]}

    def test_models_round_trip(self):
        _, data = cli_json("models", "--logic", "ccl", "a &> b")
        reg = builtin_registry("CCL")
        cf = compile_formula(reg, parse(reg, "a &> b"))
        for row in data["profile"]:
            d = cf(frozenset(row["interpretation"]))
            assert row["degree"] == ("inf" if d is INF else d)


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["models", "--logic", "lcl", "(a @> b) | c"],
            ["preferred", "(a |> b) & (c |> d)"],
            ["equiv", "--kind", "strong", "a |> b", "b |> a"],
            ["classify", "--logic", "lcl"],
            ["generate", "--logic", "qccl", "--seed", "42", "--count", "10"],
        ],
    )
    def test_byte_identical(self, argv):
        assert cli(*argv) == cli(*argv)

    def test_seed_changes_generate(self):
        a = cli("generate", "--seed", "1", "--count", "10")[1]
        b = cli("generate", "--seed", "2", "--count", "10")[1]
        assert a != b

    def test_text_format(self):
        code, out, _ = cli("eval", "--format", "text", "-i", "a", "a |> b")
        assert code == 0 and out == "degree: 1\noptionality: 2\n"


def test_module_entry_point(inst_file):
    proc = subprocess.run(
        [sys.executable, "-m", "choicekit", "lexsolve", inst_file, "--target", "qcl", "--no-log-bound", "--check"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"answer": True, "oracle_agrees": True}


def test_warning_goes_to_stderr():
    code, out, err = cli("eval", "--logic", "sccl", "-i", "a,b", "a *> b *> c")
    assert code == 0 and json.loads(out)["degree"] == 1
    assert "warning" in err
