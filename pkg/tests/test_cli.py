import csv
import io
import json
import shutil

import pytest
from click.testing import CliRunner

from k3chow import fixtures
from k3chow.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_hilbert_csv(runner):
    res = runner.invoke(main, ["hilbert", "--format", "csv"])
    assert res.exit_code == 0
    rows = list(csv.reader(io.StringIO(res.output)))
    assert rows[0] == ["k", "dim", "expected"]
    assert len(rows[1:]) == 20
    assert [int(r[1]) for r in rows[1:]] == [1, 2, 3, 5, 6, 8, 10, 12, 13, 14, 12, 10, 8, 6, 5, 3, 2, 1, 0, 0]


def test_hilbert_truncation(runner):
    res = runner.invoke(main, ["hilbert", "--format", "json", "--truncation", "5"])
    assert json.loads(res.output)["betti"] == [1, 2, 3, 5, 6, 8]


def test_pairing_json(runner):
    res = runner.invoke(main, ["pairing", "--format", "json"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["schema"] == 1
    assert doc["kernel_class"]["coefficients"]["H^9"] == "-646575"
    assert doc["imperfect_degrees"] == [8, 9]


def test_relations(runner):
    res = runner.invoke(main, ["relations", "--format", "json"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["relation_count"] == 14 and doc["inert"] == ["Q(-E)", "p"]
    known = [c for c in doc["comparisons"] if c["status"] == "known"]
    assert [c["name"] for c in known] == ["relation multiple_lines[2]"]
    assert known[0]["diff"]["monomial"] == "H^2*c2*c3^3"


def test_relations_strict_reports_mismatch(runner):
    res = runner.invoke(main, ["relations", "--strict"])
    assert res.exit_code == 1
    assert "FAIL  relation multiple_lines[2]" in res.output


def test_grr_and_appendix(runner):
    assert runner.invoke(main, ["grr"]).exit_code == 0
    res = runner.invoke(main, ["appendix", "--format", "json"])
    assert res.exit_code == 0
    assert all(json.loads(res.output)["comparisons"].values())


def test_verify_is_deterministic(runner):
    a = json.loads(runner.invoke(main, ["verify", "--format", "json"]).output)
    b = runner.invoke(main, ["verify", "--format", "json", "--jobs", "2"])
    assert b.exit_code == 0
    b = json.loads(b.output)
    a.pop("generated_at"), b.pop("generated_at")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["summary"]["counts"] == {"pass": 72, "known": 2, "fail": 0}
    assert {c["criterion"] for c in a["checks"]} == set(range(1, 11))


def test_verify_strict_fails(runner):
    res = runner.invoke(main, ["verify", "--strict"])
    assert res.exit_code == 1
    assert "72 passed, 0 known discrepancies, 2 failed" in res.output


def test_eval(runner, tmp_path):
    script = tmp_path / "p.k3"
    script.write_text("let N = wsum((2, sym(8, dual(W))), (3, sym(12, dual(W))));\nprint wtop(N);\n")
    res = runner.invoke(main, ["eval", str(script), "--format", "json"])
    assert res.exit_code == 0
    assert json.loads(res.output)["output"][0].endswith("816293376*t^22")


def test_eval_syntax_error_is_usage_error(runner, tmp_path):
    script = tmp_path / "bad.k3"
    script.write_text("print sym(,V);\n")
    res = runner.invoke(main, ["eval", str(script)])
    assert res.exit_code == 2
    assert "1:11" in res.output


def test_usage_errors(runner):
    assert runner.invoke(main, ["hilbert", "--format", "xml"]).exit_code == 2
    assert runner.invoke(main, ["nonsense"]).exit_code == 2


def test_out_dir(runner, tmp_path):
    res = runner.invoke(main, ["hilbert", "--format", "csv", "--out", str(tmp_path)])
    assert res.exit_code == 0
    assert (tmp_path / "hilbert.csv").read_text().startswith("k,dim,expected")


def test_fixture_override_detects_mismatch(runner, tmp_path):
    d = tmp_path / "fx"
    shutil.copytree(fixtures.DEFAULT_DIR, d)
    doc = json.loads((d / "moduli.json").read_text())
    doc["betti"][4] = 7
    (d / "moduli.json").write_text(json.dumps(doc))
    res = runner.invoke(main, ["hilbert", "--fixtures", str(d)])
    assert res.exit_code == 1
    assert "expected 7" in res.output
    res = runner.invoke(main, ["hilbert"], env={fixtures.ENV_VAR: str(d)})
    assert res.exit_code == 1


def test_missing_fixture_directory_is_usage_error(runner, tmp_path):
    res = runner.invoke(main, ["hilbert", "--fixtures", str(tmp_path)])
    assert res.exit_code == 2


def test_internal_error_exit_code(runner, tmp_path, monkeypatch):
    from k3chow import f2_pipeline

    def broken():
        raise ArithmeticError("invariant violated")
    monkeypatch.setattr(f2_pipeline, "pairing_report", lambda directory=None: broken())
    res = runner.invoke(main, ["pairing"])
    assert res.exit_code == 3
