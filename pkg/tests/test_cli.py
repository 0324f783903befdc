"""Command-line behavior: exit codes, report determinism, parsing."""

import json

import pytest

from e1forge.cli import UsageError, main, parse_xi
from e1forge.gf2k import make_field


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_spec_example(capsys):
    code, out, _ = run(
        capsys,
        "classify", "--epsilon", "-1", "--d", "6", "--q", "2",
        "--xi", "(x+1)^2(x+w)^2(x+w2)^2",
    )
    assert code == 0
    report = json.loads(out)["report"]
    assert "a" in report["cases"] and "h" in report["cases"]
    assert report["order"] == "5832"


def test_classify_bad_degree_is_usage_error(capsys):
    code, _, err = run(
        capsys,
        "classify", "--epsilon", "1", "--d", "4", "--q", "4", "--xi", "(x+1)^3",
    )
    assert code == 2
    assert "degree" in err


def test_classify_non_power_of_two_q(capsys):
    code, _, err = run(
        capsys,
        "classify", "--epsilon", "1", "--d", "3", "--q", "6", "--xi", "(x+1)^3",
    )
    assert code == 2


def test_certify_all_exits_zero(capsys):
    code, out, _ = run(capsys, "certify", "--all")
    assert code == 0
    assert json.loads(out)["report"]["ok"] is True


def test_certify_failing_expression_exits_one(capsys):
    code, out, _ = run(capsys, "certify", "--expr", "q < q", "--range", "1..4")
    assert code == 1


def test_certify_single_id(capsys):
    code, out, _ = run(capsys, "certify", "--id", "psu3-deg-gap")
    assert code == 0
    entries = json.loads(out)["report"]["entries"]
    assert len(entries) == 1 and entries[0]["status"] == "verified"


def test_certify_unknown_id(capsys):
    code, _, err = run(capsys, "certify", "--id", "no-such-entry")
    assert code == 2


def test_oracle_verify_deterministic_output(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code, _, _ = run(
            capsys,
            "oracle", "verify", "--group", "GL", "--d", "2", "--q", "2",
            "--output", str(p),
        )
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_oracle_verify_reports_checks(tmp_path, capsys):
    out_path = tmp_path / "r.json"
    code, _, _ = run(
        capsys,
        "oracle", "verify", "--group", "GU", "--d", "2", "--q", "2",
        "--output", str(out_path),
    )
    assert code == 0
    report = json.loads(out_path.read_text())["report"]
    assert report["ok"] is True
    assert report["order"] == "18"
    assert {c["name"] for c in report["checks"]} >= {
        "order_formula",
        "centralizer_formula",
        "realness_formula",
    }


def test_sweep_acceptance_cases(capsys):
    for d, q in [(5, 4), (6, 2)]:
        code, out, _ = run(
            capsys, "sweep", "--epsilon", "-1", "--d", str(d), "--q", str(q)
        )
        assert code == 0
        report = json.loads(out)["report"]
        assert report["classes"] == report["nonempty_case_sets"]
        assert report["classes"] == report["dimension_bound_holds"]


def test_auto_order(capsys):
    code, out, _ = run(
        capsys,
        "auto-order", "--d", "3", "--q", "4", "--epsilon", "1",
        "--t", "1,1,1", "--field-exp", "1",
    )
    assert code == 0
    report = json.loads(out)["report"]
    assert report["order"] == "2"
    assert report["divides"]["delta_f"] is True


def test_budget_env_guard(capsys, monkeypatch):
    monkeypatch.setenv("E1FORGE_BUDGET", "10")
    code, _, err = run(capsys, "sweep", "--epsilon", "-1", "--d", "6", "--q", "2")
    assert code == 2
    monkeypatch.setenv("E1FORGE_BUDGET", "junk")
    code, _, err = run(capsys, "sweep", "--epsilon", "-1", "--d", "6", "--q", "2")
    assert code == 2


def test_tsv_format(capsys):
    code, out, _ = run(
        capsys,
        "certify", "--id", "trivial-positive", "--format", "tsv",
    )
    assert code == 0
    assert out.startswith("key\tvalue")


def test_parse_xi_forms():
    field = make_field(1, 2)
    p = parse_xi("(x+1)^2(x+w)^2(x+w2)^2", field)
    assert p.degree == 6
    q = parse_xi("[1,0,0,0,0,0,1]", field)
    assert p == q
    with pytest.raises(UsageError):
        parse_xi("(x+9)", field)
    with pytest.raises(UsageError):
        parse_xi("x^2+1", field)


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2
