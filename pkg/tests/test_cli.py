import json

import pytest

from lie_sw.agents.analyzer import MetricLieAnalyzer
from lie_sw.cli.main import (
    EXIT_DEGENERATE_METRIC,
    EXIT_FAMILY_PARAMETER,
    EXIT_IDENTITY_FAILED,
    EXIT_INTERNAL_ERROR,
    EXIT_JACOBI_VIOLATION,
    EXIT_PARSE_ERROR,
    EXIT_UNSUPPORTED_SEGRE,
    build_parser,
    classify_error,
    main,
    settings_from_args,
)
from lie_sw.config import Settings
from lie_sw.models.schemas import CheckReport, IdentityReport
from lie_sw.utils.input_parser import load_document

QUIET = ["--log-level", "CRITICAL"]


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_analyze_text(sample_path, capsys):
    assert main([*QUIET, "analyze", sample_path("heisenberg.txt")]) == 0
    out = capsys.readouterr().out
    assert "segre = {11(11)}" in out
    assert "jacobi = ok" in out
    assert "  sw_zero = false" in out
    assert "  passed = true" in out
    assert "[Gamma] " in out


def test_analyze_json_is_deterministic(sample_path, capsys):
    args = [*QUIET, "--format", "json", "analyze", sample_path("heisenberg.txt")]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second

    report = json.loads(first)
    assert report["segre"] == "{11(11)}"
    assert report["signature"] == [4, 0]
    assert report["scalar"]["exact"] == "-1/2"
    assert "elapsed" not in report
    assert {"index": [1, 2, 3], "value": {"exact": "1/2", "decimal": "0.5"}} in report["christoffel"]


def test_analyze_family_sample(sample_path, capsys):
    assert main([*QUIET, "--format", "json", "analyze", sample_path("family.txt")]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["segre"] == "{1111~}"
    assert report["predicates"]["sw_zero"] is True
    assert report["predicates"]["ricci_parallel"] is False
    assert report["segre_consistent"] is True
    pair = report["eigen"]["complex_pairs"][0]
    assert pair["alpha"]["exact"] == "4"
    assert pair["beta"]["exact"] == "4*sqrt(3)"


def test_check_identities(sample_path, capsys):
    assert main([*QUIET, "check-identities", sample_path("abelian.txt")]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("result = PASS")


def test_missing_file_is_parse_error(capsys):
    assert main([*QUIET, "analyze", "/nonexistent/input.txt"]) == EXIT_PARSE_ERROR
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "parse_error" in captured.err


def test_jacobi_violation(tmp_path, capsys):
    path = write(tmp_path, "bad.txt", "metric = diag(1, 1, 1, 1)\nC 1 2 3 = 1\nC 1 3 1 = 1\n")
    assert main([*QUIET, "--format", "json", "analyze", path]) == EXIT_JACOBI_VIOLATION
    error = json.loads(capsys.readouterr().err)
    assert error["success"] is False
    assert error["error_code"] == "jacobi_violation"
    assert error["exit_code"] == EXIT_JACOBI_VIOLATION
    assert error["details"][0] == "(1,2,3) → -1·e3"


def test_degenerate_metric(tmp_path, capsys):
    path = write(tmp_path, "flat.txt", "metric = diag(1, 1, 0, 1)\n")
    assert main([*QUIET, "analyze", path]) == EXIT_DEGENERATE_METRIC
    assert "degenerate_metric" in capsys.readouterr().err


def test_three_dimensional_input_is_rejected(tmp_path, capsys):
    path = write(tmp_path, "dim3.txt", "dim = 3\nmetric = diag(1, 1, 1)\nC 1 2 3 = 1\n")
    assert main([*QUIET, "check-identities", path]) == EXIT_PARSE_ERROR
    assert "invalid_argument" in capsys.readouterr().err


def test_family_text(capsys):
    assert main([*QUIET, "family", "--a", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# family a=1, delta=+1, eps1=+1, eps2=+1, eps3=+1, metric=sign-flipped")
    assert "reproduces_family = true" in out
    assert "segre = {1111~}" in out


def test_family_literal_variant(capsys):
    assert main([*QUIET, "--format", "json", "family", "--a", "1", "--metric-variant", "literal"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["complex_pair_present"] is False
    assert report["reproduces_family"] is False


def test_family_zero_parameter(capsys):
    assert main([*QUIET, "family", "--a", "0"]) == EXIT_FAMILY_PARAMETER
    assert "invalid_family_parameter" in capsys.readouterr().err


def test_family_bad_parameter_text(capsys):
    assert main([*QUIET, "family", "--a", "one"]) == EXIT_PARSE_ERROR


def test_family_write_input(tmp_path, capsys):
    target = tmp_path / "family_input.txt"
    assert main([*QUIET, "family", "--a", "1/2", "--eps3", "-1", "--write-input", str(target)]) == 0
    capsys.readouterr()
    document = load_document(str(target))
    assert document.params["a"] == "1/2"
    assert document.params["eps3"] == "-1"
    assert main([*QUIET, "check-identities", str(target)]) == 0
    assert capsys.readouterr().out.rstrip().endswith("result = PASS")


def test_gen_system_reduce(capsys):
    assert main([*QUIET, "gen-system", "--segre", "{(11)(11)}", "--reduce"]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "# segre: {(11)(11)}"
    assert "[sw] 20" in lines
    assert "[reduction] rank=16" in lines
    assert "# ricci_parallel_on_solution: true" in lines
    assert sum(1 for line in lines if line.startswith("relation ")) == 4


def test_gen_system_all_signs_json(capsys):
    args = [*QUIET, "--serial", "--format", "json", "gen-system", "--segre", "{(22)}", "--all-signs"]
    assert main(args) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [entry["signs"] for entry in payload] == [[1, 1], [1, -1], [-1, 1], [-1, -1]]
    assert all(entry["segre"] == "{(22)}" for entry in payload)
    assert all(set(entry["sections"]) == {"sw", "jacobi", "ricci"} for entry in payload)


def test_gen_system_output_file(tmp_path, capsys):
    target = tmp_path / "system.txt"
    args = [*QUIET, "gen-system", "--segre", "{1111~}", "--signs", "1,1,-1", "--output", str(target)]
    assert main(args) == 0
    assert capsys.readouterr().out == ""
    text = target.read_text(encoding="utf-8")
    assert text.startswith("# segre: {1111~}\n# signs: eps1=+1, eps2=+1, eps3=-1\n")
    assert "# metric_variant: sign-flipped" in text


def test_gen_system_errors(capsys):
    assert main([*QUIET, "gen-system", "--segre", "{13}"]) == EXIT_UNSUPPORTED_SEGRE
    assert "supported: {(11)(11)}" in capsys.readouterr().err
    assert main([*QUIET, "gen-system", "--segre", "{1111~}", "--signs", "1,2,1"]) == EXIT_PARSE_ERROR
    assert main([*QUIET, "gen-system", "--segre", "{(22)}", "--signs", "1,1,1"]) == EXIT_PARSE_ERROR
    assert main([*QUIET, "gen-system", "--segre", "(22)"]) == EXIT_PARSE_ERROR
    assert main([*QUIET, "gen-system", "--segre", "{(22)}", "--sections", "sw,extra"]) == EXIT_PARSE_ERROR


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["analyze"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["family", "--delta", "3"])


def test_settings_from_args_overrides():
    base = Settings(log_to_file=False)
    args = build_parser().parse_args(["--format", "json", "--tolerance", "1e-6", "--gb-budget", "5000000", "--serial", "analyze", "x"])
    settings = settings_from_args(args, base)
    assert settings.report_format == "json"
    assert settings.segre_tolerance == 1e-6
    assert settings.gb_budget == 5000000
    assert settings.gb_max_budget == 5000000
    assert settings.parallel_cases is False
    assert base.report_format == "text"

    bad = build_parser().parse_args(["--tolerance", "-1", "analyze", "x"])
    with pytest.raises(ValueError):
        settings_from_args(bad, base)


def test_classify_error_falls_back_to_internal():
    assert classify_error(RuntimeError("boom")) == (EXIT_INTERNAL_ERROR, "internal_error")
    assert EXIT_INTERNAL_ERROR != EXIT_IDENTITY_FAILED


def test_identity_failure_and_crash_exit_differently(sample_path, monkeypatch, capsys):
    failing = IdentityReport(
        divergence_identity=False, codazzi_symmetry=True, sw_zero=True, equivalence=True, passed=False,
    )
    monkeypatch.setattr(
        MetricLieAnalyzer, "check_identities",
        lambda self, document: CheckReport(identities=failing, jacobi_ok=True, passed=False),
    )
    assert main([*QUIET, "check-identities", sample_path("abelian.txt")]) == EXIT_IDENTITY_FAILED
    assert capsys.readouterr().out.rstrip().endswith("result = FAIL")

    def crash(self, document):
        raise RuntimeError("boom")

    monkeypatch.setattr(MetricLieAnalyzer, "check_identities", crash)
    assert main([*QUIET, "check-identities", sample_path("abelian.txt")]) == EXIT_INTERNAL_ERROR
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "internal_error" in captured.err
