"""Tests for the command-line front end."""

import pytest

from multiteam.cli import main

FIG1_TEAM = "x,y,#count\n0,0,2\n0,1,1\n1,0,1\n1,1,1\n"
FIG2_TEAM = "x,y,z,#count\n0,0,1,2\n1,2,0,1\n2,1,0,1\n"
TWO_CLAUSES = "c demo\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n"


@pytest.fixture
def workspace(tmp_path):
    (tmp_path / "structure01.txt").write_text("domain: 0 1\nrel R/1: (0)\n")
    (tmp_path / "structure012.txt").write_text("domain: 0 1 2\n")
    (tmp_path / "fig1.csv").write_text(FIG1_TEAM)
    (tmp_path / "fig2.csv").write_text(FIG2_TEAM)
    (tmp_path / "fig2flat.csv").write_text(FIG2_TEAM.replace("1,2\n", "1,1\n"))
    (tmp_path / "empty.csv").write_text("x,y\n")
    (tmp_path / "two.cnf").write_text(TWO_CLAUSES)
    return tmp_path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_probabilistic_marginal_fails_on_the_skewed_team(workspace, capsys):
    code, out, _ = run([
        "check", workspace / "structure01.txt", "pind(;x;y)",
        "--team", workspace / "fig1.csv"], capsys)
    assert (code, out) == (1, "false\n")


def test_empty_teams_satisfy_everything(workspace, capsys):
    code, out, _ = run([
        "check", workspace / "structure01.txt", "pinc(x;y) & dep(x;y)",
        "--team", workspace / "empty.csv"], capsys)
    assert (code, out) == (0, "true\n")


def test_sentences_run_on_the_empty_assignment_team(workspace, capsys):
    code, out, _ = run([
        "check", workspace / "structure01.txt", "E x. R(x)"], capsys)
    assert (code, out) == (0, "true\n")
    code, out, _ = run([
        "check", workspace / "structure01.txt", "A x. R(x)"], capsys)
    assert (code, out) == (1, "false\n")


def test_strict_disjunction_splits_the_doubled_row(workspace, capsys):
    code, out, _ = run([
        "check", workspace / "structure012.txt", "inc(x;z) | inc(y;z)",
        "--team", workspace / "fig2.csv", "--strictness", "strict"], capsys)
    assert (code, out) == (0, "true\n")
    code, out, _ = run([
        "check", workspace / "structure012.txt", "inc(x;z) | inc(y;z)",
        "--team", workspace / "fig2flat.csv", "--strictness", "strict"],
        capsys)
    assert (code, out) == (1, "false\n")


def test_environment_supplies_mode_defaults(workspace, capsys, monkeypatch):
    argv = ["check", workspace / "structure012.txt", "inc(x;z) | inc(y;z)",
            "--team", workspace / "fig2flat.csv"]
    assert run(argv, capsys)[0] == 0
    monkeypatch.setenv("MULTITEAM_STRICTNESS", "strict")
    assert run(argv, capsys)[0] == 1
    assert run(argv + ["--strictness", "lax"], capsys)[0] == 0
    monkeypatch.setenv("MULTITEAM_STRICTNESS", "bogus")
    code, _, err = run(argv, capsys)
    assert code == 2 and "bogus" in err


def test_witness_output_reports_the_choices(workspace, capsys):
    code, out, _ = run([
        "check", workspace / "structure01.txt", "x = y | x != y",
        "--team", workspace / "fig1.csv", "--witness"], capsys)
    assert code == 0
    assert out.endswith("true\n")
    assert "[split]" in out
    assert "x=0 y=0 *2" in out


def test_formulas_can_come_from_files(workspace, capsys):
    path = workspace / "formula.txt"
    path.write_text("dep(x ; y)\n")
    code, out, _ = run([
        "check", workspace / "structure01.txt", path,
        "--team", workspace / "empty.csv"], capsys)
    assert (code, out) == (0, "true\n")


def test_missing_and_malformed_inputs_exit_two(workspace, capsys):
    code, _, err = run([
        "check", workspace / "nowhere.txt", "dep()"], capsys)
    assert code == 2 and "nowhere.txt" in err
    (workspace / "bad.csv").write_text("x,y\n0\n")
    code, _, err = run([
        "check", workspace / "structure01.txt", "dep()",
        "--team", workspace / "bad.csv"], capsys)
    assert code == 2 and "error" in err
    code, _, err = run([
        "check", workspace / "structure01.txt", "dep(x"], capsys)
    assert code == 2


def test_generated_instances_feed_back_into_check(workspace, capsys):
    out_dir = workspace / "enc"
    code, out, _ = run(["gen", "3sat", workspace / "two.cnf",
                        "--out", out_dir], capsys)
    assert code == 0 and out.count("wrote") == 3
    team_lines = (out_dir / "team.csv").read_text().splitlines()
    assert len(team_lines) == 7
    assert "<1/3>" in (out_dir / "formula.txt").read_text()
    code, out, _ = run([
        "check", out_dir / "structure.txt", out_dir / "formula.txt",
        "--team", out_dir / "team.csv"], capsys)
    assert (code, out) == (0, "true\n")


def test_threshold_generation_embeds_the_fraction(workspace, capsys):
    (workspace / "pair.cnf").write_text("p cnf 2 2\n1 -2 0\n-1 2 0\n")
    out_dir = workspace / "enc2"
    code, _, _ = run(["gen", "max2sat", workspace / "pair.cnf",
                      "--frac", "7/10", "--out", out_dir], capsys)
    assert code == 0
    assert "<7/10>" in (out_dir / "formula.txt").read_text()


def test_generation_rejects_bad_requests(workspace, capsys):
    code, _, err = run(["gen", "max2sat", workspace / "two.cnf",
                        "--out", workspace / "x1"], capsys)
    assert code == 2 and "--frac" in err
    code, _, err = run(["gen", "max2sat", workspace / "two.cnf",
                        "--frac", "7/0", "--out", workspace / "x2"], capsys)
    assert code == 2
    code, _, err = run(["gen", "3sat", workspace / "pair2.cnf"], capsys)
    assert code == 2


def test_law_suites_run_from_the_command_line(workspace, capsys):
    code, out, _ = run(["props", "pci-ci", "--seed", "7",
                        "--trials", "10", "--max-rows", "2"], capsys)
    assert code == 0 and "pci-ci: pass" in out
    code, out, _ = run(["props", "approx-laws", "--trials", "3"], capsys)
    assert code == 1 and "violation" in out
    code, out, _ = run(["props", "reductions", "--max-vars", "2",
                        "--max-clauses", "1", "--max-clauses2", "1",
                        "--jobs", "1"], capsys)
    assert code == 0 and "reductions: pass" in out
