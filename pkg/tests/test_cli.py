import json

import pytest

from tracelift.cli import main


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr().out
    return code, out


def test_sequences_listing(capsys):
    code, out = run_cli(capsys, "sequences", "--n", "2", "--l", "1")
    assert code == 0
    rows = json.loads(out)
    assert [r["bits"] for r in rows] == ["1001", "1100"]
    assert [r["s1"] for r in rows] == [2, 3]
    assert [r["reduced"] for r in rows] == ["101", "110"]


def test_sequences_pretty(capsys):
    code, out = run_cli(capsys, "sequences", "--n", "1", "--l", "1",
                        "--format", "pretty")
    assert code == 0
    assert out.splitlines() == ["100  s1=2  reduced=10"]


def test_sequences_rejects_bad_n(capsys):
    code, _ = run_cli(capsys, "sequences", "--n", "0", "--l", "1")
    assert code == 2


def test_build_psi_n1(capsys):
    code, out = run_cli(capsys, "build", "psi-n1", "--n", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["arity"] == 3
    assert len(obj["words"]) == 2


def test_build_psi0_2_2(capsys):
    code, out = run_cli(capsys, "build", "psi0", "--n", "2", "--l", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["arity"] == 5
    assert len(obj["words"]) == 3


def test_build_rejects_n1_for_interval_form(capsys):
    code, _ = run_cli(capsys, "build", "psi-n1", "--n", "1")
    assert code == 2


def test_build_bytes_deterministic(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(capsys, "build", "psi-nl", "--n", "2", "--l", "2",
                   "--out", str(p1))[0] == 0
    assert run_cli(capsys, "build", "psi-nl", "--n", "2", "--l", "2",
                   "--out", str(p2))[0] == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_build_unwritable_output(capsys):
    code, _ = run_cli(capsys, "build", "psi0", "--n", "1", "--l", "1",
                      "--out", "/nonexistent-dir/out.json")
    assert code == 3


def test_verify_thm11_passes(capsys):
    code, out = run_cli(capsys, "verify", "thm11", "--n", "2", "--l", "1",
                        "--commuting", "--trials", "3", "--seed", "7")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_thm11_fails_without_commuting(capsys):
    code, out = run_cli(capsys, "verify", "thm11", "--n", "2", "--l", "1",
                        "--trials", "3", "--seed", "7")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_verify_thm21_matrix(capsys):
    code, out = run_cli(capsys, "verify", "thm21", "--n", "2",
                        "--trials", "2", "--seed", "7")
    assert code == 0


def test_verify_reports_deterministic(capsys):
    _, out1 = run_cli(capsys, "verify", "lemma12", "--n", "2", "--l", "1",
                      "--trials", "2", "--seed", "5")
    _, out2 = run_cli(capsys, "verify", "lemma12", "--n", "2", "--l", "1",
                      "--trials", "2", "--seed", "5")
    assert out1 == out2


def test_verify_lemma111_reports_observed_factor(capsys):
    code, out = run_cli(capsys, "verify", "lemma111", "--n", "1", "--l", "1")
    obj = json.loads(out)
    assert obj["params"]["observed_factor"] == [3, 1]
    assert obj["params"]["second_order_cancelled"] is True
    # the contracted factor n + l does not match the expansion
    assert code == 1


def test_verify_bracket_series(capsys):
    code, out = run_cli(capsys, "verify", "bracket-series", "--cutoff", "3",
                        "--trials", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["params"]["coefficients"] == [[1, 1], [1, 2], [2, 3]]


def test_verify_psido_backend_requires_even_n(capsys):
    code, _ = run_cli(capsys, "verify", "axioms", "--backend", "psido",
                      "--n", "3", "--trials", "1")
    assert code == 2


def test_oracle_agreement(capsys):
    code, out = run_cli(capsys, "oracle", "--n", "2", "--l", "1",
                        "--trials", "2", "--seed", "3")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_oracle_size_bound(capsys):
    code, _ = run_cli(capsys, "oracle", "--n", "4", "--l", "3")
    assert code == 2


def test_unknown_check_rejected(capsys):
    code, _ = run_cli(capsys, "verify", "nonsense")
    assert code == 2
