"""Command-line surface: exit codes, report schemas, determinism."""

import json

import pytest

from contactsym.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_casimir_pass(capsys):
    code, out, _ = run(
        capsys, "verify-casimir", "--n", "1", "--k", "2", "--delta", "1/3",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["results"]["c"] == "13/9"
    assert doc["results"]["spectrum_certified"] is True


def test_verify_casimir_trivial_weight(capsys):
    code, out, _ = run(
        capsys, "verify-casimir", "--n", "1", "--k", "0", "--delta", "0",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["c"] == "0"
    assert doc["results"]["eigenvalues"] == ["0"]
    assert doc["warnings"] == []  # C_0 is empty, so delta = 0 is regular here


def test_verify_casimir_critical_warns_but_runs(capsys):
    code, out, _ = run(
        capsys, "verify-casimir", "--n", "1", "--k", "1", "--delta", "0",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["warnings"]
    assert "spectrum_certified" not in doc["results"]


def test_rational_parse_error_exit_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["verify-casimir", "--n", "1", "--k", "1", "--delta", "1/0"])
    assert err.value.code == 2


def test_decimal_rejected(capsys):
    with pytest.raises(SystemExit) as err:
        main(["verify-casimir", "--n", "1", "--k", "1", "--delta", "0.5"])
    assert err.value.code == 2


def test_invariants_examples(capsys):
    code, out, _ = run(
        capsys, "invariants", "--n", "1", "--k", "1", "--m", "0", "--l", "1",
        "--nu", "0", "--algebra", "affine", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["solver_dim"] == 2 and doc["results"]["match"] is True

    code, out, _ = run(
        capsys, "invariants", "--n", "1", "--k", "1", "--m", "0", "--l", "1",
        "--nu", "1/3", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["results"]["solver_dim"] == 0

    code, out, _ = run(
        capsys, "invariants", "--n", "1", "--k", "1", "--m", "0", "--l", "1",
        "--nu", "0", "--algebra", "contact", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["results"]["solver_dim"] == 1


def test_decompose_roundtrip(tmp_path, capsys):
    poly = {"n": 1, "blocks": ["xi"], "terms": [{"coeff": "1", "exp": {"xi_t": 1}}]}
    path = tmp_path / "input.json"
    path.write_text(json.dumps(poly))
    code, out, _ = run(
        capsys, "decompose", "--n", "1", "--k", "1", "--delta", "1",
        "--input", str(path), "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    comps = doc["results"]["components"]
    assert doc["results"]["reconstructed_ok"] is True
    assert comps[0]["T"]["terms"] == []  # l = 0 part vanishes
    assert comps[1]["eigenvalue"] == "0"


def test_decompose_zero_polynomial(tmp_path, capsys):
    poly = {"n": 1, "blocks": ["xi"], "terms": []}
    path = tmp_path / "zero.json"
    path.write_text(json.dumps(poly))
    code, out, _ = run(
        capsys, "decompose", "--n", "1", "--k", "2", "--delta", "1/3",
        "--input", str(path), "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert all(c["T"]["terms"] == [] for c in doc["results"]["components"])


def test_decompose_critical_exit_3(tmp_path, capsys):
    poly = {"n": 1, "blocks": ["xi"], "terms": [{"coeff": "1", "exp": {"xi_t": 1}}]}
    path = tmp_path / "input.json"
    path.write_text(json.dumps(poly))
    code, _, err = run(
        capsys, "decompose", "--n", "1", "--k", "1", "--delta", "0",
        "--input", str(path),
    )
    assert code == 3
    assert "critical" in err


def test_diophantine_pairs(capsys):
    code, out, _ = run(
        capsys, "diophantine", "pairs", "--n", "1", "--k", "1", "--kp", "1",
        "--delta", "1/3", "--deltap", "1/3", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["results"]["pairs"] == [[0, 0], [1, 1]]


def test_diophantine_pairs_critical_exit_3(capsys):
    code, _, err = run(
        capsys, "diophantine", "pairs", "--n", "1", "--k", "1", "--kp", "1",
        "--delta", "0", "--deltap", "1/3",
    )
    assert code == 3


def test_diophantine_kappa3_verified(capsys):
    code, out, _ = run(
        capsys, "diophantine", "kappa3", "--n", "1", "--k", "2", "--kp", "1",
        "--blocks", "2:1,0:0,1:1", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["system_solution_matches"] is True


def test_classify_same_weight_cli(capsys):
    code, out, _ = run(
        capsys, "classify-same-weight", "--n", "1", "--l", "1", "--k", "1",
        "--delta", "1/3", "--order-bound", "1", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["dimension"] == 2 and doc["results"]["rechecked"] is True


def test_selftest_deterministic(capsys):
    code1, out1, _ = run(capsys, "selftest", "--level", "fast", "--seed", "42",
                         "--format", "json")
    code2, out2, _ = run(capsys, "selftest", "--level", "fast", "--seed", "42",
                         "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical reports from equal seeds


def test_report_parameters_round_trip(capsys):
    # Negative rationals need the --flag=value form (argparse otherwise
    # mistakes "-5/7" for an option).
    code, out, _ = run(
        capsys, "verify-casimir", "--n", "1", "--k", "1", "--delta=-5/7",
        "--format", "json",
    )
    assert code == 0
    params = json.loads(out)["parameters"]
    code2, out2, _ = run(
        capsys, "verify-casimir",
        "--n", str(params["n"]), "--k", str(params["k"]),
        f"--delta={params['delta']}",
        "--max-base-degree", str(params["max_base_degree"]),
        "--format", "json",
    )
    assert code2 == 0
    assert out2 == out  # echoed parameters reproduce the identical report


def test_export_basis(tmp_path, capsys):
    out_file = tmp_path / "basis.json"
    code, _, _ = run(capsys, "export-basis", "--n", "1", "--output", str(out_file))
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert len(doc["generators"]) == 10
    labels = {g["label"] for g in doc["generators"]}
    assert {"1", "t", "t2", "p1", "q1", "tp1", "tq1", "p1p1", "q1q1", "p1q1"} == labels
