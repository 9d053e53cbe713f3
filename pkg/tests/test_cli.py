import json

from ncgdirac.cli import EXIT_BAD_INPUT, EXIT_FAILED, EXIT_OK, main
from ncgdirac.catalog import r4_presentation


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_r4(capsys):
    code, out, _ = run(capsys, "verify", "r4")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["pass"] is True
    assert any(c["clause"] == "clifford_relations" for c in payload["clauses"])


def test_verify_writes_report_atomically(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "r4", "--out", str(target))
    assert code == EXIT_OK
    payload = json.loads(target.read_text())
    assert payload["pass"] is True


def test_verify_deterministic_output(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(capsys, "verify", "s3", "--out", str(a))
    run(capsys, "verify", "s3", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_induce_s3_emit_structures(capsys, s3):
    from ncgdirac.algebra import AlgebraElement
    from ncgdirac.catalog import metric_lower
    from ncgdirac.scalars import Scalar
    from ncgdirac.tensors import TensorElement, tensor

    code, out, _ = run(capsys, "induce", "s3", "--emit-structures")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["space"] == "s3"
    # nabla_B(dz1) = -z1 sum g_kl dz_k (x) dz_l, emitted as its projected
    # canonical representative
    p = s3.presentation
    want = TensorElement.zero(p, 2)
    for k in range(4):
        for l in range(4):
            v = metric_lower(k, l)
            if v:
                want = want + tensor(
                    TensorElement.basis(p, (k,)), TensorElement.basis(p, (l,))
                ).scale(Scalar.rational(v))
    want = s3.structures.calculus.canon(
        want.left_mul(AlgebraElement.generator(p, 0)).scale(Scalar.rational(-1))
    )
    assert payload["connection"]["dz1"] == want.to_json()
    assert "certificate" in payload and payload["certificate"]["pass"] is True


def test_induce_rejects_flat_space(capsys):
    code, _, err = run(capsys, "induce", "r4")
    assert code == EXIT_BAD_INPUT
    assert "hypersurface" in err


def test_dirac_command_t2(capsys):
    code, out, _ = run(capsys, "dirac", "t2")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert set(payload["basis_dirac"]) == {"e1", "e2", "e3", "e4"}


def test_dirac_command_flat_space(capsys):
    code, out, _ = run(capsys, "dirac", "r4")
    assert code == EXIT_OK
    payload = json.loads(out)
    # the flat spin connection kills basis spinors
    assert all(value["terms"] == [] for value in payload["basis_dirac"].values())


def test_induce_t2(capsys):
    code, out, _ = run(capsys, "induce", "t2", "--emit-structures")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["certificate"]["pass"] is True
    assert payload["nu"]["degree"] == 1


def test_spectrum_command(capsys):
    code, out, _ = run(capsys, "spectrum", "t2", "--theta", "0.7", "--mmax", "2")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["max_deviation"] < 1e-9
    assert payload["fallback_used"] is False


def test_spectrum_requires_torus(capsys):
    code, _, err = run(capsys, "spectrum", "s3")
    assert code == EXIT_BAD_INPUT
    assert "t2" in err


def test_spectrum_text_format(capsys):
    code, out, _ = run(capsys, "spectrum", "t2", "--mmax", "0", "--format", "text")
    assert code == EXIT_OK
    assert "max_deviation" in out


def test_malformed_arguments(capsys):
    code, _, _ = run(capsys, "verify", "nonsense")
    assert code == EXIT_BAD_INPUT


def test_user_presentation_verifies(tmp_path, capsys):
    doc = r4_presentation().to_json()
    path = tmp_path / "pres.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "--presentation", str(path))
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["pass"] is True


def test_user_presentation_non_confluent_fails(tmp_path, capsys):
    # two rules rewriting the same normal-ordered pair inconsistently
    doc = r4_presentation().to_json()
    doc["ideal"] = [
        {"lhs": [0, 2], "rhs": [{"exps": [0, 0, 0, 0], "coeff": {"terms": [[0, "1", "0"]]}}]},
        {
            "lhs": [0, 1, 2],
            "rhs": [{"exps": [0, 0, 0, 0], "coeff": {"terms": [[0, "1", "0"]]}}],
        },
    ]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "--presentation", str(path))
    assert code == EXIT_FAILED
    payload = json.loads(out)
    assert not payload["pass"]


def test_user_presentation_missing_file(capsys):
    code, _, err = run(capsys, "verify", "--presentation", "/nonexistent/pres.json")
    assert code == EXIT_BAD_INPUT
    assert err


def test_report_all(tmp_path, capsys):
    target = tmp_path / "all.json"
    code, _, _ = run(capsys, "report-all", "--mmax", "1", "--out", str(target))
    assert code == EXIT_OK
    payload = json.loads(target.read_text())
    assert set(payload["spaces"]) == {"r4", "s3", "t2"}
    assert payload["spectrum"]["max_deviation"] < 1e-9
