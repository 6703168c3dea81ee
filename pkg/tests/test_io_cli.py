import hashlib
import json
import math

import numpy as np
import pytest

from isodiam import bodies, cli
from isodiam import io as jio
from isodiam.dr import witness_library
from isodiam.errors import InputError, MaxIterations


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_polytope_round_trip(tmp_path):
    P = bodies.icosahedron()
    path = tmp_path / "ico.json"
    jio.write_json(jio.polytope_to_dict(P), path)
    Q = jio.polytope_from_dict(jio.read_json(path))
    assert np.array_equal(np.sort(P.vertices, axis=0), np.sort(Q.vertices, axis=0))


def test_decomposition_round_trip():
    W = witness_library("dr533")
    D = jio.decomposition_from_dict(json.loads(jio.dumps(jio.witness_to_dict(W))))
    assert np.array_equal(D.weights, W.decomposition.weights)


def test_negative_zero_is_not_written():
    assert "-0.0" not in jio.dumps({"x": [-0.0, 1.0]})


def test_malformed_json_reports_position(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n "vertices": [[1, 0], [0, 1],]\n}')
    with pytest.raises(InputError, match="line 2, column"):
        jio.read_json(bad)


def test_spec_examples(capsys):
    code, out, _ = run(capsys, "dr-bound", "--m", "6", "--n", "3", "--j", "3")
    assert code == 0 and out.strip() == "0.105409255339"
    assert float(out) == pytest.approx(math.sqrt(10) / 30, rel=1e-11)
    code, out, _ = run(capsys, "iq", "fixtures/crosspolytope3.json")
    assert code == 0 and out.strip() == "0.166666666667"


def test_witness_pipe(capsys, monkeypatch, tmp_path):
    code, out, _ = run(capsys, "witness", "dr533")
    assert code == 0 and json.loads(out)["subset"] == [0, 1, 3]
    monkeypatch.setattr("sys.stdin", type("S", (), {"buffer": __import__("io").BytesIO(out.encode())})())
    code, out, _ = run(capsys, "check-decomposition", "--tol", "1e-10")
    assert code == 0 and "OK" in out


def test_check_decomposition_failure(capsys, tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"dim": 2, "directions": [[1, 0], [0, 1]], "weights": [1, 0.5]}))
    code, out, _ = run(capsys, "check-decomposition", str(path))
    assert code == 1 and "FAIL" in out


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "vertices": [[1, 0],')
    code, _, err = run(capsys, "iq", str(bad))
    assert code == 2 and "line 1, column" in err
    bad.write_text('{"dim": 3, "vertices": [[1, 0], [0, 1], [0, 0]]}')
    code, _, err = run(capsys, "iq", str(bad))
    assert code == 2 and "dimension mismatch" in err
    bad.write_text('{"dim": 2, "directions": [[1, 0], [0, 1]], "weights": [1]}')
    code, _, err = run(capsys, "check-decomposition", str(bad))
    assert code == 2
    code, _, _ = run(capsys, "witness", "nonsense")
    assert code == 2
    code, _, _ = run(capsys, "iq", str(tmp_path / "missing.json"))
    assert code == 2


def test_solver_failure_exit_code(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise MaxIterations(10, 0.5)
    monkeypatch.setattr(cli, "mvee_general", boom)
    code, _, err = run(capsys, "mvee", "cube3")
    assert code == 3 and "converge" in err


def test_seed_is_mandatory(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["dr-search", "--m", "5", "--n", "3"])
    assert exc.value.code == 2


def test_behrend_outputs_and_report(capsys, tmp_path):
    src = jio.resolve_input("sailing_boat_0.95")
    out, cert, report = tmp_path / "b.json", tmp_path / "c.json", tmp_path / "r.json"
    code, stdout, _ = run(capsys, "behrend", "sailing_boat_0.95", "--out", str(out),
                          "--cert", str(cert), "--report", str(report))
    assert code == 0
    first = json.loads(stdout)
    c = json.loads(cert.read_text())
    assert c["certified"] and c["residual"] < 1e-8
    rep = json.loads(report.read_text())
    assert rep["input_digest"] == hashlib.sha256(src.read_bytes()).hexdigest()
    assert rep["version"] and rep["outputs"]["exit_code"] == 0
    code, stdout, _ = run(capsys, "behrend", str(out))
    assert abs(json.loads(stdout)["quotient_after"] - first["quotient_after"]) < 1e-8


def test_isominwidth_and_iwq(capsys):
    code, out, _ = run(capsys, "isominwidth", "cube3")
    assert code == 0 and json.loads(out)["quotient_after"] == pytest.approx(1.0)
    code, out, _ = run(capsys, "iwq", "triangle_0.5")
    assert float(out) == pytest.approx(1 / math.sqrt(3))


def test_mvee_centered(capsys):
    code, out, _ = run(capsys, "mvee", "cube3", "--centered")
    E = json.loads(out)["ellipsoid"]
    assert code == 0 and np.allclose(E["shape"], np.eye(3) / 3)


def test_dr_table(capsys):
    code, out, _ = run(capsys, "dr-table", "--n", "3")
    lines = out.strip().splitlines()[1:]
    assert code == 0 and len(lines) == 4 * 3


def test_dr_search_cli(capsys):
    code, out, _ = run(capsys, "dr-search", "--m", "4", "--n", "3", "--seed", "1",
                       "--restarts", "4", "--iters", "200")
    assert code == 0 and json.loads(out)["residual"] < 1e-8


def test_fixture_env_override(capsys, monkeypatch, tmp_path):
    jio.write_json(jio.polytope_to_dict(bodies.cube(2)), tmp_path / "mybody.json")
    monkeypatch.setenv("ISODIAM_FIXTURES", str(tmp_path))
    code, out, _ = run(capsys, "iq", "mybody")
    assert code == 0 and float(out) == pytest.approx(0.5)


def test_verify_paper_subset(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "8,9")
    assert code == 0 and out.count("PASS") == 2


def test_help_documents_schemas(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    assert '"vertices"' in capsys.readouterr().out
