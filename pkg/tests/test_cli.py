import json
import subprocess
import sys

import pytest

from cycrook.cli import main
from cycrook.matrix import RMatrix, dump_matrix


@pytest.fixture
def write_matrix(tmp_path):
    def write(rows):
        path = tmp_path / f"m{len(list(tmp_path.iterdir()))}.json"
        dump_matrix(RMatrix.from_rows(rows), path)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_per_z(capsys, write_matrix):
    code, out, _ = run(capsys, "compute", "--what", "per-z", "--input", write_matrix([[1, 1], [1, 1]]))
    assert code == 0 and out.strip() == "z^2 + z"


def test_compute_zero_board_by_row(capsys, write_matrix):
    code, out, _ = run(capsys, "compute", "--what", "rook-z", "--method", "expand-row", "--row", "1",
                       "--input", write_matrix([[0]]))
    assert code == 0 and out.strip() == "1"


def test_compute_classic_permanent(capsys, write_matrix):
    code, out, _ = run(capsys, "compute", "--what", "classic-per", "--input", write_matrix([[1, 2], [3, 4]]))
    assert code == 0 and out.strip() == "10"


@pytest.mark.parametrize("method,extra", [("expand-last-k", ["--k", "2"]), ("expand-row", ["--row", "2"]),
                                          ("expand-per-rows", ["--rows", "1,3"]), ("oracle", [])])
def test_compute_methods_agree(capsys, write_matrix, method, extra):
    path = write_matrix([[1, -2, 3, 0], [2, 2, -1, 1], [0, 3, 1, -3]])
    code, out, _ = run(capsys, "compute", "--what", "per-z", "--method", method, "--check", "--input", path, *extra)
    assert code == 0
    _, ref, _ = run(capsys, "compute", "--what", "per-z", "--input", path)
    assert out == ref


def test_compute_json_and_binding(capsys, write_matrix):
    path = write_matrix([[1, 1], [1, 1]])
    code, out, _ = run(capsys, "compute", "--input", path, "--format", "json")
    assert json.loads(out)["result"] == [["1"], ["2", "2"], ["0", "1", "1"]]
    code, out, _ = run(capsys, "compute", "--what", "per-z", "--z", "3", "--input", path)
    assert out.strip() == "12"
    code, out, _ = run(capsys, "compute", "--what", "r-l", "--l", "1", "--input", path)
    assert out.strip() == "2*z + 2"


def test_compute_errors(capsys, tmp_path, write_matrix):
    assert run(capsys, "compute", "--input", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 2, "cols": 2, "entries": [[1, 2]]}')
    assert run(capsys, "compute", "--input", str(bad))[0] == 2
    assert run(capsys, "compute", "--input", write_matrix([[1], [2]]))[0] == 3
    assert run(capsys, "compute", "--method", "expand-per-rows", "--input", write_matrix([[1]]))[0] == 2
    big = write_matrix([[1] * 8] * 8)
    assert run(capsys, "compute", "--what", "per-z", "--input", big)[0] == 3


def test_verify_addition(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "5", "--trials", "100", "--seed", "42")
    assert code == 0 and "PASS" in out


def test_verify_closed_form_symbolic(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "7", "--max-nk", "8", "--symbolic")
    assert code == 0


def test_verify_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "--counterexample", "--k", "2")
    assert code == 0 and "witness found" in out and "a1_1" in out


def test_verify_report_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--theorem", "2", "--trials", "5", "--output", str(path), "--timing")
    doc = json.loads(path.read_text())
    assert code == 0 and doc["pass"] and "elapsed_ms" in doc


def test_circulant_closed_form(capsys):
    code, out, _ = run(capsys, "circulant", "--n", "2", "--k", "1", "--coeffs", "1,1", "--method", "closed-form")
    assert code == 0 and out.strip() == "z^2 + z"


def test_circulant_dp_cross_check(capsys):
    code, out, _ = run(capsys, "circulant", "--n", "3", "--k", "1", "--coeffs", "1,1", "--method", "dp",
                       "--cross-check", "oracle")
    assert code == 0


def test_circulant_large_integer(capsys):
    code, out, _ = run(capsys, "circulant", "--n", "100", "--k", "5", "--coeffs", "2,3", "--method",
                       "closed-form", "--z", "1")
    assert code == 0 and out.strip().isdigit() and len(out.strip()) > 100


def test_circulant_spec_file_and_rook(capsys, tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"n": 1, "k": 2, "r": 0, "coeffs": [1]}))
    code, out, _ = run(capsys, "circulant", "--spec", str(spec), "--what", "rook-z", "--cross-check", "oracle")
    assert code == 0 and out.strip() == "1 + (2*z + 2)*x^1 + (z^2 + z)*x^2"


def test_circulant_refusals(capsys):
    assert run(capsys, "circulant", "--n", "3", "--coeffs", "1,1,1", "--method", "closed-form")[0] == 3
    assert run(capsys, "circulant", "--n", "3", "--k", "4", "--coeffs", "1,1", "--method", "oracle")[0] == 3
    assert run(capsys, "circulant", "--k", "4")[0] == 2


def test_bench_rows(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "4,6,8", "--trials", "1", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["nk"] for r in rows] == [4, 6, 8]
    assert all(r["closed_form_s"] < 1 for r in rows)


def test_module_entry_point_and_threads(tmp_path):
    env = {"CYCROOK_THREADS": "2", "PATH": "/usr/bin:/bin"}
    args = [sys.executable, "-m", "cycrook", "verify", "--theorem", "4", "--trials", "6", "--seed", "1",
            "--format", "json"]
    threaded = subprocess.run(args, capture_output=True, env=env, check=True).stdout
    serial = subprocess.run(args, capture_output=True, env={"PATH": "/usr/bin:/bin"}, check=True).stdout
    assert threaded == serial
