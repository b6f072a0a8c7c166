import json
import subprocess
import sys

import numpy as np
import pytest

from matchkern.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _matrix(text):
    lines = text.strip().splitlines()
    assert lines[0].startswith("index,")
    return np.array([[float(v) for v in line.split(",")[1:]] for line in lines[1:]])


def test_kernel_csv_deterministic(capsys):
    code, first, err = run(capsys, "kernel", "--n", "7", "--random", "6", "--seed", "3")
    assert code == 0 and "kappa=" in err
    _, second, _ = run(capsys, "kernel", "--n", "7", "--random", "6", "--seed", "3")
    assert first == second
    gram = _matrix(first)
    assert gram.shape == (6, 6)
    assert np.allclose(np.diag(gram), 1.0)


def test_kernel_backends_agree(capsys):
    _, zp, _ = run(capsys, "kernel", "--n", "6", "--random", "8", "--seed", "1", "--backend", "zp")
    _, ex, _ = run(capsys, "kernel", "--n", "6", "--random", "8", "--seed", "1", "--backend", "explicit")
    assert np.max(np.abs(_matrix(zp) - _matrix(ex))) <= 1e-10


def test_kernel_json_input(tmp_path, capsys):
    path = tmp_path / "xs.json"
    path.write_text(json.dumps([[[1, 2], [3, 4]], [[1, 3], [2, 4]]]))
    code, out, _ = run(capsys, "kernel", "--n", "2", "--input", str(path), "--format", "json", "--nu", "1.5")
    assert code == 0
    data = json.loads(out)
    assert len(data["matrix"]) == 2 and data["matrix"][0][0] == 1.0


def test_kernel_errors(tmp_path, capsys):
    assert run(capsys, "kernel", "--n", "4")[0] == 2
    assert run(capsys, "kernel", "--n", "4", "--input", str(tmp_path / "missing.json"))[0] == 2
    path = tmp_path / "xs.json"
    path.write_text(json.dumps([[[1, 2], [3, 4]]]))
    assert run(capsys, "kernel", "--n", "3", "--input", str(path))[0] == 2
    assert run(capsys, "kernel", "--n", "8", "--random", "2", "--backend", "avg")[0] == 3


def test_zsf_command(capsys):
    code, out, _ = run(capsys, "zsf", "--rho", "1,1")
    assert code == 0
    assert out.splitlines() == ["mu,fraction,float", "2,-1/2,-0.5", "1.1,1/1,1"]


def test_spectrum_command(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "5")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "rho,eigenvalue,dimension,weight,log_weight"
    assert len(lines) == 1 + 7
    code, out, _ = run(capsys, "spectrum", "--n", "5", "--density")
    assert out.splitlines()[0] == "rho,eigenvalue,log_density"


def test_approx_error_command(capsys):
    code, out, _ = run(capsys, "approx-error", "--n", "10", "--max-terms", "12")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "terms,relative_error" and len(lines) == 13
    errors = [float(line.split(",")[1]) for line in lines[1:]]
    assert all(b <= a for a, b in zip(errors, errors[1:]))


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "2")
    assert code == 0
    assert out.strip() and all(line.startswith("PASS") for line in out.strip().splitlines())
    assert run(capsys, "oracle", "--n", "7")[0] == 3


def test_tree_encode_decode(capsys):
    code, out, _ = run(capsys, "tree", "encode", "--newick", "(((1,5),4),(2,3));")
    assert code == 0 and json.loads(out) == [[1, 5], [2, 3], [4, 6], [7, 8]]
    code, out, _ = run(capsys, "tree", "decode", "--matching", "[[1,5],[2,3],[4,6],[7,8]]")
    assert code == 0 and out.strip() == "(((1,5),4),(2,3));"
    assert run(capsys, "tree", "encode", "--newick", "((1,2);")[0] == 2


def test_tree_embed_and_nni(capsys):
    code, out, _ = run(capsys, "tree", "embed", "--newick", "((1,2),3);")
    assert code == 0 and len(json.loads(out)) == 3
    code, out, _ = run(capsys, "tree", "nni-check", "--leaves", "9", "--trials", "20")
    assert code == 0 and out.startswith("PASS")


@pytest.mark.parametrize("kind,n", [("adjacent-trees", 8), ("adjacent-matchings", 10)])
def test_tree_counterexample(capsys, kind, n):
    code, out, _ = run(capsys, "tree", "counterexample", "--kind", kind, "--n", str(n))
    assert code == 0 and "PASS" in out


def test_bench_command(capsys, tmp_path):
    csv = tmp_path / "bench.csv"
    code, out, _ = run(
        capsys, "bench", "--n-list", "3,8", "--backend-list", "zp,avg", "--matrix-size", "10",
        "--trials", "2", "--output", str(csv),
    )
    assert code == 0
    rows = csv.read_text().strip().splitlines()
    assert rows[0] == "n,backend,impl,mean_seconds,std_seconds,peak_rss_mb,trials"
    skipped = [r for r in rows[1:] if r.startswith("8,avg")]
    assert skipped and skipped[0].endswith(",0")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "matchkern", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip()
