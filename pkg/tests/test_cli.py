import csv
import io
import json

import pytest

from zplap.cli import main
from zplap.matrix import format_matrix, format_vector, read_matrix, SpSymMatrix, is_unit_weight
from zplap.schur import circuit_weight


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(out):
    return json.loads(out.strip().splitlines()[-1])


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_gadget_report(capsys, tmp_path):
    out_path = tmp_path / "g.mtx"
    code, out, _ = run(capsys, "gadget", "--p", 1009, "--r", 500, "--out", out_path)
    rep = report(out)
    assert code == 0 and rep["verified"] is True
    assert {"p", "r", "nnz", "max_deg", "micros"} <= set(rep)
    M = read_matrix(str(out_path)).to_sym()
    assert is_unit_weight(M) and circuit_weight(M) == pow(500, -1, 1009)


def test_gadget_unit(capsys, tmp_path):
    out_path = tmp_path / "u.mtx"
    code, out, _ = run(capsys, "gadget", "--p", 7, "--r", 1, "--out", out_path)
    assert code == 0
    assert read_matrix(str(out_path)).to_sym() == SpSymMatrix.from_edges(2, 7, [(0, 1, 1)])


def test_gadget_naive(capsys):
    code, out, _ = run(capsys, "gadget", "--p", 13, "--r", 5, "--naive")
    assert code == 0 and report(out)["nnz"] == 5 * 2 + 6


@pytest.mark.parametrize("argv", [["gadget", "--p", 4, "--r", 1], ["gadget", "--p", 7, "--r", 7],
                                  ["gadget", "--p", 7], ["bogus"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main([str(a) for a in argv])
        raise SystemExit(code)
    assert exc.value.code == 1


def test_reduce_laplacian_verified(capsys, tmp_path):
    A = write(tmp_path, "a.mtx", "%%ZpMatrix\np 5\nrows 1 cols 1\n1 1 2\n")
    b = write(tmp_path, "b.vec", "%%ZpVector\np 5\nlen 1\n1 3\n")
    out_path = tmp_path / "L.mtx"
    code, out, _ = run(capsys, "reduce", "--to", "laplacian", "--matrix", A, "--rhs", b,
                       "--out", out_path, "--verify")
    rep = report(out)
    assert code == 0 and rep["verified"] is True and rep["backmap_kind"] == "difference"
    assert read_matrix(str(out_path)).to_sym().n == 4
    assert (tmp_path / "L.mtx.rhs").exists()


def test_reduce_unit_passthrough(capsys, tmp_path):
    L = SpSymMatrix.from_edges(3, 7, [(0, 1, 1), (1, 2, 1)])
    A = write(tmp_path, "l.mtx", format_matrix(L))
    code, out, _ = run(capsys, "reduce", "--to", "unit", "--matrix", A)
    rep = report(out)
    assert code == 0 and rep["nnz_out"] == rep["nnz_in"] and rep["unit_weight"] is True


def test_reduce_lowdeg(capsys, tmp_path):
    L = SpSymMatrix.from_edges(3, 13, [(0, 1, 3), (1, 2, 5), (0, 2, 7)])
    A = write(tmp_path, "l.mtx", format_matrix(L))
    b = write(tmp_path, "b.vec", format_vector([1, 2, 10], 13))
    code, out, _ = run(capsys, "reduce", "--to", "lowdeg", "--matrix", A, "--rhs", b, "--verify")
    rep = report(out)
    assert code == 0 and rep["verified"] is True and rep["unit_weight"] is True
    assert rep["maxdeg_weighted"] <= rep["degree_bound"]


@pytest.mark.parametrize("target", ["walk", "normwalk"])
def test_reduce_other_targets(capsys, tmp_path, target):
    L = SpSymMatrix.from_edges(3, 7, [(0, 1, 3), (1, 2, 5)])
    A = write(tmp_path, "l.mtx", format_matrix(L))
    code, out, _ = run(capsys, "reduce", "--to", target, "--matrix", A, "--out", tmp_path / "o.mtx")
    assert code == 0 and report(out)["verified"] is True


def test_reduce_not_laplacian(capsys, tmp_path):
    A = write(tmp_path, "a.mtx", "%%ZpMatrix\np 7\nrows 2 cols 2\n1 1 1\n2 2 1\n")
    code, _, err = run(capsys, "reduce", "--to", "unit", "--matrix", A)
    assert code == 1 and "error" in err


def test_reduce_bad_inputs(capsys, tmp_path):
    code, _, err = run(capsys, "reduce", "--to", "unit", "--matrix", tmp_path / "missing.mtx")
    assert code == 1 and "no such file" in err
    A = write(tmp_path, "a.mtx", "%%ZpMatrix\np 7\nrows 1 cols 1\n1 1 9\n")
    assert run(capsys, "reduce", "--to", "laplacian", "--matrix", A)[0] == 1
    A = write(tmp_path, "b.mtx", "%%ZpMatrix\np 8\nrows 1 cols 1\n1 1 1\n")
    assert run(capsys, "reduce", "--to", "laplacian", "--matrix", A)[0] == 1


def test_reduce_skips_large_verification(capsys, tmp_path):
    L = SpSymMatrix.from_edges(8, 101, [(k, k + 1, 3) for k in range(7)])
    A = write(tmp_path, "l.mtx", format_matrix(L))
    code, out, err = run(capsys, "reduce", "--to", "unit", "--matrix", A)
    assert code == 0 and report(out)["verified"] is None and "warning" in err
    code, out, _ = run(capsys, "reduce", "--to", "unit", "--matrix", A, "--verify")
    assert code == 0 and report(out)["verified"] is True


def test_symdet(capsys, tmp_path):
    A = write(tmp_path, "a.mtx", "%%ZpMatrix\np 1000003\nrows 2 cols 2\n1 1 1\n1 2 1\n2 1 1\n2 2 1\n")
    code, out, _ = run(capsys, "symdet", "--matrix", A)
    rep = report(out)
    assert code == 0 and rep["det_zero_exact"] is True and rep["det_zero_randomized"] is True
    assert rep["pdeg"] == 1 and rep["maxm"] <= 3
    Z = write(tmp_path, "z.mtx", "%%ZpMatrix\np 7\nrows 2 cols 2\n1 1 1\n")
    assert run(capsys, "symdet", "--matrix", Z)[0] == 1


def test_bench(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ZPLAP_SEED", "1")
    path = tmp_path / "b.csv"
    code, out, _ = run(capsys, "bench", "--p-list", "1009,65537", "--samples", 50, "--csv", path,
                       "--workers", 1)
    rows = list(csv.reader(path.open()))
    assert code == 0 and rows[0] == ["p", "r", "nnz", "max_deg", "micros"] and len(rows) == 101
    assert report(out) == {"command": "bench", "rows": 100, "failures": 0}


def test_bench_header_only(capsys):
    code, out, _ = run(capsys, "bench", "--p-list", "1009", "--samples", 0)
    assert code == 0
    assert list(csv.reader(io.StringIO(out))) == [["p", "r", "nnz", "max_deg", "micros"]]


def test_bench_seeded_reproducible(capsys, monkeypatch):
    monkeypatch.setenv("ZPLAP_SEED", "42")
    _, a, _ = run(capsys, "bench", "--p-list", "101", "--samples", 5, "--workers", 1)
    _, b, _ = run(capsys, "bench", "--p-list", "101", "--samples", 5, "--workers", 1)
    strip = lambda s: [r[:4] for r in csv.reader(io.StringIO(s))]
    assert strip(a) == strip(b)


def test_bench_61_bit_parallel(capsys, tmp_path):
    p = 2305843009213693951  # 2^61 - 1
    path = tmp_path / "b.csv"
    code, out, _ = run(capsys, "bench", "--p-list", p, "--samples", 10, "--csv", path, "--workers", 2)
    rows = list(csv.reader(path.open()))[1:]
    assert code == 0 and len(rows) == 10 and all(int(r[0]) == p for r in rows)
