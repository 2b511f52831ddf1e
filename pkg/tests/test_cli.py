import subprocess
import sys

from towersearch.cli import main
from towersearch.tensor import read_tensor_text
from towersearch.generators import GenSpec, Kind, generate


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "towersearch", *args],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_gen_writes_valid_file(tmp_path):
    out = str(tmp_path / "t.txt")
    code = main(["gen", "--dims", "4,4,4", "--kind", "threshold", "--seed", "7", "--out", out])
    assert code == 0
    tensor = read_tensor_text(out)
    assert tensor.dims == (4, 4, 4)


def test_gen_roundtrip_matches_generator(tmp_path):
    out = str(tmp_path / "t.txt")
    assert main(["gen", "--dims", "3,2,4", "--kind", "prefix", "--seed", "5", "--out", out]) == 0
    want = generate(GenSpec((3, 2, 4), Kind.PREFIX_SUM, 5, 4))
    assert read_tensor_text(out) == want


def test_gen_single_cell_header(tmp_path):
    out = tmp_path / "t.txt"
    assert main(["gen", "--dims", "1,1,1", "--kind", "prefix", "--seed", "0", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "1 1 1"
    assert len(lines) == 2


def test_gen_rejects_zero_extent():
    code, _, err = run_cli("gen", "--dims", "0,1,1", "--kind", "prefix", "--out", "/tmp/x.txt")
    assert code == 2


def test_gen_io_failure(tmp_path):
    out = str(tmp_path / "missing" / "t.txt")
    assert main(["gen", "--dims", "1,1,1", "--kind", "prefix", "--out", out]) == 3


def test_search_found_golden_line(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("1 1 1\n5\n")
    code = main(["search", "--tensor", str(path), "--key", "5", "--algo", "mahl"])
    assert code == 0
    assert capsys.readouterr().out == "found=true index=0,0,0 probes=1\n"


def test_search_not_found_golden_line(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("1 1 1\n5\n")
    code = main(["search", "--tensor", str(path), "--key", "4"])
    assert code == 1
    assert capsys.readouterr().out == "found=false index=- probes=1\n"


def test_search_each_algorithm_agrees(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("1 2 3\n0 1 2\n1 2 4\n")
    for algo in ("mahl", "bird", "saddleback", "rows", "scan"):
        code = main(["search", "--tensor", str(path), "--key", "2", "--algo", algo])
        out = capsys.readouterr().out
        assert code == 0, algo
        assert out.startswith("found=true index=")


def test_search_fraction_key(tmp_path, capsys):
    path = tmp_path / "t.txt"
    path.write_text("1 1 2\n0 1\n")
    assert main(["search", "--tensor", str(path), "--key", "1/2"]) == 1
    assert "found=false" in capsys.readouterr().out


def test_search_unsorted_file_exit_4(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("1 1 2\n2 1\n")
    assert main(["search", "--tensor", str(path), "--key", "1"]) == 4


def test_search_missing_file_exit_3(tmp_path):
    assert main(["search", "--tensor", str(tmp_path / "nope.txt"), "--key", "1"]) == 3


def test_search_malformed_file_exit_3(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("1 1 2\n1\n")
    assert main(["search", "--tensor", str(path), "--key", "1"]) == 3


def test_search_plane_algo_on_3d_tensor_exit_2(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("2 2 2\n0 0 0 0 0 0 0 0\n")
    assert main(["search", "--tensor", str(path), "--key", "0", "--algo", "bird"]) == 2


def test_bad_flags_exit_2():
    code, _, _ = run_cli("search", "--tensor", "x", "--key", "1", "--algo", "wat")
    assert code == 2
    code, _, _ = run_cli("gen", "--dims", "1,1", "--kind", "prefix", "--out", "/tmp/x")
    assert code == 2
    code, _, _ = run_cli("frobnicate")
    assert code == 2


def test_verify_small_passes(capsys):
    code = main(["verify", "--dims-max", "2", "--corpus", "threshold", "--count", "64"])
    assert code == 0
    assert "VERIFY PASS" in capsys.readouterr().out


def test_verify_prefix_small_passes(capsys):
    code = main(["verify", "--dims-max", "3", "--corpus", "prefix", "--count", "10"])
    assert code == 0
    out = capsys.readouterr().out
    assert "VERIFY PASS" in out


def test_verify_surfaces_budget_overrun_with_counterexample(capsys):
    code = main(["verify", "--dims-max", "4", "--corpus", "prefix", "--count", "60"])
    assert code == 1
    out = capsys.readouterr().out
    assert "VERIFY FAIL" in out
    assert "exceed budget" in out
    # oracle-only sweep over the same shapes is clean
    code = main(["verify", "--dims-max", "4", "--corpus", "prefix", "--count", "60", "--no-budget"])
    assert code == 0


def test_verify_rejects_bad_dims_max():
    assert main(["verify", "--dims-max", "0"]) == 2


def test_verify_exit_1_on_mutated_comparator(monkeypatch, capsys):
    import towersearch.search as search_mod
    from towersearch.tensor import Ordering

    real_probe = search_mod._probe

    def swapped(tensor, index, key, counter):
        out = real_probe(tensor, index, key, counter)
        if out is Ordering.LESS:
            return Ordering.GREATER
        if out is Ordering.GREATER:
            return Ordering.LESS
        return out

    monkeypatch.setattr(search_mod, "_probe", swapped)
    code = main(["verify", "--dims-max", "2", "--corpus", "threshold", "--count", "64"])
    assert code == 1
    out = capsys.readouterr().out
    assert "VERIFY FAIL" in out
    assert "membership mismatch" in out


def test_bench_single_vector_shape(tmp_path):
    shapes = tmp_path / "shapes.txt"
    shapes.write_text("1 1 7\n")
    out = tmp_path / "report.csv"
    code = main(["bench", "--shapes", str(shapes), "--algos", "mahl", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    algo, n1, n2, n3, max_probes, budget, passed = lines[1].split(",")[:7]
    assert (algo, n1, n2, n3) == ("mahl", "1", "1", "7")
    assert max_probes == "3"
    assert budget == "3"
    assert passed == "true"


def test_bench_two_algorithms_row_count(tmp_path):
    shapes = tmp_path / "shapes.txt"
    shapes.write_text("4 4 4\n")
    out = tmp_path / "report.csv"
    code = main(["bench", "--shapes", str(shapes), "--algos", "mahl,rows",
                 "--prefix-count", "5", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3
    by_algo = {row.split(",")[0]: int(row.split(",")[4]) for row in lines[1:]}
    assert set(by_algo) == {"mahl", "rows"}


def test_bench_empty_shapes_file(tmp_path):
    shapes = tmp_path / "shapes.txt"
    shapes.write_text("")
    out = tmp_path / "report.csv"
    assert main(["bench", "--shapes", str(shapes), "--algos", "mahl", "--out", str(out)]) == 0
    assert out.read_text().splitlines() == [
        "algorithm,n1,n2,n3,max_probes,budget,pass,argmax_seed,argmax_key"
    ]


def test_bench_bad_shapes_file(tmp_path):
    shapes = tmp_path / "shapes.txt"
    shapes.write_text("1 2\n")
    assert main(["bench", "--shapes", str(shapes), "--algos", "mahl", "--out", "/tmp/x.csv"]) == 2
    shapes.write_text("1 1 7\n")
    assert main(["bench", "--shapes", str(shapes), "--algos", "mahl,wat", "--out", "/tmp/x.csv"]) == 2
    assert main(["bench", "--shapes", str(tmp_path / "nope"), "--algos", "mahl", "--out", "/tmp/x.csv"]) == 3


def test_bench_deterministic_bytes(tmp_path):
    shapes = tmp_path / "shapes.txt"
    shapes.write_text("1 1 7\n2 2 2\n")
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(["bench", "--shapes", str(shapes), "--algos", "mahl,rows",
                 "--prefix-count", "10", "--out", str(out1)]) == 0
    assert main(["bench", "--shapes", str(shapes), "--algos", "mahl,rows",
                 "--prefix-count", "10", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
