import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run_script(name, *args):
    return subprocess.run(
        [sys.executable, str(SCRIPTS / name), *args],
        capture_output=True,
        text=True,
    )


def test_budget_gap_report_small():
    proc = run_script("budget_gap_report.py", "--max-extent", "3", "--only-gaps")
    assert proc.returncode == 0, proc.stderr
    assert "27/27 shapes within budget, 0 over" in proc.stdout


def test_budget_gap_report_finds_known_gaps():
    proc = run_script("budget_gap_report.py", "--max-extent", "4", "--only-gaps")
    assert proc.returncode == 0, proc.stderr
    assert "61/64 shapes within budget, 3 over" in proc.stdout
    assert "largest overrun 1 probes at (2, 4, 3)" in proc.stdout


def test_run_bench_writes_all_reports(tmp_path):
    proc = run_script(
        "run_bench.py", "--out-dir", str(tmp_path), "--max-cube", "4",
        "--prefix-count", "2",
    )
    assert proc.returncode == 0, proc.stderr
    names = {p.name for p in tmp_path.iterdir()}
    assert names == {
        "shapes_3d.csv", "shapes_2d.csv", "growth_cube.csv",
        "growth_slab4.csv", "growth_vector.csv", "permutations.csv",
    }
    header = (tmp_path / "shapes_3d.csv").read_text().splitlines()[0]
    assert header == "algorithm,n1,n2,n3,max_probes,budget,pass,argmax_seed,argmax_key"
