import runpy
import sys
from pathlib import Path

BENCH = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


def test_benchmark_runs(capsys, monkeypatch):
    monkeypatch.setattr(sys, "argv", [str(BENCH), "--quick"])
    runpy.run_path(str(BENCH), run_name="__main__")
    out = capsys.readouterr().out
    assert "walk step" in out and "backends:" in out
