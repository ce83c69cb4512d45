import subprocess
import sys
from pathlib import Path

SCRIPT = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"


def test_benchmark_runs():
    proc = subprocess.run(
        [sys.executable, str(SCRIPT), "--systems", "5", "--formulas", "2", "--repeat", "1"],
        capture_output=True, text=True, timeout=300,
    )
    assert proc.returncode == 0, proc.stderr
    assert "kernel" in proc.stdout and "end-to-end" in proc.stdout
