import subprocess
import sys
from pathlib import Path

SCRIPT = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_backends.py"


def test_backend_benchmark_runs():
    out = subprocess.run(
        [sys.executable, str(SCRIPT), "--n", "5", "--corpus", "200", "--skip-exact"],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert out.returncode == 0, out.stderr
    assert "hierarchical_batch" in out.stdout and "mld_batch" in out.stdout
