"""Write the CSV series behind the complexity and malfunction-probability curves.

Usage: python scripts/write_curves.py [outdir]
"""

import sys
import time
from pathlib import Path

from esbch.cli import main

CURVES = {
    "complexity_t72_k6.csv": ["complexity", "--t", "72", "--kappa", "6", "--e-max", "72"],
    "pmf_binomial_m5_t3_k4.csv": ["analyze", "pmf", "--m", "5", "--t", "3", "--kappa", "4",
                                       "--method", "binomial"],
    "pud_m5_t3.csv": ["analyze", "pud", "--m", "5", "--t", "3"],
    "pmf_m14_t72_k6.csv": ["analyze", "pmf", "--m", "14", "--t", "72", "--kappa", "6"],
}
for kappa in (1, 2, 3, 4, 5, 6):
    CURVES[f"pmf_m10_t17_k{kappa}.csv"] = [
        "analyze", "pmf", "--m", "10", "--t", "17", "--kappa", str(kappa)]


def peak_line(path: Path) -> str:
    for line in path.read_text().splitlines():
        if line.startswith("# peak="):
            return line[2:]
    return ""


def run(outdir: Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    for name, argv in CURVES.items():
        start = time.perf_counter()
        status = main(argv + ["--out", str(outdir / name)])
        if status:
            return status
        print(f"{name:36s} {time.perf_counter() - start:6.2f}s  {peak_line(outdir / name)}")
    return 0


if __name__ == "__main__":
    sys.exit(run(Path(sys.argv[1] if len(sys.argv) > 1 else "results")))
