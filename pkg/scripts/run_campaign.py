"""Bounded Monte Carlo and exhaustive verification of early-stopped decoding.

Usage: python scripts/run_campaign.py [--trials N] [--workers W] [outdir]
"""

import argparse
import sys
from pathlib import Path

from esbch.cli import main


def campaign(trials: int, workers: int) -> dict[str, list[str]]:
    jobs = {}
    for m, t in ((4, 2), (5, 3)):
        for kappa in (1, 2, 4, 6):
            jobs[f"exhaust_m{m}_t{t}_k{kappa}.csv"] = [
                "exhaust", "--m", str(m), "--t", str(t), "--criterion", "es3",
                "--kappa", str(kappa), "--max-weight", str(t + 1)]
    for kappa in (4, 6):
        jobs[f"simulate_m14_t72_k{kappa}.csv"] = [
            "simulate", "--m", "14", "--t", "72", "--criterion", "es3", "--kappa", str(kappa),
            "--eps", "2.5e-3", "--trials", str(trials), "--seed", "2024", "--workers", str(workers)]
    jobs["simulate_m10_t17_k2.csv"] = [
        "simulate", "--m", "10", "--t", "17", "--criterion", "es3", "--kappa", "2",
        "--eps", "1e-2", "--trials", str(trials), "--seed", "7", "--workers", str(workers)]
    return jobs


def run(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="results")
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, cmd in campaign(args.trials, args.workers).items():
        print(f"-> {name}", flush=True)
        status = main(cmd + ["--out", str(out / name)])
        if status:
            return status
    return 0


if __name__ == "__main__":
    sys.exit(run())
