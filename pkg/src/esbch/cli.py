"""Command-line entry point.

Subcommands: tables, codeinfo, decode, analyze {pmf,pud}, complexity,
simulate, exhaust.  CSV output starts with ``# key=value`` comment lines
recording the invocation and library versions.  Exit status is 0 on
success, 1 on a runtime error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import shlex
import sys

import numpy as np
import scipy

from . import __version__
from .analysis import (
    AnalysisPoint,
    complexity_bounds,
    log_eps_grid,
    p_mf_binomial,
    p_mf_exponent,
    p_ud,
    peak,
    reduction_ratio,
    sweep,
)
from .bch import bits_to_int, build_code, int_to_bits
from .channel_sim import RNG_NAME, SimConfig, exhaustive_oracle, run_trials
from .decoder import StopCriterion, decode
from .galois import GaloisError, GaloisField


class UsageError(Exception):
    pass


def _header(argv, extra=()) -> list[str]:
    lines = [
        f"# invocation=esbch {shlex.join(argv)}",
        f"# esbch_version={__version__}",
        f"# numpy_version={np.__version__}",
        f"# scipy_version={scipy.__version__}",
    ]
    lines += [f"# {k}={v}" for k, v in extra]
    return lines


def _emit(args, header: list[str], fieldnames: list[str], rows: list[dict]) -> None:
    buf = io.StringIO()
    for line in header:
        buf.write(line + "\n")
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    text = buf.getvalue()
    if getattr(args, "out", None):
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _parse_poly(text: str | None) -> int | None:
    if text is None:
        return None
    try:
        return int(text, 16)
    except ValueError:
        raise UsageError(f"--poly must be hex, got {text!r}")


def _field(args) -> GaloisField:
    return GaloisField(args.m, _parse_poly(getattr(args, "poly", None)))


def _criterion(args) -> StopCriterion:
    if args.criterion == "es3":
        if args.kappa is None:
            raise UsageError("--criterion es3 requires --kappa")
        if args.kappa < 1:
            raise UsageError("--kappa must be >= 1")
        return StopCriterion.es3(args.kappa)
    if args.kappa is not None:
        raise UsageError(f"--kappa only applies to es3, not {args.criterion}")
    return StopCriterion.parse(args.criterion)


def _check_code_args(args) -> None:
    if not 2 <= args.m <= 16:
        raise UsageError("--m must lie in [2, 16]")
    if args.t < 1:
        raise UsageError("--t must be >= 1")


def cmd_tables(args, argv) -> int:
    if not 2 <= args.m <= 16:
        raise UsageError("--m must lie in [2, 16]")
    gf = _field(args)
    rows = [dict(index=i, alpha_power_hex=f"{int(gf.exp_table[i]):x}") for i in range(gf.order)]
    _emit(args, _header(argv, [("primitive_poly", f"{gf.primitive_poly:x}")]),
          ["index", "alpha_power_hex"], rows)
    return 0


def cmd_codeinfo(args, argv) -> int:
    _check_code_args(args)
    code = build_code(_field(args), args.t)
    print(f"n={code.n}")
    print(f"k={code.k}")
    print(f"t={code.t}")
    print(f"m={code.m}")
    print(f"deg_g={code.parity_bits}")
    print(f"g_hex={code.generator_poly:x}")
    return 0


def cmd_decode(args, argv) -> int:
    _check_code_args(args)
    criterion = _criterion(args)
    try:
        value = int(args.hex, 16)
    except ValueError:
        raise UsageError(f"--hex must be hex, got {args.hex!r}")
    code = build_code(_field(args), args.t)
    if value.bit_length() > code.n:
        raise UsageError(f"--hex has {value.bit_length()} bits, code length is {code.n}")
    out = decode(code, int_to_bits(value, code.n), criterion)
    print(f"status={out.status.value}")
    print(f"positions={','.join(map(str, out.error_locations))}")
    print(f"iterations={out.iterations_used}")
    print(f"muls={out.mul_count}")
    print(f"stop_reason={out.stop_reason}")
    if out.corrected is not None:
        print(f"corrected_hex={bits_to_int(out.corrected):x}")
    return 0


def _normalize_n(args) -> None:
    if args.n is not None and args.n not in (2 ** args.m, 2 ** args.m - 1):
        raise UsageError(f"--n must be 2^m or 2^m-1 for m={args.m}")


def cmd_analyze(args, argv) -> int:
    if not 2 <= args.m <= 16:
        raise UsageError("--m must lie in [2, 16]")
    if args.t < 0 or args.kappa < 1:
        raise UsageError("need --t >= 0 and --kappa >= 1")
    if not 0 < args.eps_from <= args.eps_to < 0.5:
        raise UsageError("need 0 < --eps-from <= --eps-to < 0.5")
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    _normalize_n(args)
    if args.quantity == "pud":
        func, label = p_ud, "pud"
    elif args.method == "binomial":
        func, label = p_mf_binomial, "pmf"
    else:
        def func(point):
            return p_mf_exponent(point, strict=args.strict)
        label = "pmf"
    base = AnalysisPoint.for_code(args.m, args.t, args.kappa, args.eps_from)
    results = sweep(func, base, log_eps_grid(args.eps_from, args.eps_to, args.points))
    rows = []
    for eps, lp in results:
        if lp is None:
            rows.append({"eps": f"{eps:.6e}", f"log2_{label}": "nan", f"{label}_sci": "nan"})
        else:
            rows.append({"eps": f"{eps:.6e}", f"log2_{label}": f"{lp.log2:.9f}", f"{label}_sci": lp.sci()})
    extra = [("n", base.n), ("method", args.method if label == "pmf" else "binomial")]
    try:
        peak_eps, peak_lp = peak(results)
        extra += [("peak_eps", f"{peak_eps:.6e}"), ("peak", peak_lp.sci())]
    except ValueError:
        extra += [("peak", "none")]
    _emit(args, _header(argv, extra), ["eps", f"log2_{label}", f"{label}_sci"], rows)
    return 0


def cmd_complexity(args, argv) -> int:
    if args.t < 1 or args.kappa < 1 or args.e_max < 1:
        raise UsageError("need --t, --kappa, --e-max >= 1")
    rows = []
    for e in range(1, args.e_max + 1):
        b = complexity_bounds(args.t, e, args.kappa)
        rows.append(dict(e=e, c_esbm=b.c_esbm, c_hv=b.c_hv, c_bm=b.c_bm, c_es3=b.c_es3,
                         reduction_ratio=_fmt(reduction_ratio(args.t, e, args.kappa))))
    _emit(args, _header(argv), ["e", "c_esbm", "c_hv", "c_bm", "c_es3", "reduction_ratio"], rows)
    return 0


def cmd_simulate(args, argv) -> int:
    _check_code_args(args)
    criterion = _criterion(args)
    if not 0 <= args.eps < 0.5:
        raise UsageError("--eps must lie in [0, 0.5)")
    if args.trials < 1 or args.workers < 1:
        raise UsageError("--trials and --workers must be >= 1")
    config = SimConfig(args.m, args.t, criterion, args.eps, args.trials, args.seed, args.workers)
    s = run_trials(config)
    extra = [
        ("seed", args.seed), ("rng", RNG_NAME), ("criterion", criterion),
        ("trials", s.trials), ("malfunctions", s.malfunctions),
        ("detected_failures", s.detected_failures), ("early_stops", s.early_stops),
        ("full_failures", s.full_failures), ("full_miscorrections", s.full_miscorrections),
        ("agreement_rate", _fmt(s.agreement_rate)),
        ("mean_iter_full", _fmt(s.mean_iter_full)), ("mean_iter_es", _fmt(s.mean_iter_es)),
        ("max_iter_es", s.max_iter_es),
    ]
    fields = ["e", "count", "agree", "malfunction", "detected_failure",
              "mean_iter_full", "mean_iter_es", "mean_muls_full", "mean_muls_es"]
    rows = [{k: (_fmt(v) if isinstance(v, float) else v) for k, v in r.items()} for r in s.rows()]
    _emit(args, _header(argv, extra), fields, rows)
    return 0


def cmd_exhaust(args, argv) -> int:
    _check_code_args(args)
    criterion = _criterion(args)
    if 2 ** args.m - 1 > 31:
        raise UsageError("exhaustive enumeration is limited to m <= 5")
    if not 0 <= args.max_weight <= 2 ** args.m - 1:
        raise UsageError("--max-weight out of range")
    report = exhaustive_oracle(args.m, args.t, criterion, args.max_weight)
    extra = [
        ("criterion", criterion), ("patterns", report.patterns),
        ("disagreements", len(report.disagreements)),
        ("full_uncorrected_within_t", len(report.full_uncorrected)),
    ]
    fields = ["weight", "patterns", "disagree", "full_failure", "full_miscorrect",
              "es_malfunction", "es_detected_failure", "mean_iter_es", "max_iter_es"]
    rows = [{k: (_fmt(v) if isinstance(v, float) else v) for k, v in r.items()} for r in report.rows()]
    _emit(args, _header(argv, extra), fields, rows)
    if args.details:
        with open(args.details, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["positions", "weight", "stop_iteration", "full_status", "es_status", "d_history"])
            for c in report.disagreements:
                w.writerow([" ".join(map(str, c.positions)), c.weight, c.stop_iteration,
                            c.full_status.value, c.es_status.value,
                            " ".join(f"{d:x}" for d in c.d_history)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="esbch", description="BCH decoding with early-stopped Berlekamp-Massey")
    sub = p.add_subparsers(dest="command", required=True)

    def code_args(sp, poly=True):
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--t", type=int, required=True)
        if poly:
            sp.add_argument("--poly", help="primitive polynomial in hex (default: built-in table)")

    def criterion_args(sp):
        sp.add_argument("--criterion", choices=["full", "es1", "es2", "es3"], default="full")
        sp.add_argument("--kappa", type=int)

    sp = sub.add_parser("tables", help="dump exp table of GF(2^m) as CSV")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--poly")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("codeinfo", help="print BCH code parameters")
    code_args(sp)
    sp.set_defaults(func=cmd_codeinfo)

    sp = sub.add_parser("decode", help="decode one received word given in hex (bit i = x^i)")
    code_args(sp)
    criterion_args(sp)
    sp.add_argument("--hex", required=True)
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("analyze", help="sweep malfunction / undetected-error estimates over eps")
    sp.add_argument("quantity", choices=["pmf", "pud"])
    code_args(sp, poly=False)
    sp.add_argument("--kappa", type=int, default=1)
    sp.add_argument("--n", type=int, help="code length label; 2^m and 2^m-1 both map to 2^m-1")
    sp.add_argument("--method", choices=["exponent", "binomial"], default="exponent")
    sp.add_argument("--strict", action="store_true",
                    help="leave eps outside the exponent bound's validity region undefined")
    sp.add_argument("--eps-from", type=float, default=1e-4)
    sp.add_argument("--eps-to", type=float, default=1e-1)
    sp.add_argument("--points", type=int, default=200)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("complexity", help="multiplicative complexity bounds over e")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--kappa", type=int, required=True)
    sp.add_argument("--e-max", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_complexity)

    sp = sub.add_parser("simulate", help="BSC Monte Carlo of full vs early-stopped decoding")
    code_args(sp, poly=False)
    criterion_args(sp)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("exhaust", help="decode every error pattern up to a weight (n <= 31)")
    code_args(sp, poly=False)
    criterion_args(sp)
    sp.add_argument("--max-weight", type=int, required=True)
    sp.add_argument("--out")
    sp.add_argument("--details", help="CSV file for disagreeing patterns")
    sp.set_defaults(func=cmd_exhaust)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args, argv)
    except UsageError as exc:
        print(f"esbch: error: {exc}", file=sys.stderr)
        return 2
    except (GaloisError, ValueError, ArithmeticError, OSError) as exc:
        print(f"esbch: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
