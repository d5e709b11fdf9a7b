"""Command-line entry point: ``nbdisc {sample,metric,bench,repro-fig1}``.

Exit codes: 0 success, 2 usage error, 3 data error, 4 reproduction-search
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import benchmark
from .benford import (
    DEFAULT_JOINT_MODE,
    JOINT_MODES,
    DesignError,
    as_design,
    nbd_flat,
    nbd_joint,
)
from .discrepancy import FIG1_TARGETS, SearchError, centered_l2_squared, find_fig1_designs
from .samplers import KINDS, SamplerSpec, sample

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_SEARCH = 4

FIG1_JOINT_TARGETS = (0.0321, 0.0406)
FIG1_FLAT_TARGET = 0.0693


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# design files
# ---------------------------------------------------------------------------

def format_design(design: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in design:
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def parse_design(text: str) -> np.ndarray:
    rows = []
    width = None
    for i, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise CliError(f"row {i}: expected {width} columns, got {len(row)}", EXIT_DATA)
        values = []
        for j, cell in enumerate(row, start=1):
            try:
                v = float(cell)
            except ValueError:
                raise CliError(f"row {i}, column {j}: cannot parse {cell.strip()!r}",
                               EXIT_DATA) from None
            if not np.isfinite(v) or not 0.0 <= v < 1.0:
                raise CliError(f"row {i}, column {j}: value {cell.strip()} outside [0, 1)",
                               EXIT_DATA)
            values.append(v)
        rows.append(values)
    if not rows:
        raise CliError("empty design", EXIT_DATA)
    return as_design(rows)


def _write_atomic(files: dict[Path, str]) -> None:
    """Write every file or none: stage in temporaries, then rename."""
    staged = []
    try:
        for path, content in files.items():
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
            with os.fdopen(fd, "w", newline="\n", encoding="utf-8") as fh:
                fh.write(content)
            staged.append((tmp, path))
    except BaseException:
        for tmp, _ in staged:
            os.unlink(tmp)
        raise
    for tmp, path in staged:
        os.replace(tmp, path)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        _write_atomic({Path(out): text})


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_sample(args) -> int:
    try:
        spec = SamplerSpec(args.kind, args.n, args.d, seed=args.seed,
                           scramble=args.scramble, centered=args.centered)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    _emit(format_design(sample(spec)), args.out)
    return 0


def cmd_metric(args) -> int:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise CliError(f"cannot read {args.input}: {exc.strerror}", EXIT_DATA) from None
    design = parse_design(text)
    try:
        if args.metric == "nbd-flat":
            value = nbd_flat(design).value
        elif args.metric == "nbd-joint":
            value = nbd_joint(design, args.joint_mode).value
        else:
            value = centered_l2_squared(design).value
    except DesignError as exc:
        raise CliError(str(exc), EXIT_DATA) from None
    print(f"{value:.6g}")
    return 0


def _int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _name_list(choices):
    def parse(text: str) -> list[str]:
        names = [tok.strip() for tok in text.split(",") if tok.strip()]
        bad = [n for n in names if n not in choices]
        if bad or not names:
            raise argparse.ArgumentTypeError(
                f"expected a comma-separated subset of {','.join(choices)}, got {text!r}")
        return names
    return parse


def _check_specs(kinds, ns, d):
    for kind in kinds:
        for n in ns:
            try:
                SamplerSpec(kind, n, d)
            except ValueError as exc:
                raise CliError(f"{kind}: {exc}", EXIT_USAGE) from None


def cmd_bench_convergence(args) -> int:
    if args.ns != sorted(set(args.ns)):
        raise CliError("--ns must be strictly ascending", EXIT_USAGE)
    if "nbd_joint" in args.metrics and args.d < 2:
        raise CliError("nbd_joint requires --d ≥ 2", EXIT_USAGE)
    if args.reps < 1:
        raise CliError("--reps must be ≥ 1", EXIT_USAGE)
    _check_specs(args.samplers, args.ns, args.d)
    records = benchmark.convergence_study(
        args.samplers, args.ns, args.d, args.reps, base_seed=args.seed,
        metrics=args.metrics, joint_mode=args.joint_mode, workers=args.workers,
    )
    summaries = benchmark.summarize(records)
    out = Path(args.out)
    _write_atomic({
        out / "records.csv": benchmark.records_csv(records),
        out / "summaries.csv": benchmark.summaries_csv(summaries),
    })
    if args.svg:
        from .plotting import plot_convergence
        plot_convergence(summaries, out / "convergence.svg")
    _print_summaries(summaries)
    return 0


def cmd_bench_digits(args) -> int:
    if args.reps < 1:
        raise CliError("--reps must be ≥ 1", EXIT_USAGE)
    _check_specs(args.samplers, [args.n], args.d)
    records, rows = benchmark.digits_study(args.samplers, args.n, args.d, args.reps,
                                           base_seed=args.seed)
    summaries = benchmark.summarize(records)
    out = Path(args.out)
    _write_atomic({
        out / "records.csv": benchmark.records_csv(records),
        out / "summaries.csv": benchmark.summaries_csv(summaries),
        out / "digit_errors.csv": benchmark.digit_errors_csv(rows),
    })
    if args.svg:
        from .plotting import plot_digits
        plot_digits(rows, out / "digits.svg")
    _print_summaries(summaries)
    return 0


def _print_summaries(summaries) -> None:
    print(f"{'metric':<10} {'sampler':<7} {'n':>6} {'mean':>11} {'median':>11}")
    for s in summaries:
        print(f"{s.metric:<10} {s.sampler:<7} {s.n_points:>6} {s.mean:>11.4g} {s.median:>11.4g}")


def fig1_report():
    """Rows ``(quantity, design, target, computed, tolerance, ok)`` for the LHS pair."""
    found = find_fig1_designs()
    rows = []
    for label, design, cd_target in (("good", found.good, FIG1_TARGETS[0]),
                                     ("bad", found.bad, FIG1_TARGETS[1])):
        rows.append(("cd2", label, cd_target, centered_l2_squared(design).value, 5e-4))
        rows.append(("nbd-flat", label, FIG1_FLAT_TARGET, nbd_flat(design).value, 5e-4))
    for mode in JOINT_MODES:
        for label, design, target in (("good", found.good, FIG1_JOINT_TARGETS[0]),
                                      ("bad", found.bad, FIG1_JOINT_TARGETS[1])):
            rows.append((f"nbd-joint[{mode}]", label, target,
                         nbd_joint(design, mode).value, 1e-3))
    rows = [(*r, abs(r[3] - r[2]) <= r[4]) for r in rows]
    return found, rows


def cmd_repro_fig1(args) -> int:
    try:
        found, rows = fig1_report()
    except SearchError as exc:
        raise CliError(str(exc), EXIT_SEARCH) from None
    print(f"good design: second column permutation {found.good_perm}")
    print(f"bad design:  second column permutation {found.bad_perm}")
    print()
    print(f"{'quantity':<30} {'design':<6} {'target':>8} {'computed':>10} {'tol':>7}  status")
    for q, label, target, value, tol, ok in rows:
        print(f"{q:<30} {label:<6} {target:>8.4f} {value:>10.6g} {tol:>7.0e}  "
              f"{'PASS' if ok else 'FAIL'}")
    values = {(r[0], r[1]): r[3] for r in rows}
    print()
    print(f"nbd-flat equal for both designs: "
          f"{values[('nbd-flat', 'good')] == values[('nbd-flat', 'bad')]}")
    cd_order = values[("cd2", "good")] < values[("cd2", "bad")]
    print(f"cd2 ranks good < bad: {cd_order}")
    for mode in JOINT_MODES:
        q = f"nbd-joint[{mode}]"
        print(f"{q} ordering matches cd2: "
              f"{(values[(q, 'good')] < values[(q, 'bad')]) == cd_order}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbdisc",
        description="Newcomb-Benford discrepancy of designs of experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="generate a design as headerless CSV")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--d", type=int, required=True, help="number of dimensions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scramble", action="store_true", help="sobol: random digital shift")
    p.add_argument("--centered", action="store_true", help="lhs: stratum midpoints")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("metric", help="evaluate a metric on a design file")
    p.add_argument("input", help="design CSV, or - for stdin")
    p.add_argument("--metric", choices=("nbd-flat", "nbd-joint", "cd2"), default="nbd-flat")
    p.add_argument("--joint-mode", choices=JOINT_MODES, default=DEFAULT_JOINT_MODE)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("bench", help="replicated sampler studies")
    bench = p.add_subparsers(dest="study", required=True)

    c = bench.add_parser("convergence", help="metrics against number of points")
    c.add_argument("--ns", type=_int_list, default=[32, 64, 128, 256, 512, 1024, 2048, 4096])
    c.add_argument("--d", type=int, default=10)
    c.add_argument("--reps", type=int, default=99)
    c.add_argument("--samplers", type=_name_list(KINDS), default=["mc", "sobol"])
    c.add_argument("--metrics", type=_name_list(benchmark.METRICS),
                   default=["nbd_flat", "nbd_joint"])
    c.add_argument("--joint-mode", choices=JOINT_MODES, default=DEFAULT_JOINT_MODE)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--workers", type=int, default=None)
    c.add_argument("--out", default=".", help="output directory")
    c.add_argument("--svg", action="store_true", help="also render convergence.svg")
    c.set_defaults(func=cmd_bench_convergence)

    g = bench.add_parser("digits", help="per-dimension digit conformance")
    g.add_argument("--n", type=int, default=32)
    g.add_argument("--d", type=int, default=10)
    g.add_argument("--reps", type=int, default=99)
    g.add_argument("--samplers", type=_name_list(KINDS), default=["mc", "sobol"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=".", help="output directory")
    g.add_argument("--svg", action="store_true", help="also render digits.svg")
    g.set_defaults(func=cmd_bench_digits)

    p = sub.add_parser("repro-fig1", help="recover the permuted 6-point LHS pair")
    p.set_defaults(func=cmd_repro_fig1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"nbdisc: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
