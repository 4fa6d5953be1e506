"""Command-line front end.

Subcommands: `simulate <config>`, `check <config>`, `reproduce <1|2|3>`,
`convergence <config>`, `plotscript <trajectory.csv>`.  Exit codes are a
stable contract: 0 success, 1 usage/config error, 2 divergence, 3 I/O
error, 4 unknown check name.  FRACSTAB_OUT sets the default output
directory.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import RunConfig, load_config
from .errors import ConfigError, DivergenceError, FracstabError
from .inequalities import SUITE_NAMES, IdentityResidual, run_suite
from .presets import get_preset, run_preset
from .reporting import (
    fmt,
    gnuplot_script,
    write_report_csv,
    write_stability_report,
    write_trajectory_csv,
)
from .solver import convergence_study, solve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIVERGENCE = 2
EXIT_IO = 3
EXIT_UNKNOWN_CHECK = 4


def _outdir(config_output: str | None, flag_output: str | None = None) -> Path:
    path = flag_output or config_output or os.environ.get("FRACSTAB_OUT") or "."
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise _IOFailure(f"cannot create output directory {out}: {exc}") from exc
    return out


class _IOFailure(Exception):
    pass


def cmd_simulate(config: RunConfig, out_flag: str | None = None) -> int:
    out = _outdir(config.output, out_flag)
    try:
        traj = solve(config.system, config.grid)
    except DivergenceError as exc:
        print(f"divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    try:
        write_trajectory_csv(out / "trajectory.csv", traj)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {out / 'trajectory.csv'} ({traj.grid.n_nodes} rows)")
    return EXIT_OK


def cmd_check(config: RunConfig, out_flag: str | None = None) -> int:
    if not config.checks:
        print("config lists no checks", file=sys.stderr)
        return EXIT_USAGE
    for name, _ in config.checks:
        if name not in SUITE_NAMES:
            print(f"unknown check {name!r}; known: {', '.join(SUITE_NAMES)}", file=sys.stderr)
            return EXIT_UNKNOWN_CHECK
    out = _outdir(config.output, out_flag)
    summary_lines = []
    all_ok = True
    try:
        for name, count in config.checks:
            result = run_suite(name, count, seed=config.seed)
            suite_dir = out / name
            suite_dir.mkdir(parents=True, exist_ok=True)
            for i, rep in enumerate(result.reports):
                if isinstance(rep, IdentityResidual):
                    (suite_dir / f"instance_{i:04d}.csv").write_text(
                        "max_residual,scale,relative\n"
                        f"{fmt(rep.max_residual)},{fmt(rep.scale)},{fmt(rep.relative)}\n"
                    )
                else:
                    write_report_csv(suite_dir / f"instance_{i:04d}.csv", rep)
            line = f"{name},{result.instances},{result.passes},{fmt(result.max_violation)}"
            summary_lines.append(line)
            print(line)
            all_ok &= result.all_passed
        (out / "check_summary.csv").write_text(
            "name,instances,passes,max_violation\n" + "\n".join(summary_lines) + "\n"
        )
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if all_ok else EXIT_USAGE


def cmd_reproduce(example_id: str, out_flag: str | None, phi: str | None) -> int:
    try:
        preset = get_preset(f"example{example_id}", phi_text=phi)
    except FracstabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = _outdir(None, out_flag)
    try:
        traj, report = run_preset(preset)
    except DivergenceError as exc:
        print(f"divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    try:
        write_trajectory_csv(out / "trajectory.csv", traj)
        write_stability_report(out, report)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    print((out / "stability_summary.txt").read_text(), end="")
    return EXIT_OK if report.all_passed else EXIT_USAGE


def cmd_convergence(config: RunConfig, out_flag: str | None = None) -> int:
    if len(config.h_list) < 2:
        print("config needs h_list with at least 2 decreasing steps", file=sys.stderr)
        return EXIT_USAGE
    out = _outdir(config.output, out_flag)
    try:
        study = convergence_study(config.system, config.grid.t_end, config.h_list)
    except DivergenceError as exc:
        print(f"divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    try:
        lines = ["h,max_error"] + [f"{fmt(h)},{fmt(e)}" for h, e in study.entries]
        lines.append(f"fitted_order,{fmt(study.fitted_order)}")
        (out / "convergence.csv").write_text("\n".join(lines) + "\n")
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"fitted order: {study.fitted_order:.3f}")
    return EXIT_OK


def cmd_plotscript(csv_path: str, out_flag: str | None = None) -> int:
    csv = Path(csv_path)
    try:
        header = csv.read_text().splitlines()[0]
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    dim = max(1, len(header.split(",")) - 1)
    script = gnuplot_script(csv.name, dim)
    target = Path(out_flag) if out_flag else csv.with_suffix(".gp")
    try:
        target.write_text(script)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {target}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracstab",
        description="Fractional-order solver and inequality/stability certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="solve the configured system, write trajectory.csv")
    p.add_argument("config")
    p.add_argument("--out", default=None)

    p = sub.add_parser("check", help="run configured inequality suites")
    p.add_argument("config")
    p.add_argument("--out", default=None)

    p = sub.add_parser("reproduce", help="run a built-in example with its certificates")
    p.add_argument("example", choices=["1", "2", "3"])
    p.add_argument("--out", default=None)
    p.add_argument("--phi", default=None, help="plug-in envelope for example 3")

    p = sub.add_parser("convergence", help="self-convergence study for the configured system")
    p.add_argument("config")
    p.add_argument("--out", default=None)

    p = sub.add_parser("plotscript", help="emit a gnuplot script for a trajectory CSV")
    p.add_argument("csv")
    p.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        if args.command == "reproduce":
            return cmd_reproduce(args.example, args.out, args.phi)
        if args.command == "plotscript":
            return cmd_plotscript(args.csv, args.out)
        config = load_config(Path(args.config))
        if args.command == "simulate":
            return cmd_simulate(config, args.out)
        if args.command == "check":
            return cmd_check(config, args.out)
        if args.command == "convergence":
            return cmd_convergence(config, args.out)
    except _IOFailure as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FracstabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unhandled command {args.command}")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
