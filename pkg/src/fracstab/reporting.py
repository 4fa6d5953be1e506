"""CSV and text serialization of trajectories and reports.

Floats are printed with 17 significant digits so files round-trip
bit-exactly; nothing volatile (timestamps, hostnames) is written, keeping
repeated runs byte-identical.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .inequalities import IneqReport
from .solver import Trajectory
from .stability import StabilityReport


def fmt(v: float) -> str:
    return f"{float(v):.17g}"


def write_trajectory_csv(path: Path, traj: Trajectory) -> None:
    header = "t," + ",".join(f"x{i + 1}" for i in range(traj.dim))
    ts = traj.grid.nodes()
    m = traj.matrix()
    lines = [header]
    for j in range(traj.grid.n_nodes):
        lines.append(",".join([fmt(ts[j])] + [fmt(v) for v in m[j]]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_trajectory_csv(path: Path) -> tuple[np.ndarray, np.ndarray]:
    """(times, states) as written by write_trajectory_csv."""
    lines = Path(path).read_text().strip().splitlines()
    rows = [[float(c) for c in line.split(",")] for line in lines[1:]]
    data = np.array(rows)
    return data[:, 0], data[:, 1:]


def write_report_csv(path: Path, report: IneqReport) -> None:
    ts = report.slack.grid.nodes()
    lines = ["t,lhs,rhs,slack"]
    for j in range(ts.size):
        lines.append(
            ",".join(fmt(v) for v in (ts[j], report.lhs[j], report.rhs[j], report.slack.values[j]))
        )
    lines.append("verdict,max_violation,tol,refinement_ratio")
    lines.append(
        ",".join(
            [
                "pass" if report.verdict else "fail",
                fmt(report.max_violation),
                fmt(report.tol),
                "nan" if math.isnan(report.refinement_ratio) else fmt(report.refinement_ratio),
            ]
        )
    )
    Path(path).write_text("\n".join(lines) + "\n")


def stability_summary_text(report: StabilityReport) -> str:
    lines = [f"stability report: {report.label}"]
    if report.sandwich is not None:
        s = report.sandwich
        lines.append(
            f"sandwich: {'pass' if s.ok else 'FAIL'} "
            f"worst_slack={fmt(s.worst_slack)} worst_node={s.worst_node}"
        )
    if report.dissipation is not None:
        d = report.dissipation
        lines.append(
            f"dissipation: {'pass' if d.verdict else 'FAIL'} "
            f"max_violation={fmt(d.max_violation)} tol={fmt(d.tol)}"
        )
    if report.envelope is not None:
        e = report.envelope
        lines.append(
            f"ml_envelope: {'pass' if e.verdict else 'FAIL'} max_violation={fmt(e.max_violation)}"
        )
    if report.ball is not None:
        b = report.ball
        lines.append(
            f"ball: {'pass' if b.ok else 'FAIL'} radius={fmt(b.radius)} max_norm={fmt(b.max_norm)}"
        )
    lines.append(f"all_checks: {'pass' if report.all_passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def write_stability_report(outdir: Path, report: StabilityReport) -> None:
    outdir = Path(outdir)
    if report.dissipation is not None:
        write_report_csv(outdir / "dissipation.csv", report.dissipation)
    if report.envelope is not None:
        write_report_csv(outdir / "ml_envelope.csv", report.envelope)
    (outdir / "stability_summary.txt").write_text(stability_summary_text(report))


def gnuplot_script(csv_name: str, dim: int) -> str:
    """A minimal gnuplot script plotting each component from the CSV."""
    plots = ", ".join(
        f"'{csv_name}' using 1:{i + 2} with lines title 'x{i + 1}'" for i in range(dim)
    )
    return (
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        "set xlabel 't'\n"
        f"plot {plots}\n"
    )
