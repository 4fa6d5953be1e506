"""Adams-Bashforth-Moulton predictor-corrector for Caputo systems.

Solves D^alpha x = f(t, x), x(t0) = x0 with commensurate order
alpha in (0, 1] in PECE form: fractional-rectangle prediction, one
product-trapezoidal correction per step, full history sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError, EvalError, ShapeError
from .expressions import Expr, evaluate, max_state_index, parse, to_text, variables
from .operators import FracOrder, SampleSeries, TimeGrid
from .special import gamma

__all__ = ["SystemDef", "Trajectory", "solve", "ConvergenceStudy", "convergence_study"]

# States beyond this magnitude abort the run; nonlinear presets blow up fast
# once they leave the basin and the history sums then poison every later step.
OVERFLOW_LIMIT = 1e12


@dataclass(frozen=True)
class SystemDef:
    """A fractional-order system: dimension, order, RHS expressions, x0."""

    dim: int
    order: FracOrder
    rhs: tuple[Expr, ...]
    x0: np.ndarray
    label: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ShapeError(f"dim must be >= 1, got {self.dim}")
        rhs = tuple(self.rhs)
        x0 = np.asarray(self.x0, dtype=float)
        if len(rhs) != self.dim or x0.shape != (self.dim,):
            raise ShapeError(
                f"need {self.dim} rhs expressions and initial values, "
                f"got {len(rhs)} and {x0.shape}"
            )
        if not np.all(np.isfinite(x0)):
            raise DomainError("x0 must be finite")
        for i, e in enumerate(rhs):
            if max_state_index(e) > self.dim:
                raise ShapeError(
                    f"rhs{i + 1} references x{max_state_index(e)} beyond dim {self.dim}"
                )
            if "r" in variables(e):
                raise ShapeError(f"rhs{i + 1} must not use the class-K variable 'r'")
        x0 = x0.copy()
        x0.flags.writeable = False
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "x0", x0)

    @classmethod
    def from_strings(cls, dim, alpha, rhs_texts, x0, label="") -> "SystemDef":
        return cls(dim, FracOrder(alpha), tuple(parse(s) for s in rhs_texts), np.asarray(x0, float), label)


@dataclass(frozen=True)
class Trajectory:
    """Solver output: one SampleSeries per component on a shared grid."""

    grid: TimeGrid
    states: tuple[SampleSeries, ...]
    system: SystemDef

    @property
    def dim(self) -> int:
        return len(self.states)

    def matrix(self) -> np.ndarray:
        """(n_nodes, dim) array of states."""
        return np.column_stack([s.values for s in self.states])

    def norms(self) -> np.ndarray:
        """Euclidean norm of the state at each node."""
        return np.sqrt(np.sum(self.matrix() ** 2, axis=1))


def _rhs_at(system: SystemDef, t: float, x: np.ndarray) -> np.ndarray:
    out = np.empty(system.dim)
    for i, e in enumerate(system.rhs):
        try:
            out[i] = evaluate(e, t=t, x=tuple(x))
        except EvalError as exc:
            raise EvalError(f"rhs{i + 1} failed at t={t:.17g}: {exc}", to_text(e)) from exc
    return out


def solve(system: SystemDef, grid: TimeGrid) -> Trajectory:
    """Integrate the system over the grid with the PECE scheme.

    Per step, component-wise: predict with weights
    b_{j,k+1} = (h^a/a)((k+1-j)^a - (k-j)^a), then correct once with the
    product-trapezoid weights a_{j,k+1}; the RHS history is evaluated at
    corrected states.  Raises DivergenceError once any |x_i| leaves the
    finite range, carrying the last valid step.
    """
    alpha = system.order.alpha
    h = grid.h
    n = grid.n_steps
    ts = grid.nodes()

    m = np.arange(n + 2, dtype=float)
    pows_a = m**alpha
    b_lag = pows_a[1:] - pows_a[:-1]  # b_lag[m-1] = m^a - (m-1)^a, m >= 1
    pows_a1 = m ** (alpha + 1.0)
    a_lag = np.zeros(n + 1)  # a_lag[m] = (m+1)^(a+1) + (m-1)^(a+1) - 2 m^(a+1)
    if n >= 1:
        mm = np.arange(1, n + 1)
        a_lag[1:] = pows_a1[mm + 1] + pows_a1[mm - 1] - 2.0 * pows_a1[mm]
    k_arr = np.arange(n, dtype=float)
    a_first = k_arr ** (alpha + 1.0) - (k_arr - alpha) * (k_arr + 1.0) ** alpha

    scale_p = h**alpha / gamma(alpha + 1.0)
    scale_c = h**alpha / gamma(alpha + 2.0)

    x0 = system.x0.copy()
    states = np.empty((n + 1, system.dim))
    fhist = np.empty((n + 1, system.dim))
    states[0] = x0
    fhist[0] = _rhs_at(system, ts[0], states[0])

    for k in range(n):
        hist = fhist[k::-1]  # rows k, k-1, ..., 0: lag order
        pred = x0 + scale_p * (b_lag[: k + 1] @ hist)
        if not np.all(np.isfinite(pred)):
            raise DivergenceError(
                f"predictor left the finite range at step {k + 1}", last_step=k
            )
        f_pred = _rhs_at(system, ts[k + 1], pred)
        tail = a_lag[1 : k + 1] @ hist[: k] if k >= 1 else 0.0
        corr = x0 + scale_c * (f_pred + a_first[k] * fhist[0] + tail)
        if not np.all(np.isfinite(corr)) or np.any(np.abs(corr) > OVERFLOW_LIMIT):
            raise DivergenceError(
                f"state exceeded {OVERFLOW_LIMIT:g} at step {k + 1} "
                f"(t = {ts[k + 1]:.6g})",
                last_step=k,
            )
        states[k + 1] = corr
        fhist[k + 1] = _rhs_at(system, ts[k + 1], corr)

    series = tuple(SampleSeries(grid, states[:, i]) for i in range(system.dim))
    return Trajectory(grid, series, system)


@dataclass(frozen=True)
class ConvergenceStudy:
    """Self-convergence errors against a reference at h_ref = min(h)/4."""

    entries: tuple[tuple[float, float], ...]  # (h, max shared-node error)
    fitted_order: float


def convergence_study(system: SystemDef, t_end: float, h_list) -> ConvergenceStudy:
    """Measure the observed order on [0, t_end] over decreasing steps.

    For smooth fields the expected order is about min(2, 1 + alpha).
    Nodes are compared where the coarse grid lands on reference nodes,
    restricted to t >= 0.1 * t_end: solutions carry a t^alpha layer at the
    origin that caps the order there, the same convention the discrete
    operators use.
    """
    h_list = [float(h) for h in h_list]
    if len(h_list) < 2 or any(h2 >= h1 for h1, h2 in zip(h_list, h_list[1:])):
        raise DomainError("h_list must be decreasing with at least 2 entries")
    h_ref = min(h_list) / 4.0
    try:
        ref = solve(system, TimeGrid(0.0, h_ref, round(t_end / h_ref)))
    except DivergenceError as exc:
        raise DivergenceError(f"divergence at h={h_ref:g} (reference): {exc}", exc.last_step) from exc
    ref_m = ref.matrix()

    entries = []
    for h in h_list:
        try:
            traj = solve(system, TimeGrid(0.0, h, round(t_end / h)))
        except DivergenceError as exc:
            raise DivergenceError(f"divergence at h={h:g}: {exc}", exc.last_step) from exc
        ratio = h / h_ref
        idx = np.arange(traj.grid.n_nodes) * ratio
        near = np.abs(idx - np.round(idx)) < 1e-6
        near &= traj.grid.nodes() >= 0.1 * t_end
        coarse = traj.matrix()[near]
        fine = ref_m[np.round(idx[near]).astype(int)]
        entries.append((h, float(np.max(np.abs(coarse - fine)))))

    errs = np.array([e for _, e in entries])
    if np.any(errs <= 1e-14):
        order = math.nan  # exact to rounding; no measurable order
    else:
        order = float(np.polyfit(np.log(h_list), np.log(errs), 1)[0])
    return ConvergenceStudy(tuple(entries), order)
