"""Discrete fractional operators on uniform grids.

The Riemann-Liouville integral uses the product-trapezoidal rule (exact for
piecewise-linear integrands); the Caputo derivative of order alpha < 1 uses
the L1 scheme, with an exact switch to second-order finite differences at
alpha = 1.  Node 0 is the empty integral and is returned as 0 for the
fractional branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, ShapeError
from .special import gamma

__all__ = [
    "TimeGrid",
    "SampleSeries",
    "FracOrder",
    "rl_weights",
    "l1_weights",
    "rl_integral",
    "caputo_l1",
    "caputo_power_oracle",
]


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t0 + j*h for j = 0..n_steps."""

    t0: float
    h: float
    n_steps: int

    def __post_init__(self):
        if not (math.isfinite(self.t0) and math.isfinite(self.h) and self.h > 0.0):
            raise DomainError(f"TimeGrid requires finite t0 and h > 0, got {self}")
        if self.n_steps < 1:
            raise ShapeError(f"TimeGrid requires n_steps >= 1, got {self.n_steps}")

    @property
    def n_nodes(self) -> int:
        return self.n_steps + 1

    @property
    def t_end(self) -> float:
        return self.t0 + self.h * self.n_steps

    def nodes(self) -> np.ndarray:
        return self.t0 + self.h * np.arange(self.n_nodes)

    def halved(self) -> "TimeGrid":
        """Same interval at half the step."""
        return TimeGrid(self.t0, self.h / 2.0, 2 * self.n_steps)


@dataclass(frozen=True)
class SampleSeries:
    """Real samples of a scalar function on a TimeGrid.

    `source`, when present, is the vectorized t -> value map the samples came
    from; it is what makes refinement under grid halving possible.
    """

    grid: TimeGrid
    values: np.ndarray
    source: Callable[[np.ndarray], np.ndarray] | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.n_nodes,):
            raise ShapeError(
                f"series needs {self.grid.n_nodes} values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise DomainError("series values must all be finite")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, grid: TimeGrid, fn: Callable[[np.ndarray], np.ndarray]) -> "SampleSeries":
        return cls(grid, np.asarray(fn(grid.nodes()), dtype=float), source=fn)

    def resampled(self, grid: TimeGrid) -> "SampleSeries":
        if self.source is None:
            raise ShapeError("series has no source function; cannot resample")
        return SampleSeries.from_function(grid, self.source)


@dataclass(frozen=True)
class FracOrder:
    """Fractional differentiation order restricted to (0, 1]."""

    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha <= 1.0):
            raise DomainError(f"FracOrder.alpha must be in (0, 1], got {self.alpha!r}")


def rl_weights(mu: float, n_steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Product-trapezoidal weights for the order-mu RL integral.

    Returns (a0, body): a0[k] weights f_0 at node k (k = 0..n), and body[m]
    weights f_{k-m} for 1 <= m <= k-1; the newest sample f_k has weight 1.
    All are to be scaled by h^mu / Gamma(mu + 2).
    """
    if mu <= 0.0 or not math.isfinite(mu):
        raise DomainError(f"rl integral order must be > 0, got {mu!r}")
    a0 = np.zeros(n_steps + 1)
    k = np.arange(1, n_steps + 1, dtype=float)
    a0[1:] = (k - 1.0) ** (mu + 1.0) - k**mu * (k - mu - 1.0)
    body = np.zeros(max(n_steps, 1))
    m = np.arange(1, n_steps, dtype=float)
    body[1:] = (m + 1.0) ** (mu + 1.0) + (m - 1.0) ** (mu + 1.0) - 2.0 * m ** (mu + 1.0)
    return a0, body


def rl_integral(f: SampleSeries, mu: float) -> SampleSeries:
    """Riemann-Liouville fractional integral of order mu on f's grid.

    Discretizes (1/Gamma(mu)) * integral of (t - tau)^(mu-1) f(tau) by the
    product-trapezoidal rule; node 0 is exactly 0 and the error is O(h^2)
    for twice-differentiable f.
    """
    grid = f.grid
    n = grid.n_steps
    a0, body = rl_weights(mu, n)
    scale = grid.h**mu / gamma(mu + 2.0)
    vals = f.values
    out = np.zeros(n + 1)
    # node k >= 1: scale * (a0[k] f_0 + sum_{j=1}^{k-1} body[k-j] f_j + f_k)
    out[1:] = a0[1:] * vals[0] + vals[1:]
    if n >= 2:
        conv = np.convolve(body[1:], vals[1:n])
        out[2:] += conv[: n - 1]
    out *= scale
    return SampleSeries(grid, out)


def l1_weights(alpha: float, n_steps: int) -> np.ndarray:
    """L1 kernel W[m] = m^(1-alpha) - (m-1)^(1-alpha) for m = 1..n_steps.

    Entry 0 is unused (set to 0); scale sums by h^(-alpha) / Gamma(2 - alpha).
    """
    m = np.arange(n_steps + 1, dtype=float)
    w = m ** (1.0 - alpha)
    out = np.empty_like(w)
    out[0] = 0.0
    out[1:] = w[1:] - w[:-1]
    return out


def caputo_l1(f: SampleSeries, order: FracOrder) -> SampleSeries:
    """Caputo fractional derivative of f on its grid.

    For alpha < 1 this is the L1 discretization (node 0 defined as 0); at
    alpha = 1 exactly it returns centered differences at interior nodes and
    one-sided second-order differences at the two ends.
    """
    grid = f.grid
    n = grid.n_steps
    if grid.n_nodes < 2:
        raise ShapeError("caputo_l1 needs at least 2 nodes")
    vals = f.values
    alpha = order.alpha
    if alpha == 1.0:
        out = np.empty(n + 1)
        h = grid.h
        if n == 1:
            out[0] = (vals[1] - vals[0]) / h
            out[1] = out[0]
        else:
            out[1:-1] = (vals[2:] - vals[:-2]) / (2.0 * h)
            out[0] = (-3.0 * vals[0] + 4.0 * vals[1] - vals[2]) / (2.0 * h)
            out[-1] = (3.0 * vals[-1] - 4.0 * vals[-2] + vals[-3]) / (2.0 * h)
        return SampleSeries(grid, out)
    w = l1_weights(alpha, n)
    d = np.diff(vals)
    scale = grid.h ** (-alpha) / gamma(2.0 - alpha)
    out = np.zeros(n + 1)
    conv = np.convolve(w[1:], d)
    out[1:] = scale * conv[:n]
    return SampleSeries(grid, out)


def caputo_power_oracle(p: float, order: FracOrder, t: float, t0: float) -> float:
    """Exact Caputo derivative of (t - t0)^p: Gamma(p+1)/Gamma(p+1-alpha) * (t-t0)^(p-alpha)."""
    if p < 1.0:
        raise DomainError(f"power-rule oracle requires p >= 1, got {p!r}")
    if t < t0:
        raise DomainError(f"oracle requires t >= t0, got t={t}, t0={t0}")
    alpha = order.alpha
    s = p + 1.0 - alpha
    if s <= 0.0 and s == math.floor(s):
        raise DomainError(f"Gamma pole at p+1-alpha = {s}")
    coeff = gamma(p + 1.0) / gamma(s)
    if t == t0:
        return 0.0 if p > alpha else coeff
    return coeff * (t - t0) ** (p - alpha)
