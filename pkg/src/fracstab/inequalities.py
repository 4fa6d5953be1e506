"""Numerical verification of the fractional product/power inequalities.

Each verifier evaluates both sides of an inequality with the discrete L1
Caputo operator and reports per-node slack.  The discrete operator inherits
the sign properties of the exact one (the L1 kernel is positive and
monotone), so violations beyond rounding indicate either broken hypotheses
or operator bugs; violations within the step-size tolerance that shrink
under grid halving are attributed to discretization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DomainError,
    EnvelopeError,
    PreconditionError,
    ShapeError,
    SingularityError,
    UnknownCheckError,
)
from .expressions import Expr, parse, sample_on, to_text
from .operators import FracOrder, SampleSeries, TimeGrid, caputo_l1

__all__ = [
    "EnvelopeSpec",
    "PowerTerm",
    "IneqReport",
    "IdentityResidual",
    "verify_product_decreasing",
    "verify_product_increasing",
    "verify_odd_power_envelope",
    "verify_power_rule",
    "verify_composite",
    "verify_decomposition_nr4",
    "verify_decomposition_nr6",
    "InstanceProfile",
    "generate_instance",
    "SuiteResult",
    "run_suite",
    "SUITE_NAMES",
    "make_report",
]

ENVELOPE_KINDS = ("mono_decreasing", "mono_increasing", "nonneg_decreasing", "positive_decreasing")

# Positive lower bound required of x wherever an exponent below 1 would make
# x^(beta-1) singular at a zero of x.
POWER_FLOOR = 1e-8


@dataclass(frozen=True)
class EnvelopeSpec:
    """A monotone multiplier phi(t), given as an expression in t only."""

    kind: str
    expression: Expr

    def __post_init__(self):
        if self.kind not in ENVELOPE_KINDS:
            raise EnvelopeError(f"unknown envelope kind {self.kind!r}")
        expr = self.expression if isinstance(self.expression, Expr) else parse(self.expression)
        object.__setattr__(self, "expression", expr)

    def sample(self, grid: TimeGrid) -> np.ndarray:
        """Sample on the grid, checking the declared shape holds there."""
        ts = grid.nodes()
        vals = sample_on(self.expression, ts)
        d = np.diff(vals)
        text = to_text(self.expression)
        if self.kind == "mono_increasing":
            if np.any(d < 0.0):
                raise EnvelopeError(f"envelope '{text}' is not increasing on the grid")
        else:
            if np.any(d > 0.0):
                raise EnvelopeError(f"envelope '{text}' is not decreasing on the grid")
        if self.kind == "nonneg_decreasing" and np.any(vals < 0.0):
            raise EnvelopeError(f"envelope '{text}' goes negative on the grid")
        if self.kind == "positive_decreasing" and np.any(vals <= 0.0):
            raise EnvelopeError(f"envelope '{text}' is not positive on the grid")
        return vals


@dataclass(frozen=True)
class PowerTerm:
    """One term c * phi(t)^p * x^beta of a composite candidate.

    beta as a Fraction must have an even numerator (in lowest terms), which
    is what lets x change sign; a float beta >= 1 is allowed when the bound
    series it multiplies is non-negative.
    """

    c: float
    beta: Fraction | float
    p: float = 1.0
    envelope: EnvelopeSpec | None = None

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c >= 0.0):
            raise DomainError(f"coefficient must be >= 0, got {self.c!r}")
        if not (math.isfinite(self.p) and self.p >= 1.0):
            raise DomainError(f"envelope exponent p must be >= 1, got {self.p!r}")
        if isinstance(self.beta, Fraction):
            _validate_even_fraction(self.beta)
        elif not (math.isfinite(self.beta) and self.beta >= 1.0):
            raise DomainError(f"beta must be >= 1, got {self.beta!r}")
        if self.envelope is not None and self.envelope.kind not in (
            "nonneg_decreasing",
            "positive_decreasing",
        ):
            raise DomainError("composite envelopes must be non-negative decreasing")

    @property
    def signed_ok(self) -> bool:
        return isinstance(self.beta, Fraction)


def _validate_even_fraction(beta: Fraction):
    if beta < 1:
        raise DomainError(f"beta must be >= 1, got {beta}")
    if beta.numerator % 2 != 0:
        raise DomainError(
            f"beta = {beta} needs an even numerator in lowest terms for sign-changing x"
        )


def _power(vals: np.ndarray, beta, signed: bool) -> np.ndarray:
    """x^beta; for the even-numerator rational case this is |x|^beta."""
    b = float(beta)
    if signed:
        return np.abs(vals) ** b
    return vals**b


def _power_slope(vals: np.ndarray, beta, signed: bool) -> np.ndarray:
    """beta * x^(beta-1), the derivative factor of the power rule."""
    b = float(beta)
    if b == 1.0:
        return np.ones_like(vals)
    if signed:
        return b * np.sign(vals) * np.abs(vals) ** (b - 1.0)
    return b * vals ** (b - 1.0)


def _require_nonneg(vals: np.ndarray, what: str):
    bad = np.nonzero(vals < 0.0)[0]
    if bad.size:
        raise PreconditionError(f"{what} is negative at node {bad[0]} ({vals[bad[0]]!r})")


def _require_positive(vals: np.ndarray, what: str):
    bad = np.nonzero(vals <= 0.0)[0]
    if bad.size:
        raise PreconditionError(f"{what} is not positive at node {bad[0]} ({vals[bad[0]]!r})")


@dataclass(frozen=True)
class IneqReport:
    """Outcome of one inequality check.

    slack holds RHS - LHS per node (oriented so that >= 0 means the
    inequality holds); the verdict applies the refinement rule: a violation
    above tol passes only if halving the grid shrinks it by at least 1.5x
    and brings it under the halved grid's own tolerance.
    """

    name: str
    slack: SampleSeries
    lhs: np.ndarray
    rhs: np.ndarray
    max_violation: float
    tol: float
    refinement_ratio: float
    verdict: bool
    details: dict = field(default_factory=dict, compare=False)


def _tolerance(grid: TimeGrid, order: FracOrder, rhs: np.ndarray) -> float:
    scale = float(np.max(np.abs(rhs))) if rhs.size else 0.0
    return 10.0 * grid.h ** min(1.0, 2.0 - order.alpha) * scale


def make_report(
    name: str,
    grid: TimeGrid,
    order: FracOrder,
    compute: Callable[[TimeGrid], tuple[np.ndarray, np.ndarray]],
    refinable: bool,
    direction: int = 1,
    details: dict | None = None,
    skip_nodes: int = 0,
) -> IneqReport:
    """Evaluate compute(grid) -> (lhs, rhs), apply the tolerance/refinement policy.

    direction +1 checks LHS <= RHS, -1 checks LHS >= RHS.  skip_nodes
    excludes leading nodes from the verdict (the slack series still reports
    them); used where the operator's node-0 convention makes the comparison
    vacuous.
    """
    lhs, rhs = compute(grid)
    slack = direction * (rhs - lhs)
    viol = max(0.0, -float(np.min(slack[skip_nodes:]))) if slack[skip_nodes:].size else 0.0
    tol = _tolerance(grid, order, rhs)
    ratio = math.nan
    verdict = viol <= tol
    if not verdict and refinable:
        half = grid.halved()
        lhs2, rhs2 = compute(half)
        slack2 = direction * (rhs2 - lhs2)
        viol2 = max(0.0, -float(np.min(slack2[skip_nodes:])))
        tol2 = _tolerance(half, order, rhs2)
        ratio = math.inf if viol2 == 0.0 else viol / viol2
        verdict = ratio >= 1.5 and viol2 <= tol2
    return IneqReport(
        name=name,
        slack=SampleSeries(grid, slack),
        lhs=lhs,
        rhs=rhs,
        max_violation=viol,
        tol=tol,
        refinement_ratio=ratio,
        verdict=verdict,
        details=dict(details or {}),
    )


def _series_at(x: SampleSeries, grid: TimeGrid) -> np.ndarray:
    if grid == x.grid:
        return x.values
    return x.resampled(grid).values


# --- product inequalities ----------------------------------------------------


def verify_product_decreasing(phi: EnvelopeSpec, x: SampleSeries, order: FracOrder) -> IneqReport:
    """D(phi*x) <= phi * D(x) for decreasing phi and non-negative x."""
    _require_nonneg(x.values, "x")
    if phi.kind == "mono_increasing":
        raise EnvelopeError("verify_product_decreasing needs a decreasing envelope")

    def compute(grid: TimeGrid):
        pv = phi.sample(grid)
        xv = _series_at(x, grid)
        _require_nonneg(xv, "x (refined)")
        lhs = caputo_l1(SampleSeries(grid, pv * xv), order).values
        rhs = pv * caputo_l1(SampleSeries(grid, xv), order).values
        return lhs, rhs

    return make_report(
        "product_decreasing", x.grid, order, compute, refinable=x.source is not None
    )


def verify_product_increasing(phi: EnvelopeSpec, x: SampleSeries, order: FracOrder) -> IneqReport:
    """D(phi*x) >= phi * D(x) for increasing phi and non-negative x."""
    _require_nonneg(x.values, "x")
    if phi.kind != "mono_increasing":
        raise EnvelopeError("verify_product_increasing needs an increasing envelope")

    def compute(grid: TimeGrid):
        pv = phi.sample(grid)
        xv = _series_at(x, grid)
        _require_nonneg(xv, "x (refined)")
        lhs = caputo_l1(SampleSeries(grid, pv * xv), order).values
        rhs = pv * caputo_l1(SampleSeries(grid, xv), order).values
        return lhs, rhs

    return make_report(
        "product_increasing",
        x.grid,
        order,
        compute,
        refinable=x.source is not None,
        direction=-1,
    )


def verify_odd_power_envelope(
    phi: EnvelopeSpec, n: int, x: SampleSeries, beta: float, order: FracOrder
) -> IneqReport:
    """D(phi^(2n+1) * x^beta) <= phi^(2n+1) * D(x^beta).

    phi decreasing (sign unrestricted: the odd power preserves monotonicity),
    x >= 0, real beta >= 0.  For beta < 1, x must stay above a small floor
    since x^beta loses differentiability at zeros of x.
    """
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    if not (math.isfinite(beta) and beta >= 0.0):
        raise DomainError(f"beta must be >= 0, got {beta!r}")
    _require_nonneg(x.values, "x")
    if beta < 1.0 and beta != 0.0 and np.min(x.values) < POWER_FLOOR:
        raise SingularityError(
            f"beta={beta} < 1 needs x >= {POWER_FLOOR} everywhere (min is {np.min(x.values)})"
        )
    if phi.kind == "mono_increasing":
        raise EnvelopeError("verify_odd_power_envelope needs a decreasing envelope")
    m = 2 * int(n) + 1

    def compute(grid: TimeGrid):
        pv = phi.sample(grid) ** m
        xv = _series_at(x, grid) ** beta
        lhs = caputo_l1(SampleSeries(grid, pv * xv), order).values
        rhs = pv * caputo_l1(SampleSeries(grid, xv), order).values
        return lhs, rhs

    return make_report(
        "odd_power_envelope", x.grid, order, compute, refinable=x.source is not None
    )


def verify_power_rule(
    x: SampleSeries, beta, order: FracOrder, require_nonneg: bool
) -> IneqReport:
    """D(x^beta) <= beta * x^(beta-1) * D(x).

    With require_nonneg set, beta is any real >= 1 and x must be >= 0; with
    it clear, beta must be a rational with even numerator (x may change
    sign, x^beta meaning |x|^beta).
    """
    if require_nonneg:
        _require_nonneg(x.values, "x")
        if isinstance(beta, Fraction):
            beta = float(beta)
        if not (math.isfinite(beta) and beta >= 1.0):
            raise DomainError(f"beta must be >= 1, got {beta!r}")
        signed = False
    else:
        if not isinstance(beta, Fraction):
            raise DomainError("sign-changing x needs beta as a Fraction with even numerator")
        _validate_even_fraction(beta)
        signed = True

    def compute(grid: TimeGrid):
        xv = _series_at(x, grid)
        lhs = caputo_l1(SampleSeries(grid, _power(xv, beta, signed)), order).values
        rhs = _power_slope(xv, beta, signed) * caputo_l1(SampleSeries(grid, xv), order).values
        return lhs, rhs

    return make_report("power_rule", x.grid, order, compute, refinable=x.source is not None)


# --- composite sums (suites nr7..nr12) ----------------------------------------


def verify_composite(
    terms: Sequence[Sequence[PowerTerm]], x: Sequence[SampleSeries], order: FracOrder
) -> IneqReport:
    """Composite bound: D(sum of all terms) <= termwise power-rule bound.

    terms[i] lists the PowerTerms multiplying x[i] (an enveloped term, a
    plain one, an extra power, in any combination); every term with a float
    beta requires x[i] >= 0, Fraction betas allow sign changes.
    """
    if len(terms) != len(x):
        raise ShapeError(f"need one term group per series, got {len(terms)} and {len(x)}")
    if not x:
        raise ShapeError("composite check needs at least one series")
    grid0 = x[0].grid
    for s in x[1:]:
        if s.grid != grid0:
            raise ShapeError("all series must share one grid")
    for i, group in enumerate(terms):
        for term in group:
            if not term.signed_ok:
                _require_nonneg(x[i].values, f"x[{i}]")

    def compute(grid: TimeGrid):
        total = np.zeros(grid.n_nodes)
        rhs = np.zeros(grid.n_nodes)
        for i, group in enumerate(terms):
            xv = _series_at(x[i], grid)
            dxi = caputo_l1(SampleSeries(grid, xv), order).values
            for term in group:
                weight = term.c * (term.envelope.sample(grid) ** term.p if term.envelope else 1.0)
                total += weight * _power(xv, term.beta, term.signed_ok)
                rhs += weight * _power_slope(xv, term.beta, term.signed_ok) * dxi
        lhs = caputo_l1(SampleSeries(grid, total), order).values
        return lhs, rhs

    refinable = all(s.source is not None for s in x)
    return make_report("composite", grid0, order, compute, refinable=refinable)


# --- proof-identity checks (suites nr4_identity and nr6) ----------------------


@dataclass(frozen=True)
class IdentityResidual:
    """Max pointwise residual of an exact operator-linearity identity."""

    max_residual: float
    scale: float

    @property
    def relative(self) -> float:
        return self.max_residual / self.scale if self.scale else 0.0


def verify_decomposition_nr4(
    phi: EnvelopeSpec, x: SampleSeries, beta: float, order: FracOrder
) -> IdentityResidual:
    """Two-bracket decomposition of the enveloped power rule.

    D(phi x^b) - phi b x^(b-1) Dx
        = [D(phi x^b) - phi D(x^b)] + phi [D(x^b) - b x^(b-1) Dx]
    is exact under operator linearity; the residual must sit at rounding
    level (<= 1e-10 * scale) for every valid input.
    """
    _require_nonneg(x.values, "x")
    if not (math.isfinite(beta) and beta >= 1.0):
        raise DomainError(f"beta must be >= 1, got {beta!r}")
    grid = x.grid
    pv = phi.sample(grid)
    xv = x.values
    xb = xv**beta
    d_prod = caputo_l1(SampleSeries(grid, pv * xb), order).values
    d_pow = caputo_l1(SampleSeries(grid, xb), order).values
    d_x = caputo_l1(SampleSeries(grid, xv), order).values
    slope = _power_slope(xv, beta, signed=False)
    left = d_prod - pv * slope * d_x
    right = (d_prod - pv * d_pow) + pv * (d_pow - slope * d_x)
    pieces = [d_prod, pv * d_pow, pv * slope * d_x]
    scale = max(float(np.max(np.abs(p))) for p in pieces)
    return IdentityResidual(float(np.max(np.abs(left - right))), scale)


def verify_decomposition_nr6(
    phi: EnvelopeSpec, x: SampleSeries, beta: float, order: FracOrder
) -> IneqReport:
    """Component checks of the decomposition behind the nr6 suite.

    With y = phi x^b and psi = 1/phi (positive increasing), the identity
    D(x^b) - b x^(b-1) Dx = f + g holds with
        f = psi [D(phi x^b) - phi b x^(b-1) Dx]   (<= 0 given the hypothesis)
        g = D(psi y) - psi D(y)                    (>= 0 by the increasing-
                                                    envelope product rule)
    Both component signs are checked; the report folds them into one slack
    series min(-f, g) so a violation of either shows up as negative slack.
    """
    _require_positive(x.values, "x")
    if not (math.isfinite(beta) and beta >= 0.0):
        raise DomainError(f"beta must be >= 0, got {beta!r}")
    if phi.kind != "positive_decreasing":
        raise EnvelopeError("verify_decomposition_nr6 needs a positive decreasing envelope")

    def sides(grid: TimeGrid):
        pv = phi.sample(grid)
        xv = _series_at(x, grid)
        _require_positive(xv, "x (refined)")
        psi = 1.0 / pv
        xb = xv**beta
        slope = beta * xv ** (beta - 1.0) if beta > 0.0 else np.zeros_like(xv)
        d_prod = caputo_l1(SampleSeries(grid, pv * xb), order).values
        d_pow = caputo_l1(SampleSeries(grid, xb), order).values
        d_x = caputo_l1(SampleSeries(grid, xv), order).values
        f = psi * (d_prod - pv * slope * d_x)
        g = d_pow - psi * d_prod
        worst = np.maximum(f, -g)  # <= 0 wanted for both components
        scale = float(np.max(np.maximum(np.abs(psi * d_prod), psi * np.abs(pv * slope * d_x))))
        return f, g, worst, scale

    grid = x.grid
    f, g, worst, scale = sides(grid)
    viol = max(0.0, float(np.max(worst)))
    tol = 10.0 * grid.h ** min(1.0, 2.0 - order.alpha) * scale
    ratio = math.nan
    verdict = viol <= tol
    if not verdict and x.source is not None:
        half = grid.halved()
        _, _, worst2, scale2 = sides(half)
        viol2 = max(0.0, float(np.max(worst2)))
        tol2 = 10.0 * half.h ** min(1.0, 2.0 - order.alpha) * scale2
        ratio = math.inf if viol2 == 0.0 else viol / viol2
        verdict = ratio >= 1.5 and viol2 <= tol2
    return IneqReport(
        name="nr6_decomposition",
        slack=SampleSeries(grid, -worst),
        lhs=f,
        rhs=-g,
        max_violation=viol,
        tol=tol,
        refinement_ratio=ratio,
        verdict=verdict,
        details={"components": "lhs holds f(t), rhs holds -g(t); both must stay <= 0"},
    )


# --- randomized instances ------------------------------------------------------

_DEFAULT_GRID = TimeGrid(0.0, 0.01, 500)


@dataclass(frozen=True)
class InstanceProfile:
    """What generate_instance should draw: envelope family, x family, ranges."""

    envelope_kind: str
    x_kind: str  # 'nonneg' | 'positive' | 'signed'
    beta_kind: str = "none"  # 'none' | 'real' | 'nonneg_real' | 'even_rational'
    beta_range: tuple[float, float] = (1.0, 4.0)
    alpha_range: tuple[float, float] = (0.1, 1.0)
    grid: TimeGrid = _DEFAULT_GRID


def _fmt(v: float) -> str:
    return f"({v:.12g})" if v < 0 else f"{v:.12g}"


def _draw_decreasing(rng, kind: str) -> str:
    if kind == "mono_decreasing":
        base = rng.uniform(-1.0, 1.0)
    elif kind == "positive_decreasing":
        base = rng.uniform(0.05, 1.0)
    else:
        base = rng.uniform(0.0, 1.0)
    if rng.random() < 0.5:
        parts = [_fmt(base)]
        for _ in range(rng.integers(1, 4)):
            c = rng.uniform(0.1, 2.0)
            lam = rng.uniform(0.05, 2.0)
            parts.append(f"{_fmt(c)}*exp(-{_fmt(lam)}*t)")
        return " + ".join(parts)
    c = rng.uniform(0.2, 2.0)
    a = rng.uniform(0.1, 2.0)
    m = int(rng.integers(1, 4))
    return f"{_fmt(base)} + {_fmt(c)}/(1 + {_fmt(a)}*t)^{m}"


def _draw_increasing(rng) -> str:
    base = rng.uniform(0.0, 1.0)
    if rng.random() < 0.5:
        c = rng.uniform(0.1, 2.0)
        lam = rng.uniform(0.05, 2.0)
        return f"{_fmt(base)} + {_fmt(c)}*(1 - exp(-{_fmt(lam)}*t))"
    s = rng.uniform(0.05, 1.0)
    return f"{_fmt(base)} + {_fmt(s)}*t"


def _draw_trig_poly(rng) -> str:
    parts = [_fmt(rng.uniform(-1.0, 1.0))]
    degree = int(rng.integers(1, 5))
    for d in range(1, degree + 1):
        a = rng.uniform(-1.0, 1.0)
        b = rng.uniform(-1.0, 1.0)
        parts.append(f"{_fmt(a)}*cos({d}*t)")
        parts.append(f"{_fmt(b)}*sin({d}*t)")
    return " + ".join(parts)


def _draw_x(rng, x_kind: str) -> str:
    q = _draw_trig_poly(rng)
    if x_kind == "signed":
        return q
    shift = rng.uniform(0.2, 1.0) if x_kind == "positive" else rng.uniform(0.0, 0.5)
    return f"({q})^2 + {_fmt(shift)}"


def _draw_alpha(rng, alpha_range) -> float:
    # uniform draw; alpha = 1 (finite differences, no exact discrete sign
    # property) is exercised by targeted tests rather than random suites
    return float(rng.uniform(*alpha_range))


def _draw_even_fraction(rng) -> Fraction:
    while True:
        u = 2 * int(rng.integers(1, 5))
        v = int(rng.choice([1, 3, 5]))
        if u >= v:
            return Fraction(u, v)


def generate_instance(seed: int, profile: InstanceProfile):
    """Deterministic (envelope, x series, beta, order) draw for a profile."""
    rng = np.random.default_rng(seed)
    if profile.envelope_kind == "mono_increasing":
        env_text = _draw_increasing(rng)
    else:
        env_text = _draw_decreasing(rng, profile.envelope_kind)
    envelope = EnvelopeSpec(profile.envelope_kind, parse(env_text))
    x_expr = parse(_draw_x(rng, profile.x_kind))
    x = SampleSeries.from_function(profile.grid, lambda ts: sample_on(x_expr, ts))
    if profile.beta_kind == "none":
        beta = 1.0
    elif profile.beta_kind == "real":
        beta = float(rng.uniform(*profile.beta_range))
    elif profile.beta_kind == "nonneg_real":
        beta = float(rng.uniform(0.0, profile.beta_range[1]))
        if beta < 1.0 and rng.random() < 0.3:
            beta = 0.0  # exercise the degenerate exponent explicitly
    elif profile.beta_kind == "even_rational":
        beta = _draw_even_fraction(rng)
    else:
        raise DomainError(f"unknown beta_kind {profile.beta_kind!r}")
    order = FracOrder(_draw_alpha(rng, profile.alpha_range))
    return envelope, x, beta, order


PROFILES = {
    "nr1": InstanceProfile("mono_decreasing", "nonneg"),
    "nr1_increasing": InstanceProfile("mono_increasing", "nonneg"),
    "nr2": InstanceProfile("mono_decreasing", "positive", beta_kind="nonneg_real", beta_range=(0.0, 3.0)),
    "lemma3": InstanceProfile("nonneg_decreasing", "nonneg", beta_kind="real", beta_range=(1.0, 4.0)),
    "lemma4": InstanceProfile("nonneg_decreasing", "signed", beta_kind="even_rational"),
    "nr4_identity": InstanceProfile("nonneg_decreasing", "nonneg", beta_kind="real", beta_range=(1.0, 4.0)),
    "nr6": InstanceProfile("positive_decreasing", "positive", beta_kind="real", beta_range=(1.0, 3.0)),
}


def _composite_instance(seed: int, flavor: str, grid: TimeGrid):
    """Terms and series for the composite suites (nr7..nr12)."""
    rng = np.random.default_rng(seed)
    order = FracOrder(_draw_alpha(rng, (0.1, 1.0)))
    if flavor in ("nr7", "nr8"):
        n_vars = 1
    else:
        n_vars = int(rng.integers(2, 4))
    signed = flavor in ("nr7", "nr10", "nr11", "nr12")
    x_kind = "signed" if signed else "nonneg"
    series = []
    groups = []
    for _ in range(n_vars):
        x_expr = parse(_draw_x(rng, x_kind))
        series.append(SampleSeries.from_function(grid, lambda ts, e=x_expr: sample_on(e, ts)))
        env = EnvelopeSpec("nonneg_decreasing", parse(_draw_decreasing(rng, "nonneg_decreasing")))
        beta = _draw_even_fraction(rng) if signed else float(rng.uniform(1.0, 4.0))
        p = 1.0 if flavor == "nr7" else float(rng.uniform(1.0, 3.0))
        group = [PowerTerm(c=float(rng.uniform(0.1, 2.0)), beta=beta, p=p, envelope=env)]
        if flavor in ("nr11", "nr12"):
            group.append(PowerTerm(c=float(rng.uniform(0.1, 2.0)), beta=beta))
        if flavor == "nr12":
            gamma_exp = _draw_even_fraction(rng) if signed else float(rng.uniform(1.0, 4.0))
            group.append(PowerTerm(c=float(rng.uniform(0.1, 2.0)), beta=gamma_exp))
        groups.append(group)
    return groups, series, order


_COMPOSITE_FLAVORS = ("nr7", "nr8", "nr9", "nr10", "nr11", "nr12")

SUITE_NAMES = tuple(PROFILES) + _COMPOSITE_FLAVORS


@dataclass(frozen=True)
class SuiteResult:
    """Aggregate of one named suite run."""

    name: str
    instances: int
    passes: int
    max_violation: float
    reports: tuple

    @property
    def all_passed(self) -> bool:
        return self.passes == self.instances


def _run_one(name: str, seed: int, grid: TimeGrid):
    if name in _COMPOSITE_FLAVORS:
        groups, series, order = _composite_instance(seed, name, grid)
        return verify_composite(groups, series, order)
    profile = PROFILES[name]
    profile = InstanceProfile(
        profile.envelope_kind, profile.x_kind, profile.beta_kind,
        profile.beta_range, profile.alpha_range, grid,
    )
    envelope, x, beta, order = generate_instance(seed, profile)
    if name == "nr1":
        return verify_product_decreasing(envelope, x, order)
    if name == "nr1_increasing":
        return verify_product_increasing(envelope, x, order)
    if name == "nr2":
        n = seed % 3
        return verify_odd_power_envelope(envelope, n, x, beta, order)
    if name == "lemma3":
        return verify_power_rule(x, beta, order, require_nonneg=True)
    if name == "lemma4":
        return verify_power_rule(x, beta, order, require_nonneg=False)
    if name == "nr4_identity":
        return verify_decomposition_nr4(envelope, x, beta, order)
    if name == "nr6":
        return verify_decomposition_nr6(envelope, x, beta, order)
    raise DomainError(f"unknown suite {name!r}")


def run_suite(name: str, instances: int, seed: int, grid: TimeGrid | None = None) -> SuiteResult:
    """Run a named suite of seeded instances; deterministic in (name, instances, seed)."""
    if name not in SUITE_NAMES:
        raise UnknownCheckError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    grid = grid or _DEFAULT_GRID
    child_seeds = np.random.SeedSequence(seed).generate_state(instances)
    reports = []
    passes = 0
    worst = 0.0
    for child in child_seeds:
        out = _run_one(name, int(child), grid)
        reports.append(out)
        if isinstance(out, IdentityResidual):
            ok = out.max_residual <= 1e-10 * out.scale
            worst = max(worst, out.relative)
        else:
            ok = out.verdict
            worst = max(worst, out.max_violation)
        passes += int(ok)
    return SuiteResult(name, instances, passes, worst, tuple(reports))
