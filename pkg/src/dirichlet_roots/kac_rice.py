"""Exact expected-zero density of the Gaussian model and its quadrature.

For v(t) = (w_1 h(t log 1), ..., w_N h(t log N)) with h = cos or sin, the
expected number of zeros of <X, v(t)> on I is (1/pi) int_I sqrt(D(t)) dt,
where D is the second mixed derivative of log v(x).v(y) on the diagonal.
Writing M_j = sum w_n^2 (log n)^j and the oscillatory moment sums
P_j(tau) = sum w_n^2 (log n)^j cos(tau log n) (Pt_1 with sine), everything
reduces to three sums at tau = 2t:

    cosine part:  B = (M_0 + P_0)/2,  A = (M_2 - P_2)/2,  C = -Pt_1 / (2B)
    sine part:    B = (M_0 - P_0)/2,  A = (M_2 + P_2)/2,  C = +Pt_1 / (2B)

(the cos^2 <-> sin^2 exchange flips the sign of every P term; C enters the
density only squared) and D = A/B - C^2 >= 0 by Cauchy-Schwarz.

The breakdown also records the proof-style normalized fluctuations
    x = (2k+1) (g_{2k} + u0) / L^{2k+1},   L = log T,
    y = (2k+3) (g_{2k+2} + u2) / L^{2k+3},
    z = (2k+3) C^2 / ((2k+1) L^2),
    w = (1+y)/(1+x) - z - 1,
with u0 the signed P_0 fluctuation and u2 the signed second-derivative sum.
u0 excludes the constant n = 1 term (nonzero only for k = 0): that term is
a DC offset with no t-dependence, and the proof's step-by-step envelopes
(gamma T / L for the x integral, decaying log powers for the rest) describe
the genuinely oscillatory part.  The density itself always uses the full
sums A, B, C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .asymptotics import stieltjes_constant
from .core import Interval, Part, PolynomialSpec
from .dirichlet_eval import WeightTable, make_weight_table, oscillating_sums, u_moment

__all__ = [
    "DensityBreakdown",
    "QuadratureResult",
    "QuadratureBudgetError",
    "density_at",
    "breakdown_at",
    "breakdown_grid",
    "expected_count_deterministic",
    "expected_count_stratified",
    "panel_width",
    "deterministic_node_count",
    "DEFAULT_NODE_CAP",
    "NODES_PER_PANEL",
]

# Cauchy-Schwarz slack: A/B - C^2 may round to a tiny negative.
_NEGATIVE_TOL = 1e-12

NODES_PER_PANEL = 8
DEFAULT_NODE_CAP = 4_000_000

# Chunk size (grid points x terms) for scattered-point evaluation.
_CHUNK_ELEMS = 2_000_000


class QuadratureBudgetError(RuntimeError):
    """Deterministic quadrature would exceed its node budget."""

    def __init__(self, nodes_required: int, cap: int):
        super().__init__(
            f"deterministic quadrature needs {nodes_required} nodes (cap {cap}); "
            f"use the stratified method for this T")
        self.nodes_required = nodes_required
        self.cap = cap


@dataclass(frozen=True)
class DensityBreakdown:
    """The density at one t plus its proof-aligned decomposition."""

    t: float
    A: float
    B: float
    C: float
    x: float
    y: float
    z: float
    w: float
    density: float


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    method: Literal["composite_deterministic", "stratified_random"]
    nodes_used: int
    stderr: float | None = None


def _check_spec(spec: PolynomialSpec) -> None:
    if spec.degenerate:
        raise ValueError("identically-zero (degenerate) spec has no zero density")


def _part_sign(part: Part) -> float:
    return 1.0 if part is Part.COSINE else -1.0


def _fluct_terms(spec: PolynomialSpec, table: WeightTable):
    """Constants shared by scalar and grid breakdowns."""
    L = math.log(spec.T)
    k1, k3 = 2 * spec.k + 1, 2 * spec.k + 3
    g0 = stieltjes_constant(2 * spec.k)
    g2 = stieltjes_constant(2 * spec.k + 2)
    dc = float(table.squared_weights[0])  # n=1 weight; 1 for k=0, else 0
    return L, k1, k3, g0, g2, dc


def _assemble(spec: PolynomialSpec, table: WeightTable, p0, p1s, p2):
    """Breakdown fields from the three moment sums at tau = 2t (array-safe)."""
    s = _part_sign(spec.part)
    L, k1, k3, g0, g2, dc = _fluct_terms(spec, table)
    B = 0.5 * (table.m0 + s * p0)
    A = 0.5 * (table.m2 - s * p2)
    if np.any(B <= 0):
        # Possible only for the sine part at isolated points where every
        # sin(t log n) vanishes simultaneously.
        raise ValueError("covariance B <= 0; density undefined at this t")
    C = -s * p1s / (2.0 * B)
    ratio = A / B - C * C
    # Cauchy-Schwarz floor, scaled by the cancellation in A and B: near a
    # degenerate covariance (sine part close to a common zero of every term)
    # A/B and C^2 blow up and roundoff in the difference grows with
    # (M_2 + M_0 (A/B + C^2)) / (2B), not with an absolute epsilon.
    err_scale = (table.m2 + table.m0 * (np.abs(A) / B + C * C)) / (2.0 * B) + 1.0
    if np.any(ratio < -_NEGATIVE_TOL * err_scale):
        raise AssertionError("A/B - C^2 fell below the Cauchy-Schwarz roundoff floor")
    density = np.sqrt(np.maximum(ratio, 0.0)) / math.pi
    x = k1 * (g0 + s * (p0 - dc)) / L**k1
    y = k3 * (g2 - s * p2) / L**k3
    z = k3 * (C * C) / (k1 * L * L)
    w = (1.0 + y) / (1.0 + x) - z - 1.0
    return A, B, C, x, y, z, w, density


def breakdown_at(spec: PolynomialSpec, t: float,
                 table: WeightTable | None = None) -> DensityBreakdown:
    """Density and proof decomposition at a single point."""
    _check_spec(spec)
    if table is None:
        table = make_weight_table(spec)
    p0 = u_moment(table, 0, 2.0 * t, Part.COSINE)
    p1s = u_moment(table, 1, 2.0 * t, Part.SINE)
    p2 = u_moment(table, 2, 2.0 * t, Part.COSINE)
    A, B, C, x, y, z, w, density = _assemble(spec, table, p0, p1s, p2)
    return DensityBreakdown(t=float(t), A=float(A), B=float(B), C=float(C),
                            x=float(x), y=float(y), z=float(z), w=float(w),
                            density=float(density))


def density_at(spec: PolynomialSpec, t: float,
               table: WeightTable | None = None) -> DensityBreakdown:
    """Alias of breakdown_at; the density field is the headline value."""
    return breakdown_at(spec, t, table)


def breakdown_grid(spec: PolynomialSpec, table: WeightTable, start: float,
                   step: float, count: int) -> dict[str, np.ndarray]:
    """Breakdown fields as arrays along the uniform grid t_i = start + i*step.

    Uses the phase-recurrence kernel on the doubled grid tau_i = 2 t_i, so the
    whole grid costs O(1) trig calls per term.
    """
    _check_spec(spec)
    sq, logs = table.squared_weights, table.logs
    cos_rows = np.vstack([sq, sq * logs * logs])
    sin_rows = (sq * logs)[None, :]
    c_rows, s_rows = oscillating_sums(logs, cos_rows, sin_rows,
                                      2.0 * start, 2.0 * step, count)
    A, B, C, x, y, z, w, density = _assemble(spec, table, c_rows[0],
                                             s_rows[0], c_rows[1])
    t = start + step * np.arange(count)
    return {"t": t, "A": A, "B": B, "C": C, "x": x, "y": y, "z": z, "w": w,
            "density": density}


def _moment_rows_at(table: WeightTable, taus: np.ndarray) -> tuple[np.ndarray, ...]:
    """P_0, Pt_1, P_2 at scattered (non-uniform) arguments, chunked matmuls."""
    sq, logs = table.squared_weights, table.logs
    n = logs.shape[0]
    p0 = np.empty(taus.shape[0])
    p1s = np.empty(taus.shape[0])
    p2 = np.empty(taus.shape[0])
    chunk = max(1, _CHUNK_ELEMS // max(n, 1))
    w2l = sq * logs
    w2l2 = sq * logs * logs
    for i in range(0, taus.shape[0], chunk):
        ang = np.outer(taus[i:i + chunk], logs)
        cosm = np.cos(ang)
        sinm = np.sin(ang)
        p0[i:i + chunk] = cosm @ sq
        p2[i:i + chunk] = cosm @ w2l2
        p1s[i:i + chunk] = sinm @ w2l
    return p0, p1s, p2


def panel_width(spec: PolynomialSpec) -> float:
    """Quarter period of the fastest oscillation cos(2 t log T) in the sums."""
    return math.pi / (4.0 * math.log(spec.T))


def deterministic_node_count(spec: PolynomialSpec, interval: Interval,
                             nodes_per_panel: int = NODES_PER_PANEL) -> int:
    """Total nodes the deterministic rule will evaluate (base + halved pass)."""
    panels = max(1, math.ceil(interval.length / panel_width(spec)))
    return 3 * panels * nodes_per_panel


def _composite_gl(table: WeightTable, spec: PolynomialSpec, interval: Interval,
                  n_panels: int, nodes_per_panel: int) -> float:
    """Composite Gauss-Legendre integral of the density over the interval.

    Node streams: for a fixed in-panel offset the node abscissas across
    panels form a uniform grid, so each of the nodes_per_panel streams is one
    phase-recurrence sweep.  Per-stream sums use numpy pairwise reduction in
    panel order, fixed independently of any parallelism.
    """
    h = interval.length / n_panels
    xi, wgt = np.polynomial.legendre.leggauss(nodes_per_panel)
    total = 0.0
    for i in range(nodes_per_panel):
        start = interval.lo + (xi[i] + 1.0) * 0.5 * h
        dens = breakdown_grid(spec, table, start, h, n_panels)["density"]
        total += wgt[i] * 0.5 * h * float(np.sum(dens))
    return total


def expected_count_deterministic(spec: PolynomialSpec, interval: Interval,
                                 nodes_per_panel: int = NODES_PER_PANEL,
                                 node_cap: int = DEFAULT_NODE_CAP,
                                 table: WeightTable | None = None,
                                 max_panel_width: float | None = None) -> QuadratureResult:
    """Expected zero count on the interval by composite Gauss-Legendre panels.

    Panels are at most a quarter period of the fastest oscillation wide
    (narrower if max_panel_width is given: useful when the density has
    corners, as in near-degenerate two-term models); the error estimate is
    |I_h - I_{h/2}| from one panel-width halving, and the finer value is
    reported.
    """
    _check_spec(spec)
    width = panel_width(spec) if max_panel_width is None else max_panel_width
    needed = 3 * max(1, math.ceil(interval.length / width)) * nodes_per_panel
    if needed > node_cap:
        raise QuadratureBudgetError(needed, node_cap)
    if table is None:
        table = make_weight_table(spec)
    n_panels = max(1, math.ceil(interval.length / width))
    coarse = _composite_gl(table, spec, interval, n_panels, nodes_per_panel)
    fine = _composite_gl(table, spec, interval, 2 * n_panels, nodes_per_panel)
    return QuadratureResult(value=fine, abs_error_estimate=abs(fine - coarse),
                            method="composite_deterministic",
                            nodes_used=3 * n_panels * nodes_per_panel)


def expected_count_stratified(spec: PolynomialSpec, interval: Interval,
                              strata: int, seed: int,
                              table: WeightTable | None = None) -> QuadratureResult:
    """Unbiased stratified estimate: one uniform node per equal-width stratum.

    stderr treats the per-stratum density values as independent draws, which
    upper-bounds the true stratified error; abs_error_estimate repeats it.
    """
    _check_spec(spec)
    if strata < 100:
        raise ValueError("use at least 100 strata")
    if table is None:
        table = make_weight_table(spec)
    rng = np.random.Generator(np.random.PCG64(seed))
    offsets = rng.random(strata)
    cell = interval.length / strata
    t = interval.lo + cell * (np.arange(strata) + offsets)
    p0, p1s, p2 = _moment_rows_at(table, 2.0 * t)
    *_, density = _assemble(spec, table, p0, p1s, p2)
    value = interval.length * float(np.mean(density))
    spread = float(np.std(density, ddof=1)) if strata > 1 else 0.0
    stderr = interval.length * spread / math.sqrt(strata)
    return QuadratureResult(value=value, abs_error_estimate=stderr,
                            method="stratified_random", nodes_used=strata,
                            stderr=stderr)
