"""Exponential martingale weights, tube conditioning, time-change diagnostics.

The reference curves are horizontal lifts of piecewise-C^2 planar curves
(built by the small grammar in the CLI). Two estimation routes exist for tube
quantities:

  - rejection sampling (exact conditioning), the primary estimator;
  - the mean-shift sampler: simulate centered paths, translate by phi, weight
    with the finite-grid likelihood ratio. It serves as a cross-check; the
    shift does not remove the small-ball cost, because the acceptance event
    becomes the centered tube.

Stochastic integrals are left-point sums on the fine grid. The martingale
weight uses the exact integral of |phi'|^2 for its compensator. The shift
sampler uses the increment-based discrete likelihood ratio, which is unbiased
at any step size.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .group import group_distance_array
from .paths import HorizontalCurve, SampledPath, TimeGrid, horizontal_lift
from .results import ResultTable, binomial_stderr, clopper_pearson_lower, mean_and_stderr, variance_and_stderr
from .rng import RngSpec
from .sde import DiffusionSample, _trial_chunks, levy_area


class InsufficientAcceptanceError(RuntimeError):
    """Conditioning event was never hit; carries the raw counts."""

    def __init__(self, accepted: int, total: int, context: str = ""):
        self.accepted = accepted
        self.total = total
        msg = f"conditioning event hit {accepted} of {total} trials"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class DegenerateWeightsError(RuntimeError):
    """Importance weights collapsed (effective sample size < 10)."""

    def __init__(self, ess: float):
        self.ess = ess
        super().__init__(f"effective sample size {ess:.2f} < 10")


class ConsistencyError(AssertionError):
    """Left-point and by-parts discretizations disagreed beyond O(h)."""


@dataclass(frozen=True)
class ReferenceCurve:
    """Horizontal lift of a smooth planar curve phi with cached functionals.

    planar_energy = int |phi'|^2, total_variation = int |phi1'| + |phi2'|
    (the constant controlling the tube regime), dd_sup = sup |phi''|.
    """

    label: str
    planar_fn: Callable
    dplanar_fn: Callable
    ddplanar_fn: Callable
    z_fn: Callable
    dz_fn: Callable
    planar_energy: float
    total_variation: float
    dd_sup: float

    @classmethod
    def line(cls, a: float, b: float) -> "ReferenceCurve":
        """Lift of t -> (a t, b t); the lift is flat (z = 0)."""
        a, b = float(a), float(b)
        return cls(
            label=f"line {a:g} {b:g}",
            planar_fn=lambda t: np.stack([a * np.asarray(t, float), b * np.asarray(t, float)], axis=-1),
            dplanar_fn=lambda t: np.stack([np.full_like(np.asarray(t, float), a), np.full_like(np.asarray(t, float), b)], axis=-1),
            ddplanar_fn=lambda t: np.zeros(np.shape(t) + (2,)),
            z_fn=lambda t: np.zeros(np.shape(t)),
            dz_fn=lambda t: np.zeros(np.shape(t)),
            planar_energy=a * a + b * b,
            total_variation=abs(a) + abs(b),
            dd_sup=0.0,
        )

    @classmethod
    def poly2(cls, a: float, b: float) -> "ReferenceCurve":
        """Lift of t -> (a t, b t^2); lifted z(t) = a b t^3 / 6."""
        a, b = float(a), float(b)
        return cls(
            label=f"poly2 {a:g} {b:g}",
            planar_fn=lambda t: np.stack([a * np.asarray(t, float), b * np.asarray(t, float) ** 2], axis=-1),
            dplanar_fn=lambda t: np.stack([np.full_like(np.asarray(t, float), a), 2.0 * b * np.asarray(t, float)], axis=-1),
            ddplanar_fn=lambda t: np.stack([np.zeros(np.shape(t)), np.full_like(np.asarray(t, float), 2.0 * b)], axis=-1),
            z_fn=lambda t: a * b * np.asarray(t, float) ** 3 / 6.0,
            dz_fn=lambda t: a * b * np.asarray(t, float) ** 2 / 2.0,
            planar_energy=a * a + 4.0 * b * b / 3.0,
            total_variation=abs(a) + abs(b),
            dd_sup=2.0 * abs(b),
        )

    @classmethod
    def zero(cls) -> "ReferenceCurve":
        return cls.line(0.0, 0.0)

    def planar_at(self, times) -> np.ndarray:
        return self.planar_fn(np.asarray(times, float))

    def z_at(self, times) -> np.ndarray:
        return self.z_fn(np.asarray(times, float))

    def sampled(self, grid: TimeGrid) -> SampledPath:
        return SampledPath(grid, self.planar_at(grid.times), self.z_at(grid.times), "linear")

    def lift(self, grid: TimeGrid) -> HorizontalCurve:
        return horizontal_lift(self.planar_fn, grid, dx_fn=self.dplanar_fn,
                               z_fn=self.z_fn, dz_fn=self.dz_fn)


def ito_left_sum(phi: ReferenceCurve, planar: np.ndarray, grid: TimeGrid) -> np.ndarray:
    """Left-point sum of <phi'(t_k), dB_k>; supports a leading batch axis."""
    dphi = phi.dplanar_fn(grid.times[:-1])
    db = np.diff(planar, axis=-2)
    return np.sum(dphi * db, axis=(-2, -1))


def ito_by_parts(phi: ReferenceCurve, planar: np.ndarray, grid: TimeGrid) -> np.ndarray:
    """phi'(1).B(1) - sum phi''(t_{k+1}) B(t_{k+1}) h (right-point rule).

    For piecewise-polynomial phi of degree <= 2 this reproduces the Abel
    summation of the left-point form exactly.
    """
    h = grid.step
    dphi1 = phi.dplanar_fn(np.asarray(1.0))
    end = np.sum(dphi1 * planar[..., -1, :], axis=-1)
    dd = phi.ddplanar_fn(grid.times[1:])
    corr = np.sum(dd * planar[..., 1:, :], axis=(-2, -1)) * h
    return end - corr


def consistency_gap(phi: ReferenceCurve, planar: np.ndarray, grid: TimeGrid) -> float:
    return float(np.max(np.abs(ito_left_sum(phi, planar, grid) - ito_by_parts(phi, planar, grid))))


def exp_martingale(phi: ReferenceCurve, planar: np.ndarray, grid: TimeGrid) -> np.ndarray:
    """exp(-int <phi', dB> - int |phi'|^2 / 2), left-point Ito discretization."""
    return np.exp(-ito_left_sum(phi, planar, grid) - 0.5 * phi.planar_energy)


def shift_weight(phi: ReferenceCurve, planar: np.ndarray, grid: TimeGrid) -> np.ndarray:
    """Exact finite-grid likelihood ratio for the shift B -> B + phi.

    E[F(B)] = E[weight(B) F(B + phi)] holds exactly for Gaussian increments.
    """
    h = grid.step
    dphi = np.diff(phi.planar_at(grid.times), axis=0)
    db = np.diff(planar, axis=-2)
    stoch = np.sum(dphi * db, axis=(-2, -1)) / h
    quad = float(np.sum(dphi * dphi)) / h
    return np.exp(-stoch - 0.5 * quad)


def tube_deviation(phi: ReferenceCurve, planar: np.ndarray, grid: TimeGrid) -> np.ndarray:
    """sup over nodes of |B_t - phi(t)| in the plane."""
    gap = planar - phi.planar_at(grid.times)
    return np.sqrt(np.max(np.sum(gap * gap, axis=-1), axis=-1))


def tube_indicator(phi: ReferenceCurve, planar: np.ndarray, grid: TimeGrid, delta: float):
    return tube_deviation(phi, planar, grid) < delta


def distance_to_curve(phi: ReferenceCurve, planar: np.ndarray, area: np.ndarray, grid: TimeGrid) -> np.ndarray:
    """Uniform group distance between g = (B, A) and the lift of phi."""
    pp = phi.planar_at(grid.times)
    pz = phi.z_at(grid.times)
    return np.max(group_distance_array(pp, pz, planar, area), axis=-1)


def tube_regime_ok(phi: ReferenceCurve, delta: float, epsilon: float) -> bool:
    """Whether epsilon^2 > delta C_phi + delta^2 (the estimate's regime)."""
    return epsilon * epsilon > delta * phi.total_variation + delta * delta


@dataclass(frozen=True)
class TubeEstimate:
    delta: float
    epsilon: float
    p_hat: float
    stderr: float
    accepted: int
    total: int
    out_of_regime: bool
    seed: int


def _tube_scan(phi, n_trials, rng, grid):
    """One pass of rejection trials; returns per-trial (deviation, distance)."""
    dev = np.empty(n_trials)
    dist = np.empty(n_trials)
    for start, paths in _trial_chunks(grid, rng, n_trials):
        nb = paths.shape[0]
        area = levy_area(paths)
        dev[start:start + nb] = tube_deviation(phi, paths, grid)
        dist[start:start + nb] = distance_to_curve(phi, paths, area, grid)
    return dev, dist


def conditional_distance_estimate(
    phi: ReferenceCurve,
    epsilon: float,
    delta: float,
    n_trials: int,
    rng: RngSpec,
    fine_step: float = 2.0 ** -10,
) -> TubeEstimate:
    """Rejection estimate of P(d(g, phi) > epsilon | sup |B - phi| < delta).

    stderr follows the small-count convention in results.binomial_stderr.
    Raises InsufficientAcceptanceError when no trial lands in the tube.
    """
    grid = TimeGrid.uniform(round(1.0 / fine_step))
    dev, dist = _tube_scan(phi, n_trials, rng, grid)
    accepted = int(np.sum(dev < delta))
    if accepted == 0:
        raise InsufficientAcceptanceError(0, n_trials, f"delta={delta}, phi={phi.label}")
    exceed = int(np.sum((dev < delta) & (dist > epsilon)))
    return TubeEstimate(
        delta=float(delta),
        epsilon=float(epsilon),
        p_hat=exceed / accepted,
        stderr=binomial_stderr(exceed, accepted),
        accepted=accepted,
        total=n_trials,
        out_of_regime=not tube_regime_ok(phi, delta, epsilon),
        seed=rng.seed,
    )


def tube_decay_experiment(
    phi: ReferenceCurve,
    epsilon: float,
    deltas,
    n_trials: int,
    rng: RngSpec,
    fine_step: float = 2.0 ** -10,
    min_accepted: Optional[int] = None,
    budget: Optional[int] = None,
) -> ResultTable:
    """Matched-seed rejection estimates of the tube exceedance over a ladder.

    All levels reuse one pass of trials, so acceptance sets are nested and the
    acceptance rate is exactly monotone in delta. If min_accepted is given,
    the raw trial count is raised (x10) until every level holds that many
    accepted samples or the budget is exhausted.
    """
    grid = TimeGrid.uniform(round(1.0 / fine_step))
    n = n_trials
    while True:
        dev, dist = _tube_scan(phi, n, rng, grid)
        counts = [int(np.sum(dev < d)) for d in deltas]
        if min_accepted is None or min(counts) >= min_accepted:
            break
        if budget is None or n >= budget:
            break
        n = min(n * 10, budget)
    if max(counts) == 0:
        raise InsufficientAcceptanceError(0, n, f"all levels empty, phi={phi.label}")
    rows = []
    for d in deltas:
        acc = dev < d
        k = int(np.sum(acc))
        if k == 0:
            rows.append((float(d), float(epsilon), float("nan"), float("nan"), 0, n, rng.seed))
            continue
        exceed = int(np.sum(acc & (dist > epsilon)))
        rows.append((float(d), float(epsilon), exceed / k, binomial_stderr(exceed, k), k, n, rng.seed))
    return ResultTable(
        ["delta", "epsilon", "p_hat", "stderr", "accepted", "total", "seed"],
        rows,
        {
            "experiment": "tube",
            "phi": phi.label,
            "seed": rng.seed,
            "fine_step": fine_step,
            "n_trials": n,
            "out_of_regime": [float(d) for d in deltas if not tube_regime_ok(phi, float(d), epsilon)],
            "inconclusive": any(r[4] == 0 for r in rows),
        },
    )


@dataclass(frozen=True)
class ShiftSamplerResult:
    """Weighted samples from the mean-shift proposal B + phi."""

    phi_label: str
    weights: np.ndarray  # finite-grid likelihood ratio per trial
    centered_dev: np.ndarray  # sup |B| per trial (tube event after shifting)
    shifted_distance: np.ndarray  # d(g(B + phi), phi) per trial
    seed: int

    def mean_weight(self):
        return mean_and_stderr(self.weights)

    def tube_probability(self, delta: float):
        """Estimate of P(sup |B - phi| < delta) by shift plus weight."""
        vals = self.weights * (self.centered_dev < delta)
        return mean_and_stderr(vals)

    def conditional_exceedance(self, delta: float, epsilon: float):
        """Weighted estimate of P(d > epsilon | tube); checks weight health."""
        acc = self.centered_dev < delta
        w = self.weights[acc]
        if w.size == 0:
            raise InsufficientAcceptanceError(0, self.weights.size, f"delta={delta}")
        ess = float(np.sum(w) ** 2 / np.sum(w * w))
        if ess < 10.0:
            raise DegenerateWeightsError(ess)
        x = (self.shifted_distance[acc] > epsilon).astype(float)
        total = float(np.sum(w))
        p = float(np.sum(w * x) / total)
        se = float(np.sqrt(np.sum((w * (x - p)) ** 2)) / total)
        return p, se, ess


def girsanov_shift_sampler(
    phi: ReferenceCurve,
    n_trials: int,
    rng: RngSpec,
    fine_step: float = 2.0 ** -10,
) -> ShiftSamplerResult:
    """Simulate centered B, form B + phi, weight by the discrete likelihood.

    The area of the shifted path is the same left-point functional applied to
    the shifted node values, so every estimate is a plain path functional.
    """
    grid = TimeGrid.uniform(round(1.0 / fine_step))
    nodes = phi.planar_at(grid.times)
    w = np.empty(n_trials)
    dev = np.empty(n_trials)
    dist = np.empty(n_trials)
    for start, paths in _trial_chunks(grid, rng, n_trials):
        nb = paths.shape[0]
        w[start:start + nb] = shift_weight(phi, paths, grid)
        dev[start:start + nb] = np.sqrt(np.max(np.sum(paths * paths, axis=-1), axis=-1))
        shifted = paths + nodes
        dist[start:start + nb] = distance_to_curve(phi, shifted, levy_area(shifted), grid)
    return ShiftSamplerResult(phi.label, w, dev, dist, rng.seed)


def girsanov_ratio_experiment(
    phi: ReferenceCurve,
    deltas,
    n_trials: int,
    rng: RngSpec,
    fine_step: float = 2.0 ** -10,
) -> ResultTable:
    """E[martingale weight | sup |B| < delta] over a delta ladder.

    The target of the trend is exp(-planar_energy / 2). A built-in check
    verifies the two Ito discretizations agree to O(h) on the first chunk.
    Levels that were never hit appear with NaN estimates and mark the table
    inconclusive; if no level is ever hit the experiment raises.
    """
    grid = TimeGrid.uniform(round(1.0 / fine_step))
    h = grid.step
    weights = np.empty(n_trials)
    dev = np.empty(n_trials)
    checked = False
    for start, paths in _trial_chunks(grid, rng, n_trials):
        nb = paths.shape[0]
        if not checked:
            gap = consistency_gap(phi, paths, grid)
            tol = 10.0 * h * (1.0 + phi.dd_sup)
            if gap > tol:
                raise ConsistencyError(
                    f"integration-by-parts gap {gap:.3e} exceeds {tol:.3e}"
                )
            checked = True
        weights[start:start + nb] = exp_martingale(phi, paths, grid)
        dev[start:start + nb] = np.sqrt(np.max(np.sum(paths * paths, axis=-1), axis=-1))
    target = math.exp(-0.5 * phi.planar_energy)
    rows = []
    for d in deltas:
        acc = dev < float(d)
        k = int(np.sum(acc))
        if k == 0:
            rows.append((float(d), float("nan"), float("nan"), 0, n_trials, target, rng.seed))
            continue
        est, se = mean_and_stderr(weights[acc]) if k > 1 else (float(weights[acc][0]), float("nan"))
        rows.append((float(d), est, se, k, n_trials, target, rng.seed))
    if all(r[3] == 0 for r in rows):
        raise InsufficientAcceptanceError(0, n_trials, "every delta level empty")
    mean_w, mean_w_se = mean_and_stderr(weights)
    return ResultTable(
        ["delta", "estimate", "stderr", "accepted", "total", "target", "seed"],
        rows,
        {
            "experiment": "girsanov-ratio",
            "phi": phi.label,
            "seed": rng.seed,
            "fine_step": fine_step,
            "n_trials": n_trials,
            "mean_weight": mean_w,
            "mean_weight_stderr": mean_w_se,
            "target": target,
            "inconclusive": any(r[3] == 0 for r in rows),
        },
    )


def time_change_diagnostics(samples, times) -> ResultTable:
    """Variance of A_t against the mean clock E tau(t), plus independence.

    samples: iterable of DiffusionSample on a shared uniform grid. tau is the
    quarter integral of |B|^2, evaluated by the trapezoid rule (exact in mean
    for this integrand). Correlations are between A_t and the planar
    coordinates at the same time; their stderr is the 1/sqrt(N) null scale.
    """
    times = [float(t) for t in times]
    a_vals, tau_vals, b_vals = [], [], []
    grid = None
    idx = None
    for sample in samples:
        if grid is None:
            grid = sample.grid
            h = grid.step
            idx = []
            for t in times:
                j = round(t / h)
                if abs(j * h - t) > 1e-12:
                    raise ValueError(f"time {t} is not a grid node")
                idx.append(j)
            idx = np.array(idx, dtype=int)
        elif sample.grid != grid:
            raise ValueError("samples live on different grids")
        sq = np.sum(sample.planar * sample.planar, axis=-1)
        cum = np.zeros(sq.size)
        np.cumsum(0.5 * (sq[:-1] + sq[1:]) * grid.step, out=cum[1:])
        a_vals.append(sample.area[idx])
        tau_vals.append(0.25 * cum[idx])
        b_vals.append(sample.planar[idx])
    a = np.array(a_vals)
    tau = np.array(tau_vals)
    b = np.array(b_vals)
    n = a.shape[0]
    rows = []
    for j, t in enumerate(times):
        var, var_se = variance_and_stderr(a[:, j])
        mt, mt_se = mean_and_stderr(tau[:, j])
        c1 = float(np.corrcoef(a[:, j], b[:, j, 0])[0, 1])
        c2 = float(np.corrcoef(a[:, j], b[:, j, 1])[0, 1])
        corr_se = 1.0 / math.sqrt(n)
        rows.append((t, var, mt, c1, c2, var_se, mt_se, corr_se, corr_se))
    return ResultTable(
        ["t", "var_A", "mean_tau", "corr_A_B1", "corr_A_B2",
         "stderr_var_A", "stderr_mean_tau", "stderr_corr_A_B1", "stderr_corr_A_B2"],
        rows,
        {"experiment": "dds-diagnostics", "n_trials": n},
    )


def dds_experiment(n_trials: int, fine_step: float, times, rng: RngSpec) -> ResultTable:
    """time_change_diagnostics over freshly simulated trial-keyed samples."""
    grid = TimeGrid.uniform(round(1.0 / fine_step))

    def _gen():
        for start, paths in _trial_chunks(grid, rng, n_trials):
            areas = levy_area(paths)
            for j in range(paths.shape[0]):
                yield DiffusionSample(grid, paths[j], areas[j], rng.child(start + j))

    table = time_change_diagnostics(_gen(), times)
    table.meta.update({"seed": rng.seed, "fine_step": fine_step, "n_trials": n_trials})
    return table


@dataclass(frozen=True)
class SupportEstimate:
    epsilon: float
    p_hat: float
    stderr: float
    lower_99: float
    hits: int
    total: int
    seed: int


def support_positivity(
    phi: ReferenceCurve,
    epsilon: float,
    n_trials: int,
    rng: RngSpec,
    fine_step: float = 2.0 ** -10,
) -> SupportEstimate:
    """Estimate P(d(g, phi) < epsilon) with an exact 99% lower bound."""
    grid = TimeGrid.uniform(round(1.0 / fine_step))
    hits = 0
    for start, paths in _trial_chunks(grid, rng, n_trials):
        dist = distance_to_curve(phi, paths, levy_area(paths), grid)
        hits += int(np.sum(dist < epsilon))
    p = hits / n_trials
    return SupportEstimate(
        epsilon=float(epsilon),
        p_hat=p,
        stderr=binomial_stderr(hits, n_trials),
        lower_99=clopper_pearson_lower(hits, n_trials, 0.99),
        hits=hits,
        total=n_trials,
        seed=rng.seed,
    )
