"""Desk-scale experiments: simulation-vs-theory checks with tabular reports.

Each experiment runs a deterministic simulation, compares it against the
matching closed form from :mod:`lqw.analytics`, and returns an
ExperimentReport carrying the raw table, scalar metrics and pass/fail
verdicts (every verdict records the tolerance it was judged against).
Serialization is left to the cli module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import analytics
from .core import (
    InitialCondition,
    StandardInit,
    WalkParams,
    evolve,
    grover_coin,
    iter_evolution,
)
from .errors import DegenerateSeriesError
from .quadrature import DEFAULT_NODES, midpoint_rule
from .spectral import eigen_system, momentum_grid_solution, momentum_operator, propagate_fourier

__all__ = [
    "Verdict",
    "ExperimentReport",
    "localization_series",
    "distribution_snapshot",
    "variance_series",
    "fit_power_law",
    "empirical_vs_weak_limit",
    "compare_direct_vs_fourier",
    "verification_suite",
]


@dataclass(frozen=True)
class Verdict:
    name: str
    measured: float
    tolerance: float
    passed: bool

    @classmethod
    def judge(cls, name: str, measured: float, tolerance: float) -> "Verdict":
        return cls(name, float(measured), float(tolerance), bool(measured <= tolerance))


@dataclass
class ExperimentReport:
    """Config echo + table payload + verdicts for one experiment."""

    experiment: str
    config: dict
    columns: tuple[str, ...]
    rows: list[tuple]
    metrics: dict = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)


def _config_echo(init: InitialCondition, tau: int, **extra) -> dict:
    cfg = {"tau": tau}
    if isinstance(init, StandardInit):
        cfg["alpha"] = complex(init.alpha)
        cfg["beta"] = complex(init.beta)
    else:
        cfg["coin_vector"] = [complex(a) for a in init.amplitudes]
    cfg.update(extra)
    return cfg


def _localization_reference(init: InitialCondition, tau: int) -> float:
    # window means mix both parities, so compare against their average
    even = analytics.localization_probability_origin(init, tau, "even")
    odd = analytics.localization_probability_origin(init, tau, "odd")
    return 0.5 * (even + odd)


def localization_series(
    init: InitialCondition, tau: int, t_max: int, tolerance: float = 1e-2
) -> ExperimentReport:
    """P(X_t = 0) for t = 1..t_max against the theoretical limit.

    Convergence is judged on the mean over the last ceil(t_max/10) steps,
    since the pointwise sequence keeps oscillating around the limit.  No
    verdict is emitted when the window covers the whole series.
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    params = WalkParams(tau)
    reference = _localization_reference(init, tau)
    series = []
    for state in iter_evolution(init, params, t_max):
        if state.t == 0:
            continue
        series.append((state.t, float(np.sum(np.abs(state.amplitude(0)) ** 2))))

    window = math.ceil(t_max / 10)
    report = ExperimentReport(
        experiment="localization_series",
        config=_config_echo(init, tau, steps=t_max),
        columns=("t", "origin_probability", "reference"),
        rows=[(t, p, reference) for t, p in series],
        metrics={"reference": reference, "window": window},
    )
    if window < len(series):
        window_mean = float(np.mean([p for _, p in series[-window:]]))
        report.metrics["window_mean"] = window_mean
        report.verdicts.append(
            Verdict.judge("window_mean_deviation", abs(window_mean - reference), tolerance)
        )
    return report


def _argmax_peak(positions: np.ndarray, probs: np.ndarray, side: int) -> int:
    """argmax of probs on one travelling-peak flank; ties go to larger |n|."""
    best = np.flatnonzero(probs == probs.max())
    pick = best.max() if side > 0 else best.min()
    return int(positions[pick])


def distribution_snapshot(
    init: InitialCondition, tau: int, t_max: int, peak_tolerance: float = 2.0
) -> ExperimentReport:
    """Full distribution at t_max with measured vs theoretical peak positions.

    The travelling peaks are located by argmax over n > t_max/2 and
    n < -t_max/2, excluding the central localization peak.
    """
    if t_max < 10:
        raise ValueError("t_max must be >= 10")
    state = evolve(init, WalkParams(tau), t_max)
    positions = state.positions
    probs = state.probabilities()

    v_left, v_right = analytics.peak_velocities(tau)
    right_mask = positions > t_max / 2
    left_mask = positions < -t_max / 2
    right_peak = _argmax_peak(positions[right_mask], probs[right_mask], +1)
    left_peak = _argmax_peak(positions[left_mask], probs[left_mask], -1)
    right_theory = v_right * t_max
    left_theory = v_left * t_max

    report = ExperimentReport(
        experiment="distribution_snapshot",
        config=_config_echo(init, tau, steps=t_max),
        columns=("n", "probability"),
        rows=[(int(n), float(p)) for n, p in zip(positions, probs)],
        metrics={
            "right_peak": right_peak,
            "left_peak": left_peak,
            "right_peak_theory": right_theory,
            "left_peak_theory": left_theory,
        },
    )
    report.verdicts.append(
        Verdict.judge("right_peak_offset", abs(right_peak - round(right_theory)), peak_tolerance)
    )
    report.verdicts.append(
        Verdict.judge("left_peak_offset", abs(left_peak - round(left_theory)), peak_tolerance)
    )
    return report


def variance_series(init: InitialCondition, tau: int, t_max: int) -> ExperimentReport:
    """sigma^2(t) for t = 0..t_max, computed exactly from the distribution."""
    if t_max < 10:
        raise ValueError("t_max must be >= 10")
    rows = []
    for state in iter_evolution(init, WalkParams(tau), t_max):
        probs = state.probabilities()
        ns = state.positions
        mean = float(np.dot(ns, probs))
        second = float(np.dot(ns * ns, probs))
        rows.append((state.t, second - mean * mean))
    return ExperimentReport(
        experiment="variance_series",
        config=_config_echo(init, tau, steps=t_max),
        columns=("t", "variance"),
        rows=rows,
    )


def fit_power_law(series) -> tuple[float, float]:
    """(c_fit, alpha_fit) of a c * t^alpha law, fit on the series tail.

    Least squares of log(value) on log(t) over t in [t_max/2, t_max];
    earlier entries are transient and excluded.
    """
    arr = np.asarray([(t, v) for t, v in series], dtype=float)
    if arr.shape[0] < 10:
        raise ValueError("series must have at least 10 entries")
    t, v = arr[:, 0], arr[:, 1]
    mask = (t >= t.max() / 2) & (t > 0)
    t, v = t[mask], v[mask]
    if np.all(v == v[0]):
        raise DegenerateSeriesError("all values equal; no power law to fit")
    if np.any(v <= 0):
        raise ValueError("power-law fit requires positive values in the fit window")
    slope, intercept = np.polyfit(np.log(t), np.log(v), 1)
    return float(np.exp(intercept)), float(slope)


def empirical_vs_weak_limit(
    init: InitialCondition,
    tau: int,
    t_max: int,
    epsilon: float = 0.05,
    tolerance: float = 0.05,
    nodes: int = DEFAULT_NODES,
) -> ExperimentReport:
    """Distribution of X_t/t at t_max against the limiting law.

    Compares empirical and limiting CDFs on |x| > epsilon (outside the
    delta-atom's neighborhood) and the total mass inside |x| < epsilon
    against the atom plus the density's share.
    """
    model = analytics.WeakLimitModel(init, tau)
    if t_max < 100:
        raise ValueError("t_max must be >= 100")
    if not 0.0 < epsilon < model.omega:
        raise ValueError(f"epsilon must lie in (0, Omega={model.omega})")

    state = evolve(init, WalkParams(tau), t_max)
    probs = state.probabilities()
    xs = state.positions / t_max
    emp_cdf = np.cumsum(probs)

    outside = np.abs(xs) > epsilon
    theory_cdf = np.array([model.cdf(x, nodes=nodes) for x in xs[outside]])
    sup_distance = float(np.max(np.abs(emp_cdf[outside] - theory_cdf)))

    near_mass = float(np.sum(probs[~outside]))
    near_theory = model.p_hat + model.continuous_mass(-epsilon, epsilon, nodes=nodes)

    report = ExperimentReport(
        experiment="empirical_vs_weak_limit",
        config=_config_echo(init, tau, steps=t_max, epsilon=epsilon),
        columns=("x", "empirical_cdf"),
        rows=[(float(x), float(c)) for x, c in zip(xs, emp_cdf)],
        metrics={
            "sup_distance": sup_distance,
            "near_origin_mass": near_mass,
            "near_origin_mass_theory": near_theory,
            "p_hat": model.p_hat,
            "omega": model.omega,
        },
    )
    report.verdicts.append(Verdict.judge("sup_distance", sup_distance, tolerance))
    report.verdicts.append(
        Verdict.judge("near_origin_mass_deviation", abs(near_mass - near_theory), tolerance)
    )
    return report


def compare_direct_vs_fourier(init: InitialCondition, tau: int, t_max: int) -> float:
    """Max per-amplitude deviation between the two evolution routes."""
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    params = WalkParams(tau)
    direct = evolve(init, params, t_max)
    fourier = propagate_fourier(init, params, t_max)
    return float(np.max(np.abs(direct.amplitudes - fourier.amplitudes)))


def _fourier_tail(init: InitialCondition, params: WalkParams, t: int, pad: int = 4) -> float:
    """Max |amplitude| outside the light cone on an enlarged Fourier grid."""
    m = 1 << math.ceil(math.log2(2 * (t + pad) + 2))
    _, psi = momentum_grid_solution(init, params, t, m)
    pos = np.fft.ifft(psi, axis=0)
    idx = [s * n % m for n in range(t + 1, t + pad + 1) for s in (1, -1)]
    return float(np.max(np.abs(pos[idx])))


def verification_suite(
    init: StandardInit,
    tau: int,
    t_max: int,
    nodes: int = DEFAULT_NODES,
) -> ExperimentReport:
    """Cross-check battery: every closed form against an independent route."""
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    params = WalkParams(tau)
    verdicts: list[Verdict] = []

    g = grover_coin(params)
    verdicts.append(Verdict.judge(
        "grover_involution", np.max(np.abs(g @ g - np.eye(params.delta))), 1e-12))
    verdicts.append(Verdict.judge(
        "grover_unitarity", np.max(np.abs(g.T @ g - np.eye(params.delta))), 1e-12))

    state = evolve(init, params, t_max)
    verdicts.append(Verdict.judge(
        "norm_conservation", abs(float(np.sum(state.probabilities())) - 1.0), 1e-12))

    verdicts.append(Verdict.judge(
        "direct_vs_fourier", compare_direct_vs_fourier(init, tau, t_max), 1e-10))
    verdicts.append(Verdict.judge(
        "light_cone_tail", _fourier_tail(init, params, min(t_max, 64)), 1e-12))

    residual = 0.0
    for k in (-2.6, -1.3, 0.7, 1.9, math.pi):
        system = eigen_system(params, k)
        u_k = momentum_operator(params, k)
        for j in range(params.delta):
            vec = system.eigenvectors[:, j]
            residual = max(residual, float(np.linalg.norm(
                u_k @ vec - np.exp(1j * system.omegas[j]) * vec)))
    verdicts.append(Verdict.judge("eigen_equation_residual", residual, 1e-10))

    lam = np.linalg.eigvals(momentum_operator(params, 1.234))
    mult_err = abs(int(np.sum(np.abs(lam + 1.0) < 1e-8)) - (tau - 1))
    mult_err += abs(int(np.sum(np.abs(lam - 1.0) < 1e-8)) - 1)
    verdicts.append(Verdict.judge("pi_and_zero_phase_multiplicities", mult_err, 0.0))

    verdicts.append(Verdict.judge("theta_vs_quadrature", _theta_quadrature_error(tau), 1e-8))
    verdicts.append(Verdict.judge("f3_vs_projector_integral", _f3_projector_error(tau), 1e-8))

    omega = analytics.peak_velocities(tau)[1]
    verdicts.append(Verdict.judge(
        "v_right_equals_support_bound",
        abs(omega - analytics.WeakLimitModel(init, tau).omega), 0.0))

    taus = range(1, max(tau, 20) + 1)
    v_seq = [analytics.peak_velocities(t)[1] for t in taus]
    p_seq = [analytics.localization_probability_origin(StandardInit(1, 0), t) for t in taus]
    mono_ok = all(b > a for a, b in zip(v_seq, v_seq[1:])) and all(
        b < a for a, b in zip(p_seq, p_seq[1:]))
    verdicts.append(Verdict.judge("velocity_localization_monotonicity", 0.0 if mono_ok else 1.0, 0.0))

    body = analytics.WeakLimitModel(init, tau).continuous_mass(nodes=nodes)
    closure = analytics.total_localization(init, tau) + body
    verdicts.append(Verdict.judge("weak_limit_closure", abs(closure - 1.0), 1e-6))

    moments = (analytics.limit_moment(init, tau, 2, nodes=nodes)
               - analytics.limit_moment(init, tau, 1, nodes=nodes) ** 2)
    verdicts.append(Verdict.judge(
        "spread_coefficient_consistency",
        abs(analytics.spread_coefficient(init, tau) - moments), 1e-6))

    if t_max >= 100:
        loc = localization_series(init, tau, t_max)
        verdicts.append(Verdict.judge(
            "localization_window_mean",
            abs(loc.metrics["window_mean"] - loc.metrics["reference"]), 1e-2))

    return ExperimentReport(
        experiment="verification_suite",
        config=_config_echo(init, tau, steps=t_max),
        columns=("check", "measured", "tolerance", "passed"),
        rows=[(v.name, v.measured, v.tolerance, v.passed) for v in verdicts],
        verdicts=verdicts,
    )


def _theta_quadrature_error(tau: int) -> float:
    """Closed-form Thetas vs midpoint quadrature of their defining integrals."""
    ks, w = midpoint_rule(4096, -math.pi, math.pi)
    c = np.cos(ks)
    n3 = (1.0 + c) / (tau + 4.0 + tau * c)
    kap1 = 2.0 / (1.0 + np.exp(-1j * ks))
    kap2 = 2.0 / (1.0 + np.exp(1j * ks))
    th = analytics.theta_constants(tau)
    err1 = abs(float(np.sum(w * n3)) / (2 * math.pi) - th.theta1)
    err2 = abs(float(np.sum(w * (n3 * kap1 * kap2).real)) / (2 * math.pi) - th.theta2)
    err3 = abs(float(np.sum(w * (n3 * kap1 * kap1).real)) / (2 * math.pi) - th.theta3)
    return max(err1, err2, err3)


def _f3_projector_error(tau: int) -> float:
    """f3_matrix vs the momentum integral of the omega = 0 projector."""
    params = WalkParams(tau)
    ks, w = midpoint_rule(1024, -math.pi, math.pi)
    d = params.delta
    acc = np.zeros((d, d), dtype=np.complex128)
    for k, wk in zip(ks, w):
        vec = eigen_system(params, k).eigenvectors[:, 2]
        acc += wk * np.outer(vec, vec.conj())
    return float(np.max(np.abs(acc / (2 * math.pi) - analytics.f3_matrix(tau))))
