# ---------------------------------------------------------------------------- #
#  pcli-lab                                                                    #
#  copyright (c) pcli-lab authors 2026                                         #
#                                                                              #
#  licensed under the apache license, version 2.0 (the "license");             #
#  you may not use this file except in compliance with the license.            #
#                                                                              #
#  you may obtain a copy of the license at                                     #
#                                                                              #
#                  http://www.apache.org/licenses/license-2.0                  #
#                                                                              #
#  unless required by applicable law or agreed to in writing, software         #
#  distributed under the license is distributed on an "as is" basis,           #
#  without warranties or conditions of any kind, either express or implied.    #
#  see the license for the specific language governing permissions and         #
#  limitations under the license.                                              #
# ---------------------------------------------------------------------------- #
"""Experiment registry tying the bounds to runnable checks.

Every experiment takes an ``ExperimentConfig`` and returns an
``ExperimentReport``. Independent cells (schedule x condition number) go
through a ``CellQueue``; rows are sorted canonically when written.
"""

import functools
import math
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from pcli_lab.algos import (
    StationaryAGDSchedule,
    StochasticMethod,
    StochasticMethodConfig,
    agd_smooth_schedule,
    agd_stationary_schedule,
    expected_schedule,
    expected_update,
    gd_schedule,
    heavy_ball_schedule,
    monte_carlo_moments,
    stochastic_run,
)
from pcli_lab.bounds import (
    Interval,
    brute_force_minmax,
    lb_smooth,
    lb_strongly_convex,
    lemma_b3_check,
    residual_max,
    weighted_residual_max,
)
from pcli_lab.instances import (
    finite_sum_split,
    hard_instance,
    spectrum_instance,
    suboptimality,
)
from pcli_lab.logger import init_logger
from pcli_lab.pcli import (
    CoefficientSchedule,
    PCLIState,
    SideInformation,
    iter_symbolic,
    iterate,
    residual_poly,
    run,
)
from pcli_lab.pcli.engine import max_point_difference
from pcli_lab.poly import (
    chebyshev_poly,
    chebyshev_value,
    optimal_residual_sc,
    optimal_residual_smooth,
)
from pcli_lab.restart import (
    NonConvergenceError,
    RateCertificate,
    epoch_log_frame,
    halving_check,
    restart_wrap,
)

from .config import EXPERIMENT_NAMES, ConfigError, ExperimentConfig
from .report import ExperimentReport, ReportRow
from .work_queue import CellQueue

logger = init_logger(__name__)

BOUND_TOLERANCE = 1e-12
OPTIMAL_RTOL = 1e-6
Z_LIMIT = 4.0
SLOPE_BAND = 0.1
FIT_MIN_TAIL = 32
# (C, alpha) for Nesterov's smooth method: f - f* <= 4 L R^2 / k^2
AGD_SMOOTH_CERTIFICATE = RateCertificate(C=4.0, alpha=2.0)

LEMMA_KAPPAS = (4.0, 25.0, 100.0)
LEMMA_MAX_K = 20
LEMMA_SMOOTH_MAX_K = 10
LEMMA_SAMPLES = 1000
LEMMA_CHUNK = 250
LEMMA_COEFF_BOX = 10.0
LEMMA_GRID = 100_000
BRUTE_FORCE_KAPPAS = (2.0, 5.0, 10.0)
CHEBYSHEV_MAX_K = 30


def side_information(cfg: ExperimentConfig, kappa: float) -> SideInformation:
    return SideInformation(L=cfg.L, mu=cfg.L / kappa)


def _sorted_ks(cfg: ExperimentConfig) -> List[int]:
    return sorted(set(cfg.k_list))


def _symbolic_residuals(sched, info, ks: Sequence[int]):
    """Yield (k, residual polynomial) for every k in ``ks``."""
    for traj in iter_symbolic(sched, info, [1.0], sched.p, 1):
        if traj.k in ks:
            yield traj.k, residual_poly(traj, 0)
        if traj.k >= ks[-1]:
            return


def _stochastic_config(
    cfg: ExperimentConfig, method: StochasticMethod, m: Optional[int] = None
) -> StochasticMethodConfig:
    settings = cfg.stochastic
    m = settings.m if m is None else m
    step = settings.step or 1.0 / (m * cfg.L)
    return StochasticMethodConfig(
        method=method,
        m=m,
        step=step,
        svrg_epoch=settings.svrg_epoch,
        seed=cfg.seed,
    )


def expected_schedules(
    cfg: ExperimentConfig,
) -> List[CoefficientSchedule]:
    """Expected SAG/SAGA steps on a random proportional split."""
    split = finite_sum_split(
        hard_instance(1, cfg.L, cfg.R), cfg.stochastic.m, seed=cfg.seed
    )
    return [
        expected_schedule(_stochastic_config(cfg, method), split.weights[:, 0])
        for method in (StochasticMethod.SAG, StochasticMethod.SAGA)
        if method in cfg.stochastic.methods
    ]


def sc_schedules(
    cfg: ExperimentConfig, info: SideInformation
) -> List[CoefficientSchedule]:
    return [
        gd_schedule(info, "inv_L"),
        gd_schedule(info, "two_over_sum"),
        heavy_ball_schedule(info),
        agd_stationary_schedule(info),
        agd_smooth_schedule(info.L),
    ] + expected_schedules(cfg)


def smooth_schedules(cfg: ExperimentConfig) -> List[CoefficientSchedule]:
    info = SideInformation(L=cfg.L)
    return [gd_schedule(info, "inv_L"), agd_smooth_schedule(cfg.L)]


def _witness_gap(
    cfg: ExperimentConfig,
    sched: CoefficientSchedule,
    info: SideInformation,
    k: int,
    eta: float,
) -> float:
    """f-gap of the numeric run on the hard instance at ``eta``."""
    inst = hard_instance(cfg.d, eta, cfg.R)
    traj = run(inst, sched, info, PCLIState.zeros(sched.p, cfg.d), k)
    return suboptimality(inst, traj.final.iterate)


def _witness_frame(records: List[tuple]) -> pd.DataFrame:
    return pd.DataFrame(
        records,
        columns=["label", "kappa", "k", "eta", "f_gap", "predicted"],
    ).sort_values(["label", "kappa", "k"], na_position="first")


# ----------------------------- LOWER BOUNDS ----------------------------- #
def exp_verify_lb_sc(cfg: ExperimentConfig) -> ExperimentReport:
    ks = _sorted_ks(cfg)

    def cell(job: Tuple[float, Optional[CoefficientSchedule]]):
        kappa, sched = job
        info = side_information(cfg, kappa)
        iv = Interval(info.mu, info.L)
        rows, witnesses = [], []
        if sched is None:
            for k in ks:
                if k < 1:
                    continue
                r = optimal_residual_sc(k - 1, info.mu, info.L)
                cert = residual_max(r, iv, cfg.n_grid)
                rows.append(
                    ReportRow.at_least(
                        "verify-lb-sc",
                        "chebyshev-optimal",
                        kappa,
                        k,
                        cert.value,
                        lb_strongly_convex(k, kappa),
                        BOUND_TOLERANCE,
                    )
                )
            return rows, witnesses
        for k, r in _symbolic_residuals(sched, info, ks):
            cert = residual_max(r, iv, cfg.n_grid)
            rows.append(
                ReportRow.at_least(
                    "verify-lb-sc",
                    sched.label,
                    kappa,
                    k,
                    cert.value,
                    lb_strongly_convex(k, kappa),
                    BOUND_TOLERANCE,
                )
            )
            eta = cert.argmax_eta
            witnesses.append(
                (
                    sched.label,
                    kappa,
                    k,
                    eta,
                    _witness_gap(cfg, sched, info, k, eta),
                    0.5 * eta * cfg.R**2 * r(eta) ** 2,
                )
            )
        return rows, witnesses

    jobs = []
    for kappa in cfg.kappa_list:
        info = side_information(cfg, kappa)
        jobs.append((kappa, None))
        jobs.extend((kappa, sched) for sched in sc_schedules(cfg, info))
    return _collect("verify-lb-sc", CellQueue().run_sync(cell, jobs))


def exp_verify_lb_smooth(cfg: ExperimentConfig) -> ExperimentReport:
    ks = _sorted_ks(cfg)
    info = SideInformation(L=cfg.L)
    half_r2 = 0.5 * cfg.R**2

    def bound(k: int) -> float:
        return half_r2 * lb_smooth(max(k - 1, 0), cfg.L)

    def cell(sched: Optional[CoefficientSchedule]):
        rows, witnesses = [], []
        if sched is None:
            for k in ks:
                if k < 1:
                    continue
                r = optimal_residual_smooth(k - 1, cfg.L)
                cert = weighted_residual_max(r, cfg.L, cfg.n_grid)
                rows.append(
                    ReportRow.at_least(
                        "verify-lb-smooth",
                        "chebyshev-optimal",
                        None,
                        k,
                        half_r2 * cert.value,
                        bound(k),
                        OPTIMAL_RTOL * bound(k),
                    )
                )
            return rows, witnesses
        for k, r in _symbolic_residuals(sched, info, ks):
            cert = weighted_residual_max(r, cfg.L, cfg.n_grid)
            rows.append(
                ReportRow.at_least(
                    "verify-lb-smooth",
                    sched.label,
                    None,
                    k,
                    half_r2 * cert.value,
                    bound(k),
                    BOUND_TOLERANCE,
                )
            )
            eta = cert.argmax_eta
            if eta > 0.0:
                witnesses.append(
                    (
                        sched.label,
                        None,
                        k,
                        eta,
                        _witness_gap(cfg, sched, info, k, eta),
                        half_r2 * eta * r(eta) ** 2,
                    )
                )
        return rows, witnesses

    jobs = [None] + smooth_schedules(cfg)
    return _collect("verify-lb-smooth", CellQueue().run_sync(cell, jobs))


def _collect(name: str, results) -> ExperimentReport:
    report = ExperimentReport()
    witnesses = []
    for rows, cell_witnesses in results:
        report.extend(rows)
        witnesses.extend(cell_witnesses)
    if witnesses:
        report.extras[f"{name}.witness"] = _witness_frame(witnesses)
    return report


def exp_lemma_b3(cfg: ExperimentConfig) -> ExperimentReport:
    """Near-L dichotomy verdict for every schedule that only reads L."""
    ks = _sorted_ks(cfg)
    info = SideInformation(L=cfg.L)

    def cell(sched: CoefficientSchedule) -> List[ReportRow]:
        rows = []
        for k, r in _symbolic_residuals(sched, info, ks):
            verdict = lemma_b3_check(
                r, cfg.L, 0.5 * cfg.L, cfg.n_grid, exponent=max(k, 1)
            )
            measured = verdict.gap if verdict.gap is not None else 0.0
            rows.append(
                ReportRow.at_least(
                    "lemma-b3",
                    f"{sched.label}:{verdict.outcome.name}",
                    None,
                    k,
                    measured,
                    0.0,
                )
            )
            logger.debug(
                f"{sched.label} k={k}: {verdict.outcome.name} "
                f"(eta={verdict.eta})"
            )
        return rows

    report = ExperimentReport()
    for rows in CellQueue().run_sync(cell, smooth_schedules(cfg)):
        report.extend(rows)
    return report


# ----------------------------- RATES ----------------------------- #
def iterations_to_eps(gaps: Iterable[float], eps: float) -> int:
    """1 + the last index whose gap is at least ``eps`` (0 if none)."""
    above = np.flatnonzero(np.asarray(list(gaps), dtype=float) >= eps)
    return 0 if above.size == 0 else int(above[-1]) + 1


def relative_gap(R: float) -> Callable[[np.ndarray], float]:
    """Worst relative bias gap over the coordinates of a sweep instance.

    On coordinate c the gap is 1/2 eta_c (x_c - R)^2, relative to the
    starting gap 1/2 eta_c R^2 this is r(eta_c)^2.
    """

    def gap(x: np.ndarray) -> float:
        if not np.all(np.isfinite(x)):
            return math.inf
        return float(np.max(((x - R) / R) ** 2))

    return gap


def _count_iterations(
    iterates: Iterable[np.ndarray],
    gap_fn: Callable[[np.ndarray], float],
    eps: float,
    max_iterations: int,
) -> Tuple[int, bool]:
    """Iterations to eps on a stream, and whether the count is unreliable.

    The stream stops once the gap has stayed below eps for the longer of
    FIT_MIN_TAIL steps and a quarter of the count so far.
    """
    last = -1
    for k, x in enumerate(iterates):
        gap = gap_fn(x)
        if math.isinf(gap):
            logger.warning(f"iterate diverged at k={k}")
            return k, True
        if gap >= eps:
            last = k
        if k - last > max(FIT_MIN_TAIL, last // 4):
            return last + 1, False
        if k >= max_iterations:
            return last + 1, True
    return last + 1, True


def _sweep_instance(cfg: ExperimentConfig, info: SideInformation):
    etas = np.geomspace(info.mu, info.L, cfg.rate_fit.n_eta)
    return spectrum_instance(etas, cfg.R)


def _plain_iterations(
    cfg: ExperimentConfig,
    sched: CoefficientSchedule,
    run_info: SideInformation,
    true_info: SideInformation,
) -> Tuple[int, bool]:
    """Iterations to eps of ``sched`` tuned with ``run_info``."""
    inst = _sweep_instance(cfg, true_info)
    init = PCLIState.zeros(sched.p, inst.d)
    states = iterate(inst.gradient, sched, run_info, init)
    return _count_iterations(
        (state.iterate for state in states),
        relative_gap(cfg.R),
        cfg.eps,
        cfg.rate_fit.max_iterations,
    )


def _restarted_iterations(
    cfg: ExperimentConfig, info: SideInformation
) -> Tuple[int, bool]:
    inst = _sweep_instance(cfg, info)
    gap_fn = relative_gap(cfg.R)
    try:
        result = restart_wrap(
            inst,
            agd_smooth_schedule(info.L),
            AGD_SMOOTH_CERTIFICATE,
            info,
            cfg.eps,
            np.zeros(inst.d),
            gap_fn=gap_fn,
            max_iterations=cfg.rate_fit.max_iterations,
        )
    except NonConvergenceError as e:
        logger.warning(f"restarted run did not converge: {e}")
        return cfg.rate_fit.max_iterations, True
    return iterations_to_eps(map(gap_fn, result.iterates()), cfg.eps), False


RATE_FIT_EXPONENTS = {
    "gd-inv-L": 1.0,
    "agd-stationary": 0.5,
    "agd-smooth-restarted": 0.5,
}


def _rate_cell(cfg: ExperimentConfig, label: str, kappa: float):
    info = side_information(cfg, kappa)
    if label == "gd-inv-L":
        return _plain_iterations(cfg, gd_schedule(info, "inv_L"), info, info)
    if label == "agd-stationary":
        return _plain_iterations(cfg, agd_stationary_schedule(info), info, info)
    return _restarted_iterations(cfg, info)


def fit_exponent(
    kappas: Sequence[float], iterations: Sequence[int]
) -> Tuple[float, float, float]:
    """Least-squares slope, intercept and RMS residual in log-log."""
    x = np.log(np.asarray(kappas, dtype=float))
    y = np.log(np.maximum(np.asarray(iterations, dtype=float), 1.0))
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return float(slope), float(intercept), residual


def exp_rate_fit(cfg: ExperimentConfig) -> ExperimentReport:
    kappas = sorted(set(cfg.kappa_list))
    if len(kappas) < 3 or kappas[-1] / kappas[0] < 100.0:
        logger.error(f"rate fit needs a wider kappa range, got {kappas}")
        raise ConfigError(
            "rate-fit needs at least 3 condition numbers spanning 2 decades"
        )
    cap = cfg.rate_fit.max_iterations
    jobs = [(label, kappa) for label in RATE_FIT_EXPONENTS for kappa in kappas]
    counts = CellQueue().run_sync(lambda job: _rate_cell(cfg, *job), jobs)

    report = ExperimentReport()
    fits = []
    by_label: Dict[str, List[int]] = {label: [] for label in RATE_FIT_EXPONENTS}
    for (label, kappa), (iterations, unreliable) in zip(jobs, counts):
        by_label[label].append(iterations)
        report.rows.append(
            ReportRow.with_margin(
                "rate-fit",
                label,
                kappa,
                None,
                iterations,
                cap,
                -1.0 if unreliable else cap - iterations,
            )
        )
    for label, expected in RATE_FIT_EXPONENTS.items():
        slope, intercept, residual = fit_exponent(kappas, by_label[label])
        logger.info(
            f"{label}: iterations ~ kappa^{slope:.3f} "
            f"(expected {expected}, rms residual {residual:.3g})"
        )
        fits.append((label, slope, intercept, residual, expected))
        report.rows.append(
            ReportRow.with_margin(
                "rate-fit",
                f"{label}:slope",
                None,
                None,
                slope,
                expected,
                SLOPE_BAND - abs(slope - expected),
            )
        )
    report.extras["rate-fit.fit"] = pd.DataFrame(
        fits, columns=["label", "slope", "intercept", "residual", "expected"]
    )
    return report


def exp_side_info(cfg: ExperimentConfig) -> ExperimentReport:
    """Tuned AGD beats GD; AGD tuned with a far too small mu does not."""

    def cell(kappa: float) -> List[ReportRow]:
        info = side_information(cfg, kappa)
        guessed = SideInformation(L=info.L, mu=info.mu**2 / (16.0 * info.L))
        gd, _ = _plain_iterations(cfg, gd_schedule(info, "inv_L"), info, info)
        tuned, _ = _plain_iterations(
            cfg, agd_stationary_schedule(info), info, info
        )
        misspecified, _ = _plain_iterations(
            cfg, StationaryAGDSchedule("agd-misspecified"), guessed, info
        )
        return [
            ReportRow.at_most(
                "side-info", "agd-stationary", kappa, None, tuned, gd
            ),
            ReportRow.at_least(
                "side-info", "agd-misspecified", kappa, None, misspecified, gd
            ),
        ]

    report = ExperimentReport()
    for rows in CellQueue().run_sync(cell, sorted(set(cfg.kappa_list))):
        report.extend(rows)
    return report


# ----------------------------- STOCHASTIC ----------------------------- #
def z_scores(
    mean: np.ndarray, expected: np.ndarray, se: np.ndarray
) -> np.ndarray:
    """(mean - expected) / se; deterministic coordinates must match.

    A mean within summation rounding of its expectation scores 0 even when
    rounding left a tiny nonzero ``se`` behind.
    """
    diff = mean - expected
    exact = np.abs(diff) <= 1e-12 * (1.0 + np.abs(expected))
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(exact, 0.0, np.where(se > 0.0, diff / se, np.inf))
    return z


def exp_stochastic(cfg: ExperimentConfig) -> ExperimentReport:
    settings = cfg.stochastic
    kappa = cfg.kappa_list[0]
    info = side_information(cfg, kappa)
    inst = spectrum_instance(np.geomspace(info.mu, info.L, cfg.d), cfg.R)
    split = finite_sum_split(inst, settings.m, seed=cfg.seed)
    report = ExperimentReport()

    for method in settings.methods:
        scfg = _stochastic_config(cfg, method)
        ks = sorted(
            k
            for k in set(settings.steps)
            if method != StochasticMethod.SVRG or k < scfg.svrg_epoch
        )
        if not ks:
            continue
        init = PCLIState.zeros(scfg.p, inst.d)
        moments = monte_carlo_moments(
            scfg, split, init, ks, settings.replicates
        )
        update = expected_update(scfg, split)
        start = np.stack(init.points)
        for k in ks:
            mean, se = moments[k]
            z = z_scores(mean, update.power_apply(start, k), se)
            worst_z = float(np.max(np.abs(z)))
            report.rows.append(
                ReportRow.at_most(
                    "stochastic",
                    scfg.label,
                    kappa,
                    k,
                    worst_z,
                    Z_LIMIT,
                )
            )
            logger.info(f"{scfg.label} k={k}: max |z| = {worst_z:.2f}")

    # a single component turns SAG into gradient descent
    K = max(settings.steps)
    single = _stochastic_config(cfg, StochasticMethod.SAG, m=1)
    sag = stochastic_run(
        single, finite_sum_split(inst, 1), PCLIState.zeros(2, inst.d), K
    )
    gd = run(
        inst,
        gd_schedule(info, "fixed", step=single.step),
        info,
        PCLIState.zeros(1, inst.d),
        K,
    )
    diff = float(np.max(np.abs(sag.iterates() - gd.iterates())))
    report.rows.append(
        ReportRow.at_most("stochastic", "sag-m1-vs-gd", kappa, K, diff, 0.0)
    )
    return report


# ----------------------------- RESTART ----------------------------- #
def exp_restart(cfg: ExperimentConfig) -> ExperimentReport:
    settings = cfg.restart
    cert = RateCertificate(C=settings.C, alpha=settings.alpha)
    report = ExperimentReport()
    logs = []

    for kappa in settings.kappa_list:
        info = side_information(cfg, kappa)
        inst = hard_instance(cfg.d, info.mu, cfg.R)
        x0 = np.zeros(cfg.d)
        result = restart_wrap(
            inst,
            agd_smooth_schedule(info.L),
            cert,
            info,
            settings.target_eps,
            x0,
        )
        verdict = halving_check(result.epochs)
        report.rows.append(
            ReportRow.at_most(
                "restart",
                "agd-smooth:halving",
                kappa,
                len(result.epochs) - 1,
                verdict.worst_ratio,
                0.5,
                0.5 * 1e-6,
            )
        )
        start_gap = result.epochs[0].suboptimality
        allowed = (
            1.5
            * (4.0 * cert.C * kappa) ** (1.0 / cert.alpha)
            * math.log2(start_gap / settings.target_eps)
        )
        report.rows.append(
            ReportRow.at_most(
                "restart",
                "agd-smooth:iterations",
                kappa,
                result.total_iterations,
                result.total_iterations,
                allowed,
            )
        )
        frame = epoch_log_frame(result.epochs)
        frame.insert(0, "kappa", kappa)
        logs.append(frame)

    # stationary bases: restarting changes nothing
    kappa = settings.kappa_list[0]
    info = side_information(cfg, kappa)
    inst = hard_instance(cfg.d, info.mu, cfg.R)
    x0 = np.zeros(cfg.d)
    for base in (gd_schedule(info, "inv_L"), heavy_ball_schedule(info)):
        wrapped = restart_wrap(inst, base, cert, info, settings.target_eps, x0)
        plain = run(
            inst,
            base,
            info,
            PCLIState.replicate(x0, base.p),
            wrapped.total_iterations,
        )
        gap = max_point_difference(wrapped.states, plain.states)
        report.rows.append(
            ReportRow.at_most(
                "restart",
                f"{base.label}:fixed-point",
                kappa,
                wrapped.total_iterations,
                gap,
                0.0,
            )
        )
    report.extras["epochs"] = pd.concat(logs, ignore_index=True)
    return report


# ----------------------------- POLYNOMIALS ----------------------------- #
def random_residual_maxima(
    rng: np.random.Generator,
    s_degree: int,
    eta: np.ndarray,
    samples: int,
    weighted: bool = False,
) -> np.ndarray:
    """Mesh maxima of |1 + eta s(eta)| for random s of degree ``s_degree``.

    The coefficients of s are uniform in [-LEMMA_COEFF_BOX, LEMMA_COEFF_BOX].
    With ``weighted`` the objective is eta * (1 + eta s(eta))**2. A mesh
    maximum never exceeds the true maximum, so it is a safe witness for
    lower-bound checks.
    """
    maxima = np.empty(samples)
    for start in range(0, samples, LEMMA_CHUNK):
        rows = min(LEMMA_CHUNK, samples - start)
        coef = rng.uniform(
            -LEMMA_COEFF_BOX, LEMMA_COEFF_BOX, size=(rows, s_degree + 1)
        )
        s = np.repeat(coef[:, -1:], eta.size, axis=1)
        for j in range(s_degree - 1, -1, -1):
            s = s * eta + coef[:, j : j + 1]
        r = 1.0 + eta * s
        objective = eta * r**2 if weighted else np.abs(r)
        maxima[start : start + rows] = objective.max(axis=1)
    return maxima


def chebyshev_consistency() -> float:
    x = np.linspace(-1.0, 5.0, 2000)
    worst = 0.0
    for k in range(CHEBYSHEV_MAX_K + 1):
        built = chebyshev_poly(k)(x)
        closed = chebyshev_value(k, x)
        err = np.abs(built - closed) / np.maximum(np.abs(closed), 1.0)
        worst = max(worst, float(err.max()))
    return worst


def _strongly_convex_rows(
    cfg: ExperimentConfig, rng: np.random.Generator
) -> List[ReportRow]:
    rows = []
    at_least = functools.partial(ReportRow.at_least, "lemmas")
    at_most = functools.partial(ReportRow.at_most, "lemmas")
    for kappa in LEMMA_KAPPAS:
        # random residuals on [1, kappa]
        mesh = Interval(1.0, kappa).mesh(cfg.n_grid)
        for s_degree in range(LEMMA_MAX_K):
            maxima = random_residual_maxima(
                rng, s_degree, mesh, LEMMA_SAMPLES
            )
            rows.append(
                at_least(
                    "sc-universality",
                    kappa,
                    s_degree + 1,
                    float(maxima.min()),
                    lb_strongly_convex(s_degree + 1, kappa),
                    BOUND_TOLERANCE,
                )
            )

        mu, L = 1.0 / kappa, 1.0
        iv = Interval(mu, L)
        argument = (kappa + 1.0) / (kappa - 1.0)
        for k in range(LEMMA_MAX_K + 1):
            optimal = residual_max(
                optimal_residual_sc(k, mu, L), iv, LEMMA_GRID
            ).value
            exact = 1.0 / chebyshev_value(k + 1, argument)
            rows.append(
                at_most(
                    "sc-optimal-value",
                    kappa,
                    k,
                    abs(optimal - exact),
                    OPTIMAL_RTOL,
                )
            )
            bound = 2.0 * lb_strongly_convex(k + 1, kappa)
            rows.append(
                at_most(
                    "sc-optimal-tightness",
                    kappa,
                    k,
                    optimal,
                    bound,
                    BOUND_TOLERANCE * bound,
                )
            )
    return rows


def _smooth_rows(
    cfg: ExperimentConfig, rng: np.random.Generator
) -> List[ReportRow]:
    rows = []
    mesh = Interval(0.0, 1.0).mesh(cfg.n_grid)
    for k in range(LEMMA_SMOOTH_MAX_K + 1):
        maxima = random_residual_maxima(
            rng, k, mesh, LEMMA_SAMPLES, weighted=True
        )
        rows.append(
            ReportRow.at_least(
                "lemmas",
                "smooth-universality",
                None,
                k,
                float(maxima.min()),
                lb_smooth(k, 1.0),
                BOUND_TOLERANCE,
            )
        )
    for k in range(LEMMA_MAX_K + 1):
        optimal = weighted_residual_max(
            optimal_residual_smooth(k, 1.0), 1.0, cfg.n_grid
        ).value
        rows.append(
            ReportRow.at_most(
                "lemmas",
                "smooth-optimal-value",
                None,
                k,
                abs(optimal - lb_smooth(k, 1.0)),
                OPTIMAL_RTOL,
            )
        )
    return rows


def _brute_force_rows() -> List[ReportRow]:
    rows = []
    for kappa in BRUTE_FORCE_KAPPAS:
        iv = Interval(1.0 / kappa, 1.0)
        exact = (kappa - 1.0) / (kappa + 1.0)
        found = brute_force_minmax(1, iv, 4.0, 401, 2001).value
        rows.append(
            ReportRow.at_most(
                "lemmas",
                "brute-force-degree-1",
                kappa,
                1,
                abs(found - exact) / exact,
                0.01,
            )
        )
        exact = 1.0 / chebyshev_value(2, (kappa + 1.0) / (kappa - 1.0))
        found = brute_force_minmax(2, iv, 8.0, 400, 401).value
        rows.append(
            ReportRow.at_most(
                "lemmas",
                "brute-force-degree-2",
                kappa,
                2,
                abs(found - exact) / exact,
                0.02,
            )
        )
    return rows


def exp_lemmas(cfg: ExperimentConfig) -> ExperimentReport:
    """Polynomial facts underneath the lower bounds, as report rows."""
    rng = np.random.default_rng(cfg.seed)
    report = ExperimentReport()
    report.rows.append(
        ReportRow.at_most(
            "lemmas",
            "chebyshev-consistency",
            None,
            CHEBYSHEV_MAX_K,
            chebyshev_consistency(),
            1e-9,
        )
    )
    report.extend(_strongly_convex_rows(cfg, rng))
    report.extend(_smooth_rows(cfg, rng))
    report.extend(_brute_force_rows())
    return report


EXPERIMENTS: Dict[str, Callable[[ExperimentConfig], ExperimentReport]] = {
    "verify-lb-sc": exp_verify_lb_sc,
    "verify-lb-smooth": exp_verify_lb_smooth,
    "rate-fit": exp_rate_fit,
    "lemma-b3": exp_lemma_b3,
    "stochastic": exp_stochastic,
    "restart": exp_restart,
    "lemmas": exp_lemmas,
    "side-info": exp_side_info,
}


def run_experiments(
    cfg: ExperimentConfig, names: Optional[Sequence[str]] = None
) -> ExperimentReport:
    if names is None:
        names = (
            list(EXPERIMENTS) if cfg.experiment == "all" else [cfg.experiment]
        )
    report = ExperimentReport()
    for name in names:
        if name not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {name!r}")
        logger.info(f"Running experiment {name}")
        part = EXPERIMENTS[name](cfg)
        failed = len(part.failures)
        logger.info(
            f"Experiment {name}: {len(part.rows)} rows, {failed} failed"
        )
        report = report.merge(part)
    return report
