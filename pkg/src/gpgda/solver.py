"""Group proximal-gradient dual ascent (GPGDA) for health-aware antenna selection.

Gradients are returned as conjugate (Wirtinger) derivatives d f / d W*. For a
real function the steepest-ascent direction in the (Re W, Im W) coordinates is
twice that, and the primal step moves along this real gradient so that the
proximal threshold ``step_primal * weight`` is the exact forward-backward
pairing for the stated objective.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError, NumericError
from .metrics import _logdet_radar, all_sinr, objective, power_lhs, row_density, row_norms

log = logging.getLogger(__name__)

CONVERGED = "converged"
MAX_ITERS = "max-iters"
DIVERGED = "diverged"

INIT_SCHEMES = ("matched-filter", "seeded-random")


@dataclass(frozen=True)
class SolverOptions:
    # tuned for unit-variance channels and a 100 W budget
    step_primal: float = 2.0
    step_dual: float = 1e-3
    max_iters: int = 10_000
    tol_primal: float = 1e-6
    tol_constraint: float = 1e-4
    init_scheme: str = "matched-filter"
    seed: int = 0
    # fraction of the power budget used by the initial point
    init_power_fraction: float = 0.9
    backtracking: bool = False

    def __post_init__(self):
        for name in ("step_primal", "step_dual", "tol_primal", "tol_constraint"):
            if not getattr(self, name) > 0:
                raise InvalidArgumentError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.max_iters < 1:
            raise InvalidArgumentError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.init_scheme not in INIT_SCHEMES:
            raise InvalidArgumentError(
                f"init_scheme must be one of {INIT_SCHEMES}, got {self.init_scheme!r}"
            )
        if not 0 < self.init_power_fraction <= 1:
            raise InvalidArgumentError("init_power_fraction must lie in (0, 1]")


@dataclass
class DualState:
    lam: float = 0.0
    mu: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @classmethod
    def zeros(cls, m):
        return cls(0.0, np.zeros(m))

    def copy(self):
        return DualState(self.lam, self.mu.copy())


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    lagrangian: float
    objective: float
    power_violation: float
    rate_violation: float
    density_pct: float
    lam: float
    max_mu: float
    rel_change: float


@dataclass
class SolveTrace:
    records: list = field(default_factory=list)
    status: str = MAX_ITERS

    def __len__(self):
        return len(self.records)

    def column(self, name):
        return np.array([getattr(r, name) for r in self.records])


@dataclass
class SolveResult:
    w: np.ndarray
    duals: DualState
    trace: SolveTrace

    @property
    def status(self):
        return self.trace.status

    @property
    def converged(self):
        return self.trace.status == CONVERGED


# -- gradients ---------------------------------------------------------------


def grad_radar(w, r, sigma_r2, rho_r):
    """Conjugate gradient of rho_r ln det(I + R W W^H / sigma_r2)."""
    n_t = w.shape[0]
    y = np.eye(n_t) + (r @ w @ w.conj().T) / sigma_r2
    try:
        g = np.linalg.solve(y, r @ w)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"radar gradient solve failed: {exc}") from None
    return (rho_r / sigma_r2) * g


def grad_comm(w, instance, mu):
    """Conjugate gradient of sum_m mu_m ln(1 + gamma_m).

    With S_m the total received power plus noise and I_m = S_m - |h_m^H w_m|^2,
    ln(1 + gamma_m) = ln S_m - ln I_m, so beam j contributes h_m h_m^H w_j / S_m
    and, for j != m, the interference part -h_m h_m^H w_j / I_m.
    """
    h = instance.h
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (w.shape[1],):
        raise InvalidArgumentError(f"mu must have {w.shape[1]} entries, got {mu.shape}")
    if not mu.any():
        return np.zeros_like(w)
    a = h.conj().T @ w  # a[m, j] = h_m^H w_j
    gains = np.abs(a) ** 2
    total = gains.sum(axis=1) + instance.config.sigma_c2
    interference = total - np.diag(gains)
    m = w.shape[1]
    coef = np.broadcast_to((mu / total)[:, None], (m, m)).copy()
    off = ~np.eye(m, dtype=bool)
    coef[off] -= np.broadcast_to((mu / interference)[:, None], (m, m))[off]
    return h @ (a * coef)


def grad_power_smooth(w, lam, eta_pa):
    """Conjugate gradient of lam * ||W||_F^2 / eta_pa (subtracted by the caller)."""
    return (lam / eta_pa) * w


def smooth_lagrangian(instance, w, duals):
    """Radar term + mu-weighted rates - lam-weighted quadratic power (constants dropped)."""
    cfg = instance.config
    mui = _logdet_radar(instance.radar_covariance, w, cfg.sigma_r2)
    rates = np.log1p(all_sinr(instance.h, w, cfg.sigma_c2))
    return cfg.rho_r * mui + float(duals.mu @ rates) - duals.lam * float(np.sum(np.abs(w) ** 2)) / cfg.eta_pa


def grad_smooth_lagrangian(instance, w, duals):
    cfg = instance.config
    return (
        grad_radar(w, instance.radar_covariance, cfg.sigma_r2, cfg.rho_r)
        + grad_comm(w, instance, duals.mu)
        - grad_power_smooth(w, duals.lam, cfg.eta_pa)
    )


# -- proximal and dual steps -------------------------------------------------


def prox_row(v, threshold):
    """Group soft-thresholding: argmin_x 0.5 ||x - v||^2 + threshold ||x||_2."""
    v = np.asarray(v)
    norm = float(np.linalg.norm(v))
    if norm <= threshold:
        return np.zeros_like(v)
    return (1.0 - threshold / norm) * v


def row_thresholds(instance, lam, step):
    cfg = instance.config
    return step * (cfg.rho_s * (1.0 - instance.beta) + lam * cfg.p_a)


def _prox_rows(v, thresholds):
    norms = row_norms(v)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(norms > thresholds, 1.0 - thresholds / norms, 0.0)
    return v * scale[:, None]


def primal_step(w, instance, duals, options, step=None):
    """Gradient ascent on the smooth Lagrangian followed by per-row shrinkage."""
    step = options.step_primal if step is None else step
    g = grad_smooth_lagrangian(instance, w, duals)
    if not np.all(np.isfinite(g)):
        raise FloatingPointError("non-finite gradient")
    v = w + step * 2.0 * g
    return _prox_rows(v, row_thresholds(instance, duals.lam, step))


def dual_update_lambda(lam, step_dual, power_lhs_value, p_tot):
    return max(0.0, lam + step_dual * (power_lhs_value - p_tot))


def dual_update_mu(mu_j, step_dual, r_min_j_nats, rate_j_nats):
    return max(0.0, mu_j + step_dual * (r_min_j_nats - rate_j_nats))


# -- driver ------------------------------------------------------------------


def _scale_to_budget(w, instance, fraction):
    """Rescale ``w`` so that power_lhs equals ``fraction * p_tot``."""
    cfg = instance.config
    quad = float(np.sum(np.abs(w) ** 2)) / cfg.eta_pa
    lin = cfg.p_a * float(np.sum(row_norms(w)))
    target = fraction * cfg.p_tot
    if quad == 0.0:
        return w
    c = (-lin + math.sqrt(lin * lin + 4.0 * quad * target)) / (2.0 * quad)
    return c * w


def initial_point(instance, options):
    cfg = instance.config
    if options.init_scheme == "matched-filter":
        h = instance.h
        norms = np.linalg.norm(h, axis=0)
        w = h / np.where(norms > 0, norms, 1.0)
    else:
        rng = np.random.default_rng(options.seed)
        w = rng.standard_normal((cfg.n_t, cfg.m)) + 1j * rng.standard_normal((cfg.n_t, cfg.m))
    return _scale_to_budget(w, instance, options.init_power_fraction)


def _composite(instance, w, duals):
    # smooth part minus the nonsmooth row penalties handled by the prox
    cfg = instance.config
    weights = cfg.rho_s * (1.0 - instance.beta) + duals.lam * cfg.p_a
    return smooth_lagrangian(instance, w, duals) - float(weights @ row_norms(w))


def gpgda_solve(instance, options=None, w0=None):
    """Run GPGDA from the configured initial point (or ``w0``)."""
    options = options or SolverOptions()
    cfg = instance.config
    w = initial_point(instance, options) if w0 is None else np.array(w0, dtype=complex)
    duals = DualState.zeros(cfg.m)
    r_min_nats = cfg.r_min_nats
    trace = SolveTrace()
    step = options.step_primal

    for it in range(1, options.max_iters + 1):
        try:
            with np.errstate(over="raise", invalid="raise"):
                w_new = primal_step(w, instance, duals, options, step)
                if options.backtracking:
                    base = _composite(instance, w, duals)
                    while _composite(instance, w_new, duals) < base and step > 1e-12:
                        step *= 0.5
                        w_new = primal_step(w, instance, duals, options, step)
        except (FloatingPointError, NumericError) as exc:
            log.warning("iteration %d diverged: %s", it, exc)
            trace.status = DIVERGED
            break
        if not np.all(np.isfinite(w_new)):
            trace.status = DIVERGED
            break

        p_val = power_lhs(w_new, cfg.eta_pa, cfg.p_a)
        rates = np.log1p(all_sinr(instance.h, w_new, cfg.sigma_c2))
        lam = dual_update_lambda(duals.lam, options.step_dual, p_val, cfg.p_tot)
        mu = np.array(
            [dual_update_mu(duals.mu[j], options.step_dual, r_min_nats[j], rates[j]) for j in range(cfg.m)]
        )

        denom = max(float(np.linalg.norm(w)), np.finfo(float).tiny)
        rel_change = float(np.linalg.norm(w_new - w)) / denom
        power_violation = max(0.0, p_val - cfg.p_tot)
        rate_violation = float(np.max(np.maximum(0.0, np.asarray(cfg.r_min) - rates / math.log(2.0))))
        new_duals = DualState(lam, mu)
        if not (math.isfinite(lam) and np.all(np.isfinite(mu))):
            trace.status = DIVERGED
            break

        w, duals = w_new, new_duals
        trace.records.append(
            IterationRecord(
                iteration=it,
                lagrangian=smooth_lagrangian(instance, w, duals),
                objective=objective(instance, w),
                power_violation=power_violation,
                rate_violation=rate_violation,
                density_pct=row_density(w),
                lam=lam,
                max_mu=float(mu.max(initial=0.0)),
                rel_change=rel_change,
            )
        )
        if (
            rel_change < options.tol_primal
            and power_violation < options.tol_constraint
            and rate_violation < options.tol_constraint
        ):
            trace.status = CONVERGED
            break
    else:
        trace.status = MAX_ITERS

    return SolveResult(w, duals, trace)
