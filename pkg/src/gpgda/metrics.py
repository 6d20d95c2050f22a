"""Scalar performance measures of a beamforming matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidArgumentError, NumericError

DEFAULT_EPS_REL = 1e-6


@dataclass(frozen=True)
class MetricsRow:
    """One row of the performance table.

    Units: avg_se bits/s/Hz, avg_rate bits/s, mui nats, power_w W, percentages in [0, 100].
    """

    avg_se: float
    avg_rate: float
    reliability_pct: float
    mui: float
    density_pct: float
    power_w: float
    rho_s: float


def as_weights(w, instance=None):
    w = np.asarray(w, dtype=complex)
    if w.ndim != 2:
        raise InvalidArgumentError(f"beamforming matrix must be 2-D, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise InvalidArgumentError("beamforming matrix has non-finite entries")
    if instance is not None and w.shape != (instance.config.n_t, instance.config.m):
        raise InvalidArgumentError(
            f"beamforming matrix shape {w.shape} != ({instance.config.n_t}, {instance.config.m})"
        )
    return w


def all_sinr(h, w, sigma_c2):
    """SINR of every user; ``h`` and ``w`` are n_t x m with matching columns."""
    gains = np.abs(h.conj().T @ w) ** 2  # gains[m, j] = |h_m^H w_j|^2
    signal = np.diag(gains)
    interference = gains.sum(axis=1) - signal
    return signal / (interference + sigma_c2)


def sinr(instance, w, m_idx):
    """SINR of user ``m_idx``: own-beam gain over other-beam leakage plus noise."""
    w = as_weights(w, instance)
    if not 0 <= m_idx < instance.config.m:
        raise InvalidArgumentError(f"user index {m_idx} out of range [0, {instance.config.m})")
    h_m = instance.h[:, m_idx]
    gains = np.abs(h_m.conj() @ w) ** 2
    return float(gains[m_idx] / (gains.sum() - gains[m_idx] + instance.config.sigma_c2))


def user_rate(gamma):
    """Spectral efficiency log2(1 + gamma) in bits/s/Hz."""
    return float(np.log2(1.0 + gamma))


def _logdet_radar(r, w, sigma_r2):
    # det(I + R W W^H / s) = det(I_m + W^H R W / s); the right side is Hermitian >= I
    gram = np.eye(w.shape[1]) + (w.conj().T @ r @ w) / sigma_r2
    gram = 0.5 * (gram + gram.conj().T)
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"Cholesky factorization failed: {exc}") from None
    return float(2.0 * np.sum(np.log(np.real(np.diag(chol)))))


def radar_mutual_information(r, w, sigma_r2):
    """ln det(I + R W W^H / sigma_r2), in nats."""
    r = np.asarray(r, dtype=complex)
    w = as_weights(w)
    if not sigma_r2 > 0:
        raise DomainError(f"sigma_r2 must be > 0, got {sigma_r2}")
    trace = float(np.real(np.trace(r)))
    if np.linalg.eigvalsh(0.5 * (r + r.conj().T)).min() < -1e-8 * max(abs(trace), 0.0):
        raise DomainError("radar covariance is not positive semidefinite")
    return max(_logdet_radar(r, w, sigma_r2), 0.0)


def transmit_power(w):
    return float(np.sum(np.abs(w) ** 2))


def row_norms(w):
    return np.linalg.norm(w, axis=1)


def power_lhs(w, eta_pa, p_a):
    """Budget usage: radiated power over PA efficiency plus P_A per unit row norm."""
    w = as_weights(w)
    return transmit_power(w) / eta_pa + p_a * float(np.sum(row_norms(w)))


def active_rows(w, epsilon_rel=DEFAULT_EPS_REL):
    norms = row_norms(np.asarray(w))
    peak = norms.max(initial=0.0)
    if peak == 0.0:
        return np.zeros(norms.shape, dtype=bool)
    return norms > epsilon_rel * peak


def row_density(w, epsilon_rel=DEFAULT_EPS_REL):
    """Percentage of antennas whose row norm exceeds ``epsilon_rel`` times the largest."""
    active = active_rows(as_weights(w), epsilon_rel)
    return 100.0 * np.count_nonzero(active) / active.size


def reliability_score(w, beta, epsilon_rel=DEFAULT_EPS_REL):
    """Mean health of the active antennas, in percent (100 when none is active)."""
    beta = np.asarray(getattr(beta, "beta", beta), dtype=float)
    active = active_rows(as_weights(w), epsilon_rel)
    if active.shape != beta.shape:
        raise InvalidArgumentError(f"{active.size} rows but {beta.size} reliability entries")
    if not active.any():
        return 100.0
    return 100.0 * float(np.mean(beta[active]))


def summarize(instance, w, rho_s=None, epsilon_rel=DEFAULT_EPS_REL, aggregation="mean"):
    """Evaluate every table column for ``w`` on ``instance``.

    ``aggregation`` selects whether the bandwidth-weighted rate is averaged or summed
    over users.
    """
    w = as_weights(w, instance)
    cfg = instance.config
    gammas = np.array([sinr(instance, w, j) for j in range(cfg.m)])
    se = np.log2(1.0 + gammas)
    rates = np.asarray(cfg.bandwidths) * se
    if aggregation == "mean":
        avg_rate = float(np.mean(rates))
    elif aggregation == "sum":
        avg_rate = float(np.sum(rates))
    else:
        raise InvalidArgumentError(f"aggregation must be 'mean' or 'sum', got {aggregation!r}")
    return MetricsRow(
        avg_se=float(np.mean(se)),
        avg_rate=avg_rate,
        reliability_pct=reliability_score(w, instance.reliability, epsilon_rel),
        mui=radar_mutual_information(instance.radar_covariance, w, cfg.sigma_r2),
        density_pct=row_density(w, epsilon_rel),
        power_w=power_lhs(w, cfg.eta_pa, cfg.p_a),
        rho_s=float(cfg.rho_s if rho_s is None else rho_s),
    )


def rates_nats(instance, w):
    return np.log1p(all_sinr(instance.h, w, instance.config.sigma_c2))


def objective(instance, w):
    """Problem value: weighted radar information minus the health-weighted row penalty."""
    cfg = instance.config
    mui = _logdet_radar(instance.radar_covariance, w, cfg.sigma_r2)
    penalty = float(np.sum((1.0 - instance.beta) * row_norms(w)))
    return cfg.rho_r * mui - cfg.rho_s * penalty
