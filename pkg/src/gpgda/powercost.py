"""Phased-array hardware power model and per-iteration algorithmic cost.

All coefficients default to zero: no published values exist for the DAC, mixer,
filter and arithmetic energy figures, so callers supply their own.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InvalidArgumentError


@dataclass(frozen=True)
class RfPowerParams:
    q: int = 1  # DAC resolution, bits
    f: float = 0.0  # sampling rate, Hz
    c1: float = 0.0  # static DAC coefficient, W/(bit Hz)
    c2: float = 0.0  # dynamic DAC coefficient, W
    p_m: float = 0.0  # mixer
    p_lf: float = 0.0  # low-pass filter
    p_hb: float = 0.0  # hybrid with buffer
    eta_pa: float = 0.4

    def __post_init__(self):
        if self.q < 1:
            raise DomainError(f"DAC resolution q must be >= 1, got {self.q}")
        for name in ("f", "c1", "c2", "p_m", "p_lf", "p_hb"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)}")
        if not 0 < self.eta_pa <= 1:
            raise DomainError(f"eta_pa must lie in (0, 1], got {self.eta_pa}")


@dataclass(frozen=True)
class OpEnergyParams:
    p_mul: float = 0.0  # J per complex multiplication
    p_add: float = 0.0  # J per complex addition

    def __post_init__(self):
        if self.p_mul < 0 or self.p_add < 0:
            raise DomainError("operation energies must be >= 0")


@dataclass(frozen=True)
class FlopCount:
    muls: int
    adds: int


def pa_power(transmit_power, eta_pa):
    """Power drawn by the amplifiers to radiate ``transmit_power``."""
    if not eta_pa > 0:
        raise InvalidArgumentError(f"eta_pa must be > 0, got {eta_pa}")
    if transmit_power < 0:
        raise DomainError(f"transmit power must be >= 0, got {transmit_power}")
    return transmit_power / eta_pa


def dac_power(params):
    return params.c1 * params.f * params.q + params.c2 * 2.0**params.q


def rf_chain_power(params):
    """Two mixers, two low-pass filters and one hybrid per chain."""
    return 2.0 * params.p_m + 2.0 * params.p_lf + params.p_hb


def total_system_power(transmit_power, n_active, params):
    """PA draw plus two DACs and one RF chain for each of ``n_active`` elements.

    Pass ``n_t`` for whole-array accounting or the active-row count to match the
    per-active-antenna budget term.
    """
    if n_active < 0:
        raise InvalidArgumentError(f"n_active must be >= 0, got {n_active}")
    per_element = 2.0 * dac_power(params) + rf_chain_power(params)
    return pa_power(transmit_power, params.eta_pa) + n_active * per_element


def iteration_flops(n_t, m):
    """Complex multiplications and additions in one GPGDA iteration."""
    if n_t < 1 or m < 1:
        raise InvalidArgumentError("need n_t >= 1 and m >= 1")
    muls = n_t * n_t * m + n_t**3 + 5 * n_t * m
    adds = n_t * n_t * m + n_t**3 + 3 * n_t * m - n_t * n_t
    return FlopCount(muls, adds)


def iteration_energy(n_t, m, params):
    flops = iteration_flops(n_t, m)
    return flops.muls * params.p_mul + flops.adds * params.p_add
