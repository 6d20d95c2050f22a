"""Problem data: array geometry, radar scene, user channels and antenna health."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvalidArgumentError

# Sub-band allocations of the 28 GHz sharing scenario, in Hz.
DEFAULT_BANDWIDTHS = (5.6906e9, 7.6838e9, 7.6128e9, 6.5987e9)
# Minimum spectral efficiencies giving 100 Mbps per user, in bits/s/Hz.
DEFAULT_R_MIN = (0.0176, 0.0130, 0.0131, 0.0152)


def _frozen(a, dtype=float):
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SystemConfig:
    """Scalar parameters of one DFRC problem.

    Powers are linear (W), ``r_min`` is in bits/s/Hz and ``bandwidths`` in Hz.
    """

    n_t: int = 10
    n_r: int = 10
    m: int = 4
    k: int = 1
    sigma_r2: float = 1.0
    sigma_c2: float = 1.0
    rho_r: float = 0.0148
    rho_s: float = 0.0
    eta_pa: float = 0.4
    p_a: float = 5.0
    p_tot: float = 100.0
    r_min: tuple = DEFAULT_R_MIN
    bandwidths: tuple = DEFAULT_BANDWIDTHS
    spacing_ratio: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "r_min", tuple(float(x) for x in self.r_min))
        object.__setattr__(self, "bandwidths", tuple(float(x) for x in self.bandwidths))
        if self.n_t < 1 or self.n_r < 1 or self.m < 1 or self.k < 0:
            raise InvalidArgumentError("need n_t >= 1, n_r >= 1, m >= 1, k >= 0")
        for name in ("sigma_r2", "sigma_c2", "p_tot", "spacing_ratio"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")
        for name in ("p_a", "rho_r", "rho_s"):
            if not getattr(self, name) >= 0:
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)}")
        if not 0 < self.eta_pa <= 1:
            raise DomainError(f"eta_pa must lie in (0, 1], got {self.eta_pa}")
        if len(self.r_min) != self.m or len(self.bandwidths) != self.m:
            raise InvalidArgumentError(
                f"r_min and bandwidths need {self.m} entries, "
                f"got {len(self.r_min)} and {len(self.bandwidths)}"
            )
        for i, r in enumerate(self.r_min):
            if not r >= 0:
                raise DomainError(f"r_min[{i}] must be >= 0, got {r}", index=i)
        for i, b in enumerate(self.bandwidths):
            if not b > 0:
                raise DomainError(f"bandwidths[{i}] must be > 0, got {b}", index=i)

    @property
    def r_min_nats(self):
        return np.asarray(self.r_min) * math.log(2.0)


@dataclass(frozen=True)
class RadarScene:
    """Point targets: angles from broadside (rad) and expected powers."""

    angles: np.ndarray = field(default_factory=lambda: _frozen([0.0]))
    powers: np.ndarray = field(default_factory=lambda: _frozen([1.0]))

    def __post_init__(self):
        angles = _frozen(np.atleast_1d(self.angles))
        powers = _frozen(np.atleast_1d(self.powers))
        if angles.ndim != 1 or angles.shape != powers.shape:
            raise InvalidArgumentError(
                f"angles and powers must be vectors of equal length, "
                f"got shapes {angles.shape} and {powers.shape}"
            )
        for i, th in enumerate(angles):
            if not -math.pi / 2 < th < math.pi / 2:
                raise DomainError(f"angle[{i}] = {th} outside (-pi/2, pi/2)", index=i)
        for i, p in enumerate(powers):
            if not p >= 0:
                raise DomainError(f"power[{i}] = {p} must be >= 0", index=i)
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "powers", powers)

    @property
    def k(self):
        return len(self.angles)

    def scaled(self, c):
        return RadarScene(self.angles, self.powers * c)

    def __eq__(self, other):
        if not isinstance(other, RadarScene):
            return NotImplemented
        return np.array_equal(self.angles, other.angles) and np.array_equal(self.powers, other.powers)

    def __hash__(self):
        return hash((self.angles.tobytes(), self.powers.tobytes()))


@dataclass(frozen=True)
class ChannelMatrix:
    """User channels; column j is h_j."""

    h: np.ndarray

    def __post_init__(self):
        h = _frozen(self.h, complex)
        if h.ndim != 2:
            raise InvalidArgumentError(f"channel must be 2-D, got shape {h.shape}")
        if not np.all(np.isfinite(h)):
            raise InvalidArgumentError("channel has non-finite entries")
        object.__setattr__(self, "h", h)

    @property
    def shape(self):
        return self.h.shape


@dataclass(frozen=True)
class ReliabilityVector:
    """Per-antenna health in [0, 1]; 1 is fully operational."""

    beta: np.ndarray

    def __post_init__(self):
        beta = _frozen(np.atleast_1d(self.beta))
        if beta.ndim != 1 or beta.size == 0:
            raise InvalidArgumentError("reliability vector must be a nonempty flat list")
        for i, b in enumerate(beta):
            if not 0.0 <= b <= 1.0:
                raise DomainError(f"reliability[{i}] = {b} outside [0, 1]", index=i)
        object.__setattr__(self, "beta", beta)

    def __len__(self):
        return len(self.beta)

    def __eq__(self, other):
        if not isinstance(other, ReliabilityVector):
            return NotImplemented
        return np.array_equal(self.beta, other.beta)

    def __hash__(self):
        return hash(self.beta.tobytes())


@dataclass(frozen=True)
class ProblemInstance:
    config: SystemConfig
    scene: RadarScene
    channel: ChannelMatrix
    reliability: ReliabilityVector
    radar_covariance: np.ndarray

    def __post_init__(self):
        cfg = self.config
        if self.scene.k != cfg.k:
            raise InvalidArgumentError(f"scene has {self.scene.k} targets, config says k={cfg.k}")
        if self.channel.shape != (cfg.n_t, cfg.m):
            raise InvalidArgumentError(
                f"channel shape {self.channel.shape} != ({cfg.n_t}, {cfg.m})"
            )
        if len(self.reliability) != cfg.n_t:
            raise InvalidArgumentError(
                f"reliability has {len(self.reliability)} entries, need {cfg.n_t}"
            )
        r = _frozen(self.radar_covariance, complex)
        if r.shape != (cfg.n_t, cfg.n_t):
            raise InvalidArgumentError(f"radar covariance shape {r.shape} != ({cfg.n_t}, {cfg.n_t})")
        if np.max(np.abs(r - r.conj().T), initial=0.0) > 1e-12:
            raise DomainError("radar covariance is not Hermitian")
        trace = float(np.real(np.trace(r)))
        if np.linalg.eigvalsh(r).min() < -1e-10 * max(trace, 0.0):
            raise DomainError("radar covariance is not positive semidefinite")
        object.__setattr__(self, "radar_covariance", r)

    @property
    def h(self):
        return self.channel.h

    @property
    def beta(self):
        return self.reliability.beta

    def with_rho_s(self, rho_s):
        from dataclasses import replace

        return replace(self, config=replace(self.config, rho_s=rho_s))


def steering_vector(theta, n, spacing_ratio=0.5):
    """Uniform linear array response exp(j 2pi (d/lambda) p sin(theta)), p = 0..n-1."""
    if not math.isfinite(theta):
        raise InvalidArgumentError(f"theta must be finite, got {theta}")
    if n < 1 or not spacing_ratio > 0:
        raise InvalidArgumentError("need n >= 1 and spacing_ratio > 0")
    p = np.arange(n)
    return np.exp(1j * 2 * np.pi * spacing_ratio * p * math.sin(theta))


def transmit_covariance(scene, n_t, spacing_ratio=0.5):
    """Transmit-side radar covariance sum_k sigma_k^2 a(theta_k) a(theta_k)^H."""
    r = np.zeros((n_t, n_t), dtype=complex)
    for theta, power in zip(scene.angles, scene.powers):
        a = steering_vector(theta, n_t, spacing_ratio)
        r += power * np.outer(a, a.conj())
    # exact Hermitian symmetry despite rounding in the outer products
    return 0.5 * (r + r.conj().T)


def target_response(scene, alphas, n_t, n_r, spacing_ratio=0.5):
    """Target response sum_k alpha_k a(theta_k) b(theta_k)^H.

    The first factor has ``n_r`` entries and the second ``n_t``, so the result
    maps transmitted samples to received ones (shape n_r x n_t).
    """
    alphas = np.atleast_1d(np.asarray(alphas, dtype=complex))
    if alphas.shape != (scene.k,):
        raise InvalidArgumentError(f"need {scene.k} amplitudes, got {alphas.shape}")
    g = np.zeros((n_r, n_t), dtype=complex)
    for theta, alpha in zip(scene.angles, alphas):
        rx = steering_vector(theta, n_r, spacing_ratio)
        tx = steering_vector(theta, n_t, spacing_ratio)
        g += alpha * np.outer(rx, tx.conj())
    return g


def generate_channel(seed, n_t, m, variance=1.0):
    """I.i.d. circularly-symmetric complex Gaussian channel, E|h_ij|^2 = variance."""
    if not variance > 0:
        raise InvalidArgumentError(f"variance must be > 0, got {variance}")
    rng = np.random.default_rng(seed)
    scale = math.sqrt(variance / 2.0)
    h = scale * (rng.standard_normal((n_t, m)) + 1j * rng.standard_normal((n_t, m)))
    return ChannelMatrix(h)


def load_reliability(source):
    """Parse a flat list of reals (JSON/TOML array syntax) into a ReliabilityVector."""
    if isinstance(source, str):
        try:
            values = json.loads(source)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"reliability source is not a list of reals: {exc}") from None
    else:
        values = list(source)
    if not isinstance(values, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
    ):
        raise InvalidArgumentError("reliability source must be a flat list of reals")
    if not values:
        raise InvalidArgumentError("reliability list is empty")
    return ReliabilityVector(np.array(values, dtype=float))


def default_reliability(n_t=10, n_healthy=4, seed=0, low=0.2, high=0.9):
    """Health profile with ``n_healthy`` perfect elements at seeded positions.

    The remaining elements are degraded, drawn uniformly from [low, high].
    """
    if not 0 <= n_healthy <= n_t:
        raise InvalidArgumentError(f"n_healthy must lie in [0, {n_t}]")
    rng = np.random.default_rng(seed)
    beta = rng.uniform(low, high, size=n_t)
    beta[rng.permutation(n_t)[:n_healthy]] = 1.0
    return ReliabilityVector(beta)


def build_instance(config, scene, channel, reliability):
    """Assemble a validated ProblemInstance with its radar covariance."""
    r = transmit_covariance(scene, config.n_t, config.spacing_ratio)
    return ProblemInstance(config, scene, channel, reliability, r)
