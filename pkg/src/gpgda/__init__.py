"""Antenna-health-aware selective beamforming for dual-function radar-communication arrays."""

from .errors import ConfigError, DomainError, InvalidArgumentError, NumericError
from .metrics import (
    MetricsRow,
    power_lhs,
    radar_mutual_information,
    reliability_score,
    row_density,
    sinr,
    summarize,
    user_rate,
)
from .model import (
    ChannelMatrix,
    ProblemInstance,
    RadarScene,
    ReliabilityVector,
    SystemConfig,
    build_instance,
    default_reliability,
    generate_channel,
    load_reliability,
    steering_vector,
    target_response,
    transmit_covariance,
)
from .solver import DualState, SolveResult, SolverOptions, SolveTrace, gpgda_solve, prox_row

__version__ = "0.1.0"
