import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_instance, random_weights
from gpgda.errors import DomainError, InvalidArgumentError
from gpgda.metrics import (
    power_lhs,
    radar_mutual_information,
    reliability_score,
    row_density,
    sinr,
    summarize,
    user_rate,
)
from gpgda.model import (
    RadarScene,
    ReliabilityVector,
    SystemConfig,
    build_instance,
    ChannelMatrix,
)
from oracles import eig_mutual_information, loop_power_lhs, loop_sinr

seeds = st.integers(0, 10_000)


def tiny_instance(h, sigma_c2=1.0, beta=None, bandwidths=None):
    h = np.asarray(h, dtype=complex)
    n_t, m = h.shape
    cfg = SystemConfig(
        n_t=n_t,
        m=m,
        k=0,
        sigma_c2=sigma_c2,
        r_min=(0.0,) * m,
        bandwidths=bandwidths or (1e9,) * m,
    )
    beta = ReliabilityVector(np.ones(n_t) if beta is None else beta)
    return build_instance(cfg, RadarScene([], []), ChannelMatrix(h), beta)


def test_sinr_single_user():
    inst = tiny_instance([[1.0], [0.0]])
    assert sinr(inst, np.array([[1.0], [0.0]]), 0) == pytest.approx(1.0)
    assert sinr(inst, np.zeros((2, 1)), 0) == 0.0


def test_sinr_two_orthogonal_users():
    inst = tiny_instance(np.eye(2), sigma_c2=0.5)
    w = np.array([[2.0, 0.0], [0.0, 1.0]])
    assert sinr(inst, w, 0) == pytest.approx(8.0)


def test_sinr_index_out_of_range(instance):
    with pytest.raises(InvalidArgumentError):
        sinr(instance, random_weights(0), 3)


def test_sinr_matches_loop_oracle(instance):
    w = random_weights(1)
    for j in range(3):
        assert sinr(instance, w, j) == pytest.approx(
            loop_sinr(instance.h, w, instance.config.sigma_c2, j), rel=1e-12
        )


@pytest.mark.parametrize("gamma, rate", [(0, 0), (1, 1), (3, 2)])
def test_user_rate(gamma, rate):
    assert user_rate(gamma) == pytest.approx(rate, abs=1e-15)


def test_mui_degenerate_cases():
    r = np.eye(3)
    assert radar_mutual_information(r, np.zeros((3, 2)), 1.0) == 0.0
    assert radar_mutual_information(np.zeros((3, 3)), random_weights(0, 3, 2), 1.0) == 0.0


def test_mui_scalar():
    val = radar_mutual_information(np.array([[2.0]]), np.array([[math.sqrt(3)]]), 1.0)
    assert val == pytest.approx(math.log(7), abs=1e-12)


def test_mui_matches_eigen_oracle_4x3():
    inst = random_instance(5, n_t=4, m=3)
    w = random_weights(5, 4, 3)
    expected = eig_mutual_information(inst.radar_covariance, w, 0.7)
    assert radar_mutual_information(inst.radar_covariance, w, 0.7) == pytest.approx(expected, abs=1e-10)


def test_mui_rejects_non_psd():
    with pytest.raises(DomainError):
        radar_mutual_information(np.diag([1.0, -1.0]), np.ones((2, 1)), 1.0)


def test_power_lhs_examples():
    assert power_lhs(np.zeros((3, 2)), 0.4, 5.0) == 0.0
    assert power_lhs(np.array([[2.0]]), 0.4, 5.0) == pytest.approx(20.0)


@given(seeds, st.integers(1, 9), st.integers(1, 5))
def test_power_lhs_matches_loop_oracle(seed, n_t, m):
    w = random_weights(seed, n_t, m)
    assert power_lhs(w, 0.4, 5.0) == pytest.approx(loop_power_lhs(w, 0.4, 5.0), rel=1e-12, abs=1e-12)


@given(seeds, st.floats(0.0, 20.0))
def test_power_lhs_scaling(seed, c):
    # quadratic part scales as c^2, row part as c
    w = random_weights(seed, 5, 3)
    quad = loop_power_lhs(w, 0.4, 0.0)
    lin = loop_power_lhs(w, 1.0, 5.0) - loop_power_lhs(w, 1.0, 0.0)
    assert power_lhs(c * w, 0.4, 5.0) == pytest.approx(c * c * quad + c * lin, rel=1e-12, abs=1e-12)


def test_row_density_examples():
    w = random_weights(0, 4, 2)
    assert row_density(w) == 100.0
    w[[1, 3]] = 0
    assert row_density(w) == 50.0
    assert row_density(np.zeros((4, 2))) == 0.0


@given(seeds, st.floats(1e-6, 1e6))
def test_row_density_scale_invariant(seed, c):
    w = random_weights(seed, 6, 2)
    w[np.random.default_rng(seed).random(6) < 0.4] = 0
    assert row_density(c * w) == row_density(w)


def test_reliability_score_examples():
    w = random_weights(0, 3, 2)
    assert reliability_score(w, np.ones(3)) == 100.0
    w2 = random_weights(1, 2, 2)
    assert reliability_score(w2, np.array([1.0, 0.5])) == pytest.approx(75.0)
    w[1] = 0
    assert reliability_score(w, np.array([0.2, 0.9, 0.8])) == pytest.approx(50.0)
    assert reliability_score(np.zeros((3, 2)), np.array([0.2, 0.9, 0.8])) == 100.0


def test_summarize_zero_weights(instance):
    row = summarize(instance, np.zeros((8, 3)), 0.0)
    assert (row.avg_se, row.mui, row.density_pct, row.power_w) == (0.0, 0.0, 0.0, 0.0)


def test_summarize_single_user_rate():
    inst = tiny_instance([[1.0], [0.0]], bandwidths=(1e9,))
    row = summarize(inst, np.array([[1.0], [0.0]]), 0.0)
    assert row.avg_rate == pytest.approx(1e9)
    assert row.avg_se == pytest.approx(1.0)


def test_summarize_composes_standalone_operations(instance):
    w = random_weights(3)
    w[2] = 0
    cfg = instance.config
    row = summarize(instance, w, 0.01)
    se = [user_rate(sinr(instance, w, j)) for j in range(cfg.m)]
    assert row.avg_se == pytest.approx(np.mean(se), rel=1e-14)
    assert row.avg_rate == pytest.approx(np.mean(np.array(cfg.bandwidths) * se), rel=1e-14)
    assert row.reliability_pct == reliability_score(w, instance.reliability)
    assert row.mui == radar_mutual_information(instance.radar_covariance, w, cfg.sigma_r2)
    assert row.density_pct == row_density(w)
    assert row.power_w == power_lhs(w, cfg.eta_pa, cfg.p_a)
    assert row.rho_s == 0.01
    total = summarize(instance, w, 0.01, aggregation="sum")
    assert total.avg_rate == pytest.approx(cfg.m * row.avg_rate, rel=1e-14)


def test_summarize_rejects_bad_aggregation(instance):
    with pytest.raises(InvalidArgumentError):
        summarize(instance, random_weights(0), aggregation="median")


@settings(max_examples=40)
@given(seeds, st.floats(0, 2 * math.pi))
def test_phase_invariance(seed, phase):
    inst = random_instance(seed % 50)
    w = random_weights(seed)
    col = seed % 3
    w2 = w.copy()
    w2[:, col] *= np.exp(1j * phase)
    cfg = inst.config
    for j in range(cfg.m):
        assert sinr(inst, w2, j) == pytest.approx(sinr(inst, w, j), rel=1e-10, abs=1e-10)
    r = inst.radar_covariance
    assert radar_mutual_information(r, w2, 1.0) == pytest.approx(
        radar_mutual_information(r, w, 1.0), abs=1e-10
    )
    assert power_lhs(w2, 0.4, 5.0) == pytest.approx(power_lhs(w, 0.4, 5.0), abs=1e-10)


@settings(max_examples=40)
@given(seeds, st.floats(1.0, 50.0))
def test_mui_monotone_in_scale(seed, c):
    inst = random_instance(seed % 50)
    w = random_weights(seed, scale=0.3)
    r = inst.radar_covariance
    assert radar_mutual_information(r, c * w, 1.0) >= radar_mutual_information(r, w, 1.0) - 1e-12


@given(seeds)
def test_sinr_finite_for_large_inputs(seed):
    inst = random_instance(seed % 20)
    w = random_weights(seed, scale=1e100)
    assert all(math.isfinite(sinr(inst, w, j)) for j in range(3))
