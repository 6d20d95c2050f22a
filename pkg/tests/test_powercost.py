import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpgda.errors import DomainError, InvalidArgumentError
from gpgda.powercost import (
    FlopCount,
    OpEnergyParams,
    RfPowerParams,
    dac_power,
    iteration_energy,
    iteration_flops,
    pa_power,
    rf_chain_power,
    total_system_power,
)

nonneg = st.floats(0.0, 1e3, allow_nan=False)


@pytest.mark.parametrize("p, eta, out", [(40, 0.4, 100), (0, 0.5, 0), (1, 1, 1)])
def test_pa_power(p, eta, out):
    assert pa_power(p, eta) == out


def test_pa_power_errors():
    with pytest.raises(InvalidArgumentError):
        pa_power(1.0, 0.0)
    with pytest.raises(DomainError):
        pa_power(-1.0, 0.5)


@given(nonneg, st.sampled_from([0.25, 0.5, 1.0]))
def test_pa_power_inverts(p, eta):
    # dyadic efficiencies keep the round trip exact
    assert pa_power(p, eta) * eta == p


@pytest.mark.parametrize(
    "kw, out",
    [
        (dict(c1=0, c2=1, q=3), 8.0),
        (dict(c1=1e-12, f=1e9, q=8, c2=0), 8e-3),
        (dict(c1=1e-12, f=1e9, q=8, c2=1e-4), 3.36e-2),
    ],
)
def test_dac_power(kw, out):
    assert dac_power(RfPowerParams(**kw)) == pytest.approx(out, rel=1e-12)


@pytest.mark.parametrize(
    "kw, out", [({}, 0.0), (dict(p_m=1, p_lf=2, p_hb=3), 9.0), (dict(p_m=0.3, p_lf=0.2, p_hb=3), 4.0)]
)
def test_rf_chain_power(kw, out):
    assert rf_chain_power(RfPowerParams(**kw)) == pytest.approx(out, rel=1e-12)


def test_total_system_power_examples():
    assert total_system_power(40, 0, RfPowerParams(p_m=1.0)) == 100
    # c2 * 2^1 = 1 for the DAC, the hybrid alone gives 3 for the chain
    params = RfPowerParams(q=1, c2=0.5, p_hb=3.0)
    assert dac_power(params) == 1.0 and rf_chain_power(params) == 3.0
    assert total_system_power(40, 2, params) == 110
    assert total_system_power(0, 7, RfPowerParams()) == 0


@given(nonneg, nonneg, nonneg, st.integers(0, 64))
def test_total_system_power_affine(p_m, p_hb, c2, n):
    params = RfPowerParams(q=2, c2=c2, p_m=p_m, p_hb=p_hb)
    slope = 2 * dac_power(params) + rf_chain_power(params)
    base = total_system_power(10.0, 0, params)
    assert total_system_power(10.0, n, params) == pytest.approx(base + n * slope, rel=1e-12, abs=1e-12)


def test_total_system_power_rejects_negative_count():
    with pytest.raises(InvalidArgumentError):
        total_system_power(1.0, -1, RfPowerParams())


@pytest.mark.parametrize(
    "kw",
    [dict(q=0), dict(f=-1.0), dict(c1=-1.0), dict(p_hb=-0.1), dict(eta_pa=0.0), dict(eta_pa=1.1)],
)
def test_rf_params_invariants(kw):
    with pytest.raises(DomainError):
        RfPowerParams(**kw)


def test_op_energy_invariants():
    with pytest.raises(DomainError):
        OpEnergyParams(p_mul=-1.0)


def test_iteration_flops_examples():
    assert iteration_flops(2, 1) == FlopCount(22, 14)
    assert iteration_flops(1, 1) == FlopCount(7, 4)
    with pytest.raises(InvalidArgumentError):
        iteration_flops(0, 1)


@given(st.integers(1, 200), st.integers(1, 50))
def test_iteration_flops_monotone(n, m):
    base = iteration_flops(n, m)
    for nxt in (iteration_flops(n + 1, m), iteration_flops(n, m + 1)):
        assert nxt.muls >= base.muls and nxt.adds >= base.adds


def test_iteration_flops_cubic_growth():
    ratio = iteration_flops(2000, 4).muls / iteration_flops(1000, 4).muls
    assert ratio == pytest.approx(8.0, rel=0.01)


@pytest.mark.parametrize("pm, pa, out", [(0, 0, 0), (1, 1, 36), (2, 0.5, 51)])
def test_iteration_energy_examples(pm, pa, out):
    assert iteration_energy(2, 1, OpEnergyParams(pm, pa)) == out


@given(st.integers(1, 30), st.integers(1, 8), nonneg, nonneg, nonneg)
def test_iteration_energy_linear(n, m, a, b, c):
    e = lambda pm, pa: iteration_energy(n, m, OpEnergyParams(pm, pa))
    assert e(a + b, c) == pytest.approx(e(a, c) + e(b, 0), rel=1e-12, abs=1e-9)
    assert e(c, a + b) == pytest.approx(e(c, a) + e(0, b), rel=1e-12, abs=1e-9)
