import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relayirs.linkbudget import (
    RadioConfig,
    db_to_linear,
    linear_to_db,
    noise_power_dbm,
    path_gain,
    umi_pathloss_db,
)


def test_pathloss_unit_inputs():
    assert umi_pathloss_db(1.0, 1.0) == 32.4


def test_pathloss_10m_3p5ghz():
    assert umi_pathloss_db(10.0, 3.5) == pytest.approx(32.4 + 21.0 + 20 * math.log10(3.5), rel=1e-15)
    assert umi_pathloss_db(10.0, 3.5) == pytest.approx(64.281, abs=5e-4)


def test_pathloss_200m_60ghz():
    # 32.4 + 21*log10(200.2498) + 20*log10(60), evaluated by hand: 32.4 + 48.3331 + 35.5630
    assert umi_pathloss_db(200.2498, 60.0) == pytest.approx(116.2961, abs=1e-4)


@pytest.mark.parametrize("d, fc", [(0, 1), (-1, 1), (1, 0)])
def test_pathloss_domain(d, fc):
    with pytest.raises(ValueError):
        umi_pathloss_db(d, fc)


@given(st.floats(0.1, 1e5), st.floats(0.1, 300))
def test_doubling_steps(d, fc):
    assert umi_pathloss_db(2 * d, fc) - umi_pathloss_db(d, fc) == pytest.approx(6.3217, abs=1e-4)
    assert umi_pathloss_db(d, 2 * fc) - umi_pathloss_db(d, fc) == pytest.approx(6.0206, abs=1e-4)
    assert umi_pathloss_db(d * 1.001, fc) > umi_pathloss_db(d, fc)
    assert umi_pathloss_db(d, fc * 1.001) > umi_pathloss_db(d, fc)


@pytest.mark.parametrize("bw, nf, expected", [(1, 0, -174), (100e6, 8, -86), (1e9, 8, -76)])
def test_noise_power(bw, nf, expected):
    assert noise_power_dbm(bw, nf) == pytest.approx(expected, abs=1e-12)


@given(st.floats(1, 1e12))
def test_noise_doubling(bw):
    assert noise_power_dbm(2 * bw, 8) - noise_power_dbm(bw, 8) == pytest.approx(3.0103, abs=1e-4)


def test_noise_domain():
    with pytest.raises(ValueError):
        noise_power_dbm(0, 8)


def test_db_conversions():
    assert db_to_linear(0) == 1.0
    assert db_to_linear(20) == pytest.approx(100.0, rel=1e-15)
    assert db_to_linear(linear_to_db(7.3)) == pytest.approx(7.3, abs=1e-12)
    with pytest.raises(ValueError):
        linear_to_db(0.0)


def test_path_gain_is_linear_inverse():
    assert path_gain(10, 3.5) == pytest.approx(10 ** (-umi_pathloss_db(10, 3.5) / 10), rel=1e-14)


def test_radio_defaults_and_noise_pair():
    radio = RadioConfig(fc_ghz=60, bandwidth_hz=1e9)
    assert (radio.p_t_dbm, radio.p_r_dbm, radio.noise_figure_db, radio.kappa) == (20, 20, 8, 1)
    n = radio.noise()
    assert n.sigma1_sq == n.sigma2_sq == pytest.approx(-76)
    assert radio.p_t_mw == pytest.approx(100.0)
    assert radio.wavelength == pytest.approx(0.0049965, rel=1e-4)


@pytest.mark.parametrize("kw", [{"kappa": 0}, {"kappa": 1.5}, {"horn_gain": 0.5}, {"fc_ghz": 0}])
def test_radio_validation(kw):
    base = {"fc_ghz": 3.5, "bandwidth_hz": 1e8}
    with pytest.raises(ValueError):
        RadioConfig(**{**base, **kw}).validate()
