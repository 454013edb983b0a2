"""Large-scale link budget: UMi street-canyon path loss, thermal noise, dB helpers.

All downstream math runs in linear units (mW, unitless gains); dB only
appears at the configuration boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

SPEED_OF_LIGHT = 299_792_458.0  # m/s
THERMAL_NOISE_DBM_HZ = -174.0  # kT at 290 K


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    if not x > 0:
        raise ValueError(f"linear_to_db needs a positive value, got {x}")
    return 10.0 * math.log10(x)


def dbm_to_mw(p_dbm: float) -> float:
    return db_to_linear(p_dbm)


def umi_pathloss_db(d_3d: float, fc_ghz: float) -> float:
    """3GPP UMi street-canyon LOS path loss in dB.

    ``d_3d`` in meters, ``fc_ghz`` in GHz.  The 3GPP model is specified for
    d_3d >= 10 m; shorter distances are evaluated without clamping.
    """
    if not d_3d > 0 or not fc_ghz > 0:
        raise ValueError(f"path loss needs d_3d > 0 and fc > 0, got {d_3d}, {fc_ghz}")
    return 32.4 + 21.0 * math.log10(d_3d) + 20.0 * math.log10(fc_ghz)


def path_gain(d_3d: float, fc_ghz: float) -> float:
    """Linear power gain rho = 10^(-PL/10)."""
    return db_to_linear(-umi_pathloss_db(d_3d, fc_ghz))


def noise_power_dbm(bandwidth_hz: float, noise_figure_db: float) -> float:
    if not bandwidth_hz > 0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth_hz}")
    return THERMAL_NOISE_DBM_HZ + 10.0 * math.log10(bandwidth_hz) + noise_figure_db


@dataclass(frozen=True)
class NoisePair:
    sigma1_sq: float  # dBm, at the relay
    sigma2_sq: float  # dBm, at the receiver

    @property
    def sigma1_sq_mw(self) -> float:
        return dbm_to_mw(self.sigma1_sq)

    @property
    def sigma2_sq_mw(self) -> float:
        return dbm_to_mw(self.sigma2_sq)


@dataclass(frozen=True)
class RadioConfig:
    fc_ghz: float
    bandwidth_hz: float
    noise_figure_db: float = 8.0
    p_t_dbm: float = 20.0
    p_r_dbm: float = 20.0
    kappa: float = 1.0
    horn_gain: float = 10.0  # linear (10 dBi)
    af_gain_beta_db: Optional[float] = None

    def validate(self) -> None:
        if not self.fc_ghz > 0:
            raise ValueError(f"fc_ghz must be > 0, got {self.fc_ghz}")
        if not self.bandwidth_hz > 0:
            raise ValueError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz}")
        if not 0 < self.kappa <= 1:
            raise ValueError(f"kappa must lie in (0, 1], got {self.kappa}")
        if not self.horn_gain >= 1:
            raise ValueError(f"horn_gain must be >= 1 (linear), got {self.horn_gain}")
        for name in ("noise_figure_db", "p_t_dbm", "p_r_dbm"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        for name in ("p_t_dbm", "p_r_dbm"):
            if not 0 < dbm_to_mw(getattr(self, name)) < math.inf:
                raise ValueError(f"{name} is outside the representable power range")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / (self.fc_ghz * 1e9)

    @property
    def p_t_mw(self) -> float:
        return dbm_to_mw(self.p_t_dbm)

    @property
    def p_r_mw(self) -> float:
        return dbm_to_mw(self.p_r_dbm)

    def noise(self) -> NoisePair:
        # Relay and receiver share bandwidth and noise figure.
        n = noise_power_dbm(self.bandwidth_hz, self.noise_figure_db)
        return NoisePair(sigma1_sq=n, sigma2_sq=n)
