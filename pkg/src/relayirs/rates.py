"""Closed-form spectral efficiencies for classical surfaces, single-antenna
relays, and the two-surface relay architecture (DF and AF).

Every function works in linear units: powers and noise variances in mW,
channel statistics as per-element linear power gains.  A ``mode`` picks which
statistic stands in for the per-hop coherent gain:

``exact``
    composite statistics xi_circ (or xi for the classical surface).
``los``
    single-path channels, xi_circ = rho * eta with the near-field gain eta.
``upper_bound``
    energy-conservation bound, M^2 * eta <= M, so the per-hop gain is
    kappa * M * rho.  For the classical surface this is the Cauchy-Schwarz
    bound zeta_t * zeta_r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional


class Mode(str, Enum):
    EXACT = "exact"
    LOS = "los"
    UPPER_BOUND = "upper_bound"


class Branch(str, Enum):
    EXACT = "exact"
    LOS = "los"
    UPPER_BOUND = "upper_bound"
    GAIN_LIMITED = "gain_limited"
    POWER_LIMITED = "power_limited"


@dataclass(frozen=True, kw_only=True)
class RateInputs:
    M: float = 1
    p_t: float
    p_r: float
    sigma1_sq: float
    sigma2_sq: float
    kappa: float = 1.0
    beta: Optional[float] = None  # linear AF gain; None asks for full relay power
    zeta_t: Optional[float] = None
    zeta_r: Optional[float] = None
    xi_tr: Optional[float] = None
    xi_circ_t: Optional[float] = None
    xi_circ_r: Optional[float] = None
    rho_t: Optional[float] = None
    rho_r: Optional[float] = None
    eta_t: Optional[float] = None
    eta_r: Optional[float] = None

    def __post_init__(self):
        if self.M < 0:
            raise ValueError(f"M must be non-negative, got {self.M}")
        for name in ("p_t", "p_r", "sigma1_sq", "sigma2_sq"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0 < self.kappa <= 1:
            raise ValueError(f"kappa must lie in (0, 1], got {self.kappa}")
        if self.beta is not None and self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")

    def with_elements(self, m: float) -> "RateInputs":
        return replace(self, M=m)

    def need(self, *names: str) -> tuple:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ValueError(f"rate inputs missing: {', '.join(missing)}")
        return tuple(getattr(self, n) for n in names)


@dataclass(frozen=True)
class RateReport:
    rate: float
    snr: float
    branch: Branch


def _report(snr: float, branch: Branch) -> RateReport:
    return RateReport(rate=math.log2(1.0 + snr), snr=snr, branch=branch)


def rate_irs(inp: RateInputs, mode: Mode | str = Mode.EXACT) -> RateReport:
    """Classical surface with ``inp.M`` elements and optimal phases.

    The caller decides the element convention; comparisons against the
    two-surface architecture pass 2M.
    """
    mode = Mode(mode)
    if mode is Mode.EXACT:
        (cascade,) = inp.need("xi_tr")
    elif mode is Mode.LOS:
        rho_t, rho_r = inp.need("rho_t", "rho_r")
        cascade = rho_t * rho_r
    else:
        zeta_t, zeta_r = inp.need("zeta_t", "zeta_r")
        cascade = zeta_t * zeta_r
    snr = inp.p_t * inp.kappa * inp.M**2 * cascade / inp.sigma2_sq
    return _report(snr, Branch(mode.value))


def relay_hop_snrs(inp: RateInputs) -> tuple[float, float]:
    zeta_t, zeta_r = inp.need("zeta_t", "zeta_r")
    return inp.p_t * zeta_t / inp.sigma1_sq, inp.p_r * zeta_r / inp.sigma2_sq


def rate_df_relay(inp: RateInputs) -> RateReport:
    g1, g2 = relay_hop_snrs(inp)
    return _report(min(g1, g2), Branch.EXACT)


def af_power_cap(p_t: float, p_r: float, gain_t: float, sigma1_sq: float) -> float:
    """Largest amplification the relay can apply without exceeding p_r."""
    return p_r / (p_t * gain_t + sigma1_sq)


def af_snr(p_t, p_r, gain_t, gain_r, sigma1_sq, sigma2_sq, beta=None) -> tuple[float, Branch]:
    """End-to-end AF SNR with the requested gain clamped to the power cap."""
    cap = af_power_cap(p_t, p_r, gain_t, sigma1_sq)
    if beta is None or beta > cap:
        g1 = p_t * gain_t / sigma1_sq
        g2 = p_r * gain_r / sigma2_sq
        return g1 * g2 / (g1 + g2 + 1.0), Branch.POWER_LIMITED
    return p_t * beta * gain_t * gain_r / (beta * gain_r * sigma1_sq + sigma2_sq), Branch.GAIN_LIMITED


def rate_af_relay(inp: RateInputs) -> RateReport:
    zeta_t, zeta_r = inp.need("zeta_t", "zeta_r")
    snr, branch = af_snr(inp.p_t, inp.p_r, zeta_t, zeta_r, inp.sigma1_sq, inp.sigma2_sq, inp.beta)
    return _report(snr, branch)


def hop_gains(inp: RateInputs, mode: Mode | str = Mode.EXACT) -> tuple[float, float]:
    """Per-hop beamforming gains (kappa * M^2 * xi_circ and its LOS / bound forms)."""
    mode = Mode(mode)
    k, m = inp.kappa, inp.M
    if mode is Mode.EXACT:
        xt, xr = inp.need("xi_circ_t", "xi_circ_r")
        return k * m**2 * xt, k * m**2 * xr
    rho_t, rho_r = inp.need("rho_t", "rho_r")
    if mode is Mode.LOS:
        eta_t, eta_r = inp.need("eta_t", "eta_r")
        return k * m**2 * rho_t * eta_t, k * m**2 * rho_r * eta_r
    return k * m * rho_t, k * m * rho_r


def rir_hop_snrs(inp: RateInputs, mode: Mode | str = Mode.EXACT) -> tuple[float, float]:
    a_t, a_r = hop_gains(inp, mode)
    return inp.p_t * a_t / inp.sigma1_sq, inp.p_r * a_r / inp.sigma2_sq


def rate_rir_direction(inp: RateInputs, direction: str, mode: Mode | str = Mode.EXACT) -> RateReport:
    """Rate of a single hop: ``"tx"`` (Tx -> surface 1 -> relay) or ``"rx"``."""
    g1, g2 = rir_hop_snrs(inp, mode)
    if direction == "tx":
        snr = g1
    elif direction == "rx":
        snr = g2
    else:
        raise ValueError(f"direction must be 'tx' or 'rx', got {direction!r}")
    return _report(snr, Branch(Mode(mode).value))


def rate_rir_df(inp: RateInputs, mode: Mode | str = Mode.EXACT) -> RateReport:
    g1, g2 = rir_hop_snrs(inp, mode)
    return _report(min(g1, g2), Branch(Mode(mode).value))


def rate_rir_af(inp: RateInputs, mode: Mode | str = Mode.EXACT) -> RateReport:
    a_t, a_r = hop_gains(inp, mode)
    snr, branch = af_snr(inp.p_t, inp.p_r, a_t, a_r, inp.sigma1_sq, inp.sigma2_sq, inp.beta)
    return _report(snr, branch)
