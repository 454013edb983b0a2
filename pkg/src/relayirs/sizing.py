"""Minimum element counts that reach a target spectral efficiency.

Each solver returns the real-valued closed-form bound together with its
integer ceiling, and the ceiling is checked against the rate engine so
that ``rate(m_required) >= r_lim > rate(m_required - 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Optional

from .rates import Mode, RateInputs, af_power_cap, rate_irs, rate_rir_af, rate_rir_df


class InfeasibleError(ValueError):
    """No finite element count reaches the target."""


class SizingBranch(str, Enum):
    IRS_2M = "irs_2m"
    RIR_DF = "rir_df"
    RIR_AF_GAIN_LIMITED = "rir_af_gain_limited"
    RIR_AF_POWER_LIMITED = "rir_af_power_limited"


@dataclass(frozen=True)
class SizingTarget:
    r_lim: float

    def __post_init__(self):
        if not self.r_lim > 0:
            raise ValueError(f"target rate must be positive, got {self.r_lim}")

    @property
    def gamma_lim(self) -> float:
        return 2.0**self.r_lim - 1.0


@dataclass(frozen=True)
class SizingReport:
    m_required: int
    m_real: float
    branch: SizingBranch


def positive_quadratic_root(a: float, b: float, c: float) -> float:
    """Non-negative root y of a*y^2 - b*y - c = 0 (a > 0, c >= 0)."""
    if not a > 0 or c < 0 or not all(map(math.isfinite, (a, b, c))):
        raise ValueError(f"need a > 0 and c >= 0, got a={a}, b={b}, c={c}")
    disc = math.sqrt(b * b + 4.0 * a * c)
    if b >= 0:
        return (b + disc) / (2.0 * a)
    # b < 0: avoid cancellation in b + disc.
    return 2.0 * c / (disc - b)


def solve_positive_root(a: float, b: float, c: float) -> float:
    """Positive M with a*M^4 - b*M^2 - c = 0, via the root in M^2."""
    return math.sqrt(positive_quadratic_root(a, b, c))


def _tighten(m_real: float, rate_at: Callable[[int], float], r_lim: float) -> int:
    if not math.isfinite(m_real):
        raise InfeasibleError(f"element count overflows: {m_real}")
    m = max(1, math.ceil(m_real))
    if m > 2**52:
        return m  # neighbouring counts are indistinguishable in float
    # The ceiling can be off by one where m_real sits within rounding of an integer.
    for _ in range(4):
        if rate_at(m) >= r_lim:
            break
        m += 1
    else:
        raise RuntimeError(f"closed-form element count {m_real} does not reach {r_lim} bps/Hz")
    for _ in range(4):
        if m == 1 or rate_at(m - 1) < r_lim:
            return m
        m -= 1
    raise RuntimeError(f"closed-form element count {m_real} overshoots {r_lim} bps/Hz")


def _hop_quality(inp: RateInputs, mode: Mode) -> tuple[float, float, int]:
    """Per-element hop gains and the power of M multiplying them."""
    if mode is Mode.EXACT:
        q_t, q_r = inp.need("xi_circ_t", "xi_circ_r")
        return q_t, q_r, 2
    rho_t, rho_r = inp.need("rho_t", "rho_r")
    if mode is Mode.LOS:
        eta_t, eta_r = inp.need("eta_t", "eta_r")
        return rho_t * eta_t, rho_r * eta_r, 2
    return rho_t, rho_r, 1


def elements_irs(target: SizingTarget, inp: RateInputs, mode: Mode | str = Mode.EXACT) -> SizingReport:
    """Per-surface M for a classical surface of 2M elements."""
    mode = Mode(mode)
    cascade = rate_irs(inp.with_elements(1), mode).snr * inp.sigma2_sq / (inp.p_t * inp.kappa)
    if not cascade > 0:
        raise InfeasibleError("classical surface has zero cascaded channel gain")
    m_real = 0.5 * math.sqrt(target.gamma_lim * inp.sigma2_sq / (inp.p_t * inp.kappa * cascade))
    m = _tighten(m_real, lambda k: rate_irs(inp.with_elements(2 * k), mode).rate, target.r_lim)
    return SizingReport(m, m_real, SizingBranch.IRS_2M)


def elements_rir_df(target: SizingTarget, inp: RateInputs, mode: Mode | str = Mode.EXACT) -> SizingReport:
    mode = Mode(mode)
    q_t, q_r, power = _hop_quality(inp, mode)
    if not (q_t > 0 and q_r > 0):
        raise InfeasibleError("relay-aided surface has a dead hop")
    worst = max(inp.sigma1_sq / (inp.p_t * q_t), inp.sigma2_sq / (inp.p_r * q_r))
    m_real = (target.gamma_lim / inp.kappa * worst) ** (1.0 / power)
    m = _tighten(m_real, lambda k: rate_rir_df(inp.with_elements(k), mode).rate, target.r_lim)
    return SizingReport(m, m_real, SizingBranch.RIR_DF)


def elements_rir_af(
    target: SizingTarget, inp: RateInputs, beta: Optional[float], mode: Mode | str = Mode.EXACT
) -> SizingReport:
    """AF sizing: gain-limited root first, full-power root if the gain cap is violated.

    ``beta`` is the linear amplification; ``None`` sizes for full relay power.
    """
    mode = Mode(mode)
    q_t, q_r, power = _hop_quality(inp, mode)
    if not (q_t > 0 and q_r > 0):
        raise InfeasibleError("relay-aided surface has a dead hop")
    gamma, k = target.gamma_lim, inp.kappa
    s1, s2 = inp.sigma1_sq, inp.sigma2_sq

    branch = SizingBranch.RIR_AF_POWER_LIMITED
    if beta is not None:
        if not beta > 0:
            raise InfeasibleError("zero amplification never reaches a positive rate")
        y = positive_quadratic_root(inp.p_t * beta * k**2 * q_t * q_r, gamma * beta * k * q_r * s1, gamma * s2)
        if beta <= af_power_cap(inp.p_t, inp.p_r, k * y * q_t, s1):
            branch = SizingBranch.RIR_AF_GAIN_LIMITED
    if branch is SizingBranch.RIR_AF_POWER_LIMITED:
        u_t = k * inp.p_t * q_t / s1
        u_r = k * inp.p_r * q_r / s2
        y = positive_quadratic_root(u_t * u_r, gamma * (u_t + u_r), gamma)

    m_real = y ** (1.0 / power)
    sized = replace(inp, beta=beta)
    m = _tighten(m_real, lambda n: rate_rir_af(sized.with_elements(n), mode).rate, target.r_lim)
    return SizingReport(m, m_real, branch)
