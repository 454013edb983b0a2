"""Brute-force check of the phase-optimization steps behind the rate formulas.

Each trial draws random multipath far-field channels and a near-field
surface-to-relay channel, then compares:

* the closed-form SNR from the rate engine (built from xi / xi_circ),
* the SNR of explicit phase-conjugate beamforming, and
* the best of ``n_random`` random phase configurations.

Trials use ``numpy.random.SeedSequence(seed).spawn`` children with PCG64, so
trial ``i`` depends only on ``(seed, i)`` and a parallel run aggregates to the
same report as a sequential one.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import channels as ch
from .geometry import SurfaceLayout
from .rates import RateInputs, rate_irs, rate_rir_af, rate_rir_direction

REL_TOL = 1e-9


@dataclass(frozen=True)
class PhaseConfig:
    phases: np.ndarray
    kappa: float = 1.0

    @property
    def psi(self) -> np.ndarray:
        return np.sqrt(self.kappa) * np.exp(1j * np.asarray(self.phases))


@dataclass(frozen=True)
class OracleRun:
    seed: int
    trials: int
    max_rel_error: float
    violations: int

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} seed={self.seed} trials={self.trials} "
                f"max_rel_error={self.max_rel_error:.3e} violations={self.violations}")


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    elements: int
    clusters: int
    rir_closed_snr: float
    rir_beamformed_snr: float
    rir_best_random_snr: float
    irs_closed_snr: float
    irs_beamformed_snr: float
    irs_best_random_snr: float
    af_closed_snr: float
    af_beamformed_snr: float
    max_rel_error: float
    violations: int


def optimal_phases(h_circ, kappa: float = 1.0) -> PhaseConfig:
    """Phase conjugation, phi_m = -angle(h_m)."""
    h = np.asarray(getattr(h_circ, "entries", h_circ))
    if h.size == 0:
        raise ValueError("empty channel")
    return PhaseConfig(phases=-np.angle(h), kappa=kappa)


def achieved_snr(h_circ, psi, p: float, sigma_sq: float) -> float:
    """p |h^T psi|^2 / sigma^2 for an explicit reflection vector."""
    h = np.asarray(getattr(h_circ, "entries", h_circ))
    w = psi.psi if isinstance(psi, PhaseConfig) else np.asarray(psi)
    if h.shape != w.shape:
        raise ValueError(f"length mismatch: {h.shape} vs {w.shape}")
    return float(p * np.abs(h @ w) ** 2 / sigma_sq)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), np.finfo(float).tiny)


def _best_random(rng, h, kappa, p, sigma_sq, n_random) -> float:
    phases = rng.uniform(0.0, 2 * np.pi, size=(n_random, h.size))
    gains = np.abs(np.sqrt(kappa) * np.exp(1j * phases) @ h) ** 2
    return float(p * gains.max() / sigma_sq)


def run_trial(seed: int, index: int, m_max: int = 64, l_max: int = 4, n_random: int = 100) -> TrialRecord:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))
    m = int(rng.integers(1, m_max + 1))
    n_clusters = int(rng.integers(1, l_max + 1))
    wavelength = 299_792_458.0 / (rng.uniform(1.0, 100.0) * 1e9)
    layout = SurfaceLayout(
        element_count=m,
        element_pitch=0.5 * wavelength,
        relay_offset=(rng.uniform(-2, 2) * wavelength, rng.uniform(-2, 2) * wavelength,
                      rng.uniform(2.0, 20.0) * wavelength),
    )
    rho_t, rho_r = 10.0 ** rng.uniform(-12, -6, size=2)
    h_t = ch.far_field_channel(ch.random_clusters(rng, n_clusters), rho_t, layout, wavelength)
    h_r = ch.far_field_channel(ch.random_clusters(rng, int(rng.integers(1, l_max + 1))), rho_r, layout, wavelength)
    g_t = ch.near_field_channel(layout, wavelength, horn_gain=10.0)
    hc_t = ch.composite(h_t, g_t).entries
    hc_r = ch.composite(h_r, g_t).entries

    kappa = float(rng.uniform(0.1, 1.0))
    p_t, p_r = 10.0 ** rng.uniform(0, 3, size=2)
    s1, s2 = 10.0 ** rng.uniform(-12, -8, size=2)
    beta = float(10.0 ** rng.uniform(-2, 6))
    inp = RateInputs(
        M=m, p_t=p_t, p_r=p_r, sigma1_sq=s1, sigma2_sq=s2, kappa=kappa, beta=beta,
        xi_tr=ch.xi(h_t, h_r), xi_circ_t=ch.xi_circ(hc_t), xi_circ_r=ch.xi_circ(hc_r),
    )

    violations = 0
    errors = []

    rir_closed = rate_rir_direction(inp, "tx").snr
    rir_bf = achieved_snr(hc_t, optimal_phases(hc_t, kappa), p_t, s1)
    rir_rand = _best_random(rng, hc_t, kappa, p_t, s1, n_random)

    cascade = h_t.entries * h_r.entries
    irs_closed = rate_irs(inp).snr
    irs_bf = achieved_snr(cascade, optimal_phases(cascade, kappa), p_t, s2)
    irs_rand = _best_random(rng, cascade, kappa, p_t, s2, n_random)

    # AF end to end with both surfaces beamformed explicitly.
    a_t = np.abs(hc_t @ optimal_phases(hc_t, kappa).psi) ** 2
    a_r = np.abs(hc_r @ optimal_phases(hc_r, kappa).psi) ** 2
    af = rate_rir_af(inp)
    cap = p_r / (p_t * a_t + s1)
    b_eff = min(beta, cap)
    af_bf = float(p_t * b_eff * a_t * a_r / (b_eff * a_r * s1 + s2))

    for closed, bf, best in ((rir_closed, rir_bf, rir_rand), (irs_closed, irs_bf, irs_rand), (af.snr, af_bf, None)):
        err = _rel(closed, bf)
        errors.append(err)
        violations += err > REL_TOL
        if best is not None:
            violations += best > closed * (1.0 + REL_TOL)

    return TrialRecord(
        trial=index, elements=m, clusters=n_clusters,
        rir_closed_snr=rir_closed, rir_beamformed_snr=rir_bf, rir_best_random_snr=rir_rand,
        irs_closed_snr=irs_closed, irs_beamformed_snr=irs_bf, irs_best_random_snr=irs_rand,
        af_closed_snr=af.snr, af_beamformed_snr=af_bf,
        max_rel_error=max(errors), violations=int(violations),
    )


def _run_chunk(args):
    seed, indices, m_max, l_max = args
    return [run_trial(seed, i, m_max, l_max) for i in indices]


def monte_carlo_records(seed: int, trials: int, m_max: int = 64, l_max: int = 4, workers: int = 1) -> list[TrialRecord]:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if workers <= 1:
        return [run_trial(seed, i, m_max, l_max) for i in range(trials)]
    chunks = [(seed, range(start, min(start + 50, trials)), m_max, l_max) for start in range(0, trials, 50)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [rec for chunk in pool.map(_run_chunk, chunks) for rec in chunk]


def summarize(seed: int, records: list[TrialRecord]) -> OracleRun:
    return OracleRun(
        seed=seed,
        trials=len(records),
        max_rel_error=max(r.max_rel_error for r in records),
        violations=sum(r.violations for r in records),
    )


def monte_carlo_verify(seed: int, trials: int, m_max: int = 64, l_max: int = 4, workers: int = 1) -> OracleRun:
    return summarize(seed, monte_carlo_records(seed, trials, m_max, l_max, workers))


def write_trial_csv(records: list[TrialRecord], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(TrialRecord.__dataclass_fields__), lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({k: (format(v, ".10g") if isinstance(v, float) else v) for k, v in asdict(r).items()})
