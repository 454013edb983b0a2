"""Exit criteria. Each test carries ``acceptance(n)``; the terminal summary
prints one PASS/FAIL line per criterion."""

import math
import subprocess
import sys
import time
from collections import defaultdict
from dataclasses import replace

import numpy as np
import pytest

from relayirs import channels as ch
from relayirs.geometry import SurfaceLayout
from relayirs.linkbudget import db_to_linear
from relayirs.rates import Mode, RateInputs, rate_af_relay, rate_df_relay, rate_irs, rate_rir_af, rate_rir_df
from relayirs.sizing import SizingTarget, elements_irs, elements_rir_af, elements_rir_df
from relayirs.sweep import run_preset

from oracles import bisect_min_elements

LAM_60 = 299_792_458 / 60e9


def cli(*args, timeout=120):
    return subprocess.run([sys.executable, "-m", "relayirs", *args], capture_output=True, text=True, timeout=timeout)


def random_inputs(rng, beta=None):
    rho_t, rho_r = 10.0 ** rng.uniform(-13, -6, size=2)
    eta_t, eta_r = rng.uniform(1e-3, 1.0, size=2)
    return RateInputs(
        p_t=10 ** rng.uniform(0, 3), p_r=10 ** rng.uniform(0, 3),
        sigma1_sq=10 ** rng.uniform(-12, -8), sigma2_sq=10 ** rng.uniform(-12, -8),
        kappa=rng.uniform(0.2, 1.0), beta=beta,
        rho_t=rho_t, rho_r=rho_r, zeta_t=rho_t, zeta_r=rho_r, xi_tr=rho_t * rho_r,
        eta_t=eta_t, eta_r=eta_r, xi_circ_t=rho_t * eta_t, xi_circ_r=rho_r * eta_r,
    )


@pytest.mark.acceptance(1)
def test_verify_cli_zero_violations():
    start = time.perf_counter()
    out = cli("verify", "--seed", "1", "--trials", "1000")
    elapsed = time.perf_counter() - start
    assert out.returncode == 0, out.stderr
    assert "violations=0" in out.stdout and "trials=1000" in out.stdout
    assert elapsed < 10.0


@pytest.mark.acceptance(2)
def test_cauchy_schwarz_and_los_equality():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        m = int(rng.integers(1, 129))
        a = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        b = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        assert ch.xi(a, b) <= ch.zeta(a) * ch.zeta(b) * (1 + 1e-12)
    for _ in range(100):
        m = int(rng.integers(1, 257))
        lay = SurfaceLayout.default(m, LAM_60)
        rho_t, rho_r = 10.0 ** rng.uniform(-14, -4, size=2)
        h_t = ch.los_channel(rho_t, lay, LAM_60, *rng.uniform(0, 2 * np.pi, size=2))
        h_r = ch.los_channel(rho_r, lay, LAM_60, *rng.uniform(0, 2 * np.pi, size=2))
        assert abs(ch.xi(h_t, h_r) - rho_t * rho_r) <= 1e-12 * rho_t * rho_r


@pytest.mark.acceptance(3)
def test_far_field_limit_and_energy_bound():
    for lam in (299_792_458 / 3.5e9, LAM_60):
        for dist in (100, 150, 300, 1000, 10_000):
            d = dist * lam
            g = ch.near_field_magnitude((0, 0, 0), (0, 0, d), lam, 10.0)
            friis = 10.0 * (lam**2 / (4 * math.pi)) / (4 * math.pi * d**2)
            assert 0.99 <= g**2 / friis <= 1.01
        for m in (1, 16, 1000, 50_000):
            g = ch.near_field_channel(SurfaceLayout.default(m, lam), lam, 10.0)
            assert ch.eta(g.magnitudes) / m <= 1


@pytest.mark.acceptance(4)
def test_sizing_tight_and_matches_bisection():
    rng = np.random.default_rng(11)
    modes = list(Mode)
    start = time.perf_counter()
    for i in range(200):
        mode = modes[i % len(modes)]
        target = SizingTarget(float(rng.uniform(0.5, 6.0)))
        beta = db_to_linear(rng.uniform(0, 40))
        inp = random_inputs(rng)
        cases = {
            "irs": (elements_irs(target, inp, mode), lambda k: rate_irs(inp.with_elements(2 * k), mode).rate),
            "rir_df": (elements_rir_df(target, inp, mode), lambda k: rate_rir_df(inp.with_elements(k), mode).rate),
        }
        af_inp = replace(inp, beta=beta)
        cases["rir_af"] = (elements_rir_af(target, inp, beta, mode),
                           lambda k: rate_rir_af(af_inp.with_elements(k), mode).rate)
        for arch, (rep, rate_at) in cases.items():
            m = rep.m_required
            assert rate_at(m) >= target.r_lim, (arch, i)
            assert m == 1 or rate_at(m - 1) < target.r_lim, (arch, i)
            assert abs(bisect_min_elements(rate_at, target.r_lim) - m) <= 1, (arch, i)
    assert time.perf_counter() - start < 30.0


@pytest.mark.acceptance(5)
def test_af_never_beats_df():
    rng = np.random.default_rng(5)
    for i in range(1000):
        beta = None if i % 10 == 0 else db_to_linear(rng.uniform(-20, 80))
        inp = random_inputs(rng, beta).with_elements(int(rng.integers(1, 100_001)))
        assert rate_af_relay(inp).rate <= rate_df_relay(inp).rate * (1 + 1e-12)
        for mode in Mode:
            assert rate_rir_af(inp, mode).rate <= rate_rir_df(inp, mode).rate * (1 + 1e-12)


@pytest.mark.acceptance(6)
def test_figure6_element_counts():
    start = time.perf_counter()
    rows = run_preset(6)
    elapsed = time.perf_counter() - start
    m = {(r.axis_value, r.architecture, r.beta_db): r.m_required for r in rows}
    assert 30 <= m[150.0, "rir_df", None] <= 500
    assert 3e4 <= m[150.0, "rir_af", 15.0] <= 5e5
    assert m[150.0, "rir_af", 20.0] < m[150.0, "rir_af", 15.0]
    for (d_x, arch, _), count in m.items():
        if arch == "irs" and d_x >= 50:
            assert count > 5e4
    assert elapsed < 5.0


def _by_point(rows):
    points = defaultdict(dict)
    for r in rows:
        points[r.axis_value][r.architecture, r.beta_db] = r.rate_bps_hz
    return points


@pytest.mark.acceptance(7)
def test_figure4_and_5_ordering():
    tol = 1 + 1e-12
    for rates in _by_point(run_preset(4)).values():
        df, af_max = rates["rir_df", None], rates["rir_af", math.inf]
        assert df * tol >= af_max
        assert af_max * tol >= rates["rir_af", 20.0] and af_max * tol >= rates["rir_af", 15.0]
        assert min(df, af_max) * tol >= rates["irs", None]
    for rates in _by_point(run_preset(5)).values():
        df, af_max = rates["rir_df", None], rates["rir_af", math.inf]
        assert df * tol >= af_max
        for relay in (rates["df_relay", None], rates["af_relay", math.inf], rates["af_relay", 15.0]):
            assert df * tol >= relay and af_max * tol >= relay
        for beta in (15.0, 20.0):
            assert rates["rir_af", beta] * tol >= rates["af_relay", beta]
            assert af_max * tol >= rates["rir_af", beta]


@pytest.mark.acceptance(8)
def test_figure6_csv_independent_of_workers(tmp_path):
    outputs = []
    for workers in (1, 8):
        path = tmp_path / f"fig6_w{workers}.csv"
        res = cli("figure", "--id", "6", "--workers", str(workers), "--out", str(path))
        assert res.returncode == 0, res.stderr
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1] and outputs[0].count(b"\n") > 1
