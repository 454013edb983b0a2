"""Rate and element-count sweeps over a scenario, with CSV output.

A sweep config is one JSON document; unknown keys are rejected at every
level.  Example::

    {
      "geometry": {"d_x": 400, "d_y": 10, "h_tx": 10, "h_rx": 1, "h_node": 10},
      "radio": {"fc_ghz": 3.5, "bandwidth_hz": 1e8},
      "sweep_axis": "elements",
      "axis_values": [100, 1000, 10000],
      "architectures": ["irs", "rir_df", "rir_af"],
      "beta_values_db": [15, 20, "max"],
      "mode": "upper_bound"
    }

``"max"`` in ``beta_values_db`` means the relay runs at full power.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from functools import lru_cache
from typing import Optional

import numpy as np

from . import channels as ch
from .geometry import GeometryError, ScenarioGeometry, SurfaceLayout, place_nodes
from .linkbudget import RadioConfig, db_to_linear, path_gain
from .rates import (
    Mode,
    RateInputs,
    rate_af_relay,
    rate_df_relay,
    rate_irs,
    rate_rir_af,
    rate_rir_df,
)
from .sizing import InfeasibleError, SizingTarget, elements_irs, elements_rir_af, elements_rir_df

ARCHITECTURES = ("irs", "df_relay", "af_relay", "rir_df", "rir_af")
AF_ARCHITECTURES = ("af_relay", "rir_af")
SIZING_ARCHITECTURES = ("irs", "rir_df", "rir_af")
CSV_HEADER = ("axis", "architecture", "beta_db", "rate_bps_hz", "m_required", "m_real", "branch")
OUTPUT_DIR_ENV = "RELAYIRS_OUTPUT_DIR"
FULL_POWER = math.inf


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceConfig:
    pitch_wavelengths: float = 0.5
    relay_height_wavelengths: float = 10.0


@dataclass(frozen=True)
class SweepConfig:
    geometry: ScenarioGeometry
    radio: RadioConfig
    sweep_axis: str
    axis_values: tuple
    architectures: tuple
    beta_values_db: tuple = (FULL_POWER,)
    mode: Mode = Mode.UPPER_BOUND
    elements: int = 1
    target_rate: Optional[float] = None
    irs_convention: str = "2M"
    surface: SurfaceConfig = field(default_factory=SurfaceConfig)
    output_path: Optional[str] = None
    workers: int = 1

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        raw = dict(raw)
        _reject_unknown(raw, cls, "config")
        try:
            geometry = _build(ScenarioGeometry, raw.pop("geometry", {"d_x": 0.0}), "geometry")
            radio = _build(RadioConfig, raw.pop("radio", None), "radio")
            surface = _build(SurfaceConfig, raw.pop("surface", {}), "surface")
        except TypeError as exc:
            raise ConfigError(str(exc)) from None
        betas = tuple(_parse_beta(b) for b in raw.pop("beta_values_db", ["max"]))
        try:
            mode = Mode(raw.pop("mode", Mode.UPPER_BOUND.value))
        except ValueError:
            raise ConfigError(f"mode: must be one of {[m.value for m in Mode]}") from None
        cfg = cls(
            geometry=geometry,
            radio=radio,
            surface=surface,
            beta_values_db=betas,
            mode=mode,
            axis_values=tuple(float(v) for v in raw.pop("axis_values", ())),
            architectures=tuple(raw.pop("architectures", ())),
            sweep_axis=raw.pop("sweep_axis", None),
            **raw,
        )
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path) -> "SweepConfig":
        with open(path, encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: invalid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return cls.from_dict(raw)

    def validate(self) -> None:
        if self.sweep_axis not in ("elements", "distance"):
            raise ConfigError("sweep_axis: must be 'elements' or 'distance'")
        if not self.axis_values:
            raise ConfigError("axis_values: must be non-empty")
        if not self.architectures:
            raise ConfigError("architectures: must be non-empty")
        bad = [a for a in self.architectures if a not in ARCHITECTURES]
        if bad:
            raise ConfigError(f"architectures: unknown {bad}; choose from {list(ARCHITECTURES)}")
        if not self.beta_values_db:
            raise ConfigError("beta_values_db: must be non-empty")
        if self.irs_convention not in ("M", "2M"):
            raise ConfigError("irs_convention: must be 'M' or '2M'")
        if self.sweep_axis == "elements" and any(v < 1 or v != int(v) for v in self.axis_values):
            raise ConfigError("axis_values: element counts must be positive integers")
        if self.sweep_axis == "distance" and any(v < 0 for v in self.axis_values):
            raise ConfigError("axis_values: distances must be >= 0")
        if not (isinstance(self.elements, int) and self.elements >= 1):
            raise ConfigError("elements: must be a positive integer")
        if self.target_rate is not None and not self.target_rate > 0:
            raise ConfigError("target_rate: must be positive")
        if not (isinstance(self.workers, int) and self.workers >= 1):
            raise ConfigError("workers: must be a positive integer")
        try:
            self.radio.validate()
            self.geometry.validate()
        except (ValueError, GeometryError) as exc:
            raise ConfigError(str(exc)) from None

    def with_overrides(self, **kw) -> "SweepConfig":
        cfg = replace(self, **{k: v for k, v in kw.items() if v is not None})
        cfg.validate()
        return cfg


def _reject_unknown(raw: dict, cls, where: str) -> None:
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {unknown}")


def _build(cls, raw, where):
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected an object")
    _reject_unknown(raw, cls, where)
    try:
        return cls(**raw)
    except TypeError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _parse_beta(value) -> float:
    if value == "max":
        return FULL_POWER
    if isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value):
        return float(value)
    raise ConfigError(f"beta_values_db: entries must be numbers (dB) or 'max', got {value!r}")


def beta_linear(beta_db: float) -> Optional[float]:
    return None if math.isinf(beta_db) else db_to_linear(beta_db)


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    architecture: str
    beta_db: Optional[float] = None
    rate_bps_hz: Optional[float] = None
    m_required: Optional[int] = None
    m_real: Optional[float] = None
    branch: str = ""


# --- scenario -> rate inputs -------------------------------------------------


@lru_cache(maxsize=64)
def _near_field(m: int, wavelength: float, horn_gain: float, pitch: float, height: float):
    layout = SurfaceLayout.default(m, wavelength, pitch, height)
    return layout, ch.near_field_channel(layout, wavelength, horn_gain)


def _direction(frm, to) -> tuple[float, float]:
    v = np.asarray(to, dtype=float) - np.asarray(frm, dtype=float)
    v = v / np.linalg.norm(v)
    return float(np.arctan2(v[1], v[0])), float(np.arcsin(v[2]))


def scenario_inputs(cfg: SweepConfig, d_x: float, m: int, beta: Optional[float] = None) -> RateInputs:
    """Rate inputs for ``m`` elements per surface at Tx-Rx separation ``d_x``.

    The far-field links are single-path (LOS), so zeta = rho.  ``los`` and
    ``exact`` modes also build the near-field surface-to-relay channel from
    the default half-wavelength layout; ``exact`` derives every statistic
    from the full complex channel vectors.
    """
    radio = cfg.radio
    nodes = place_nodes(replace(cfg.geometry, d_x=d_x))
    rho_t = path_gain(nodes.tx_node_distance, radio.fc_ghz)
    rho_r = path_gain(nodes.node_rx_distance, radio.fc_ghz)
    noise = radio.noise()
    base = dict(
        M=m, p_t=radio.p_t_mw, p_r=radio.p_r_mw, sigma1_sq=noise.sigma1_sq_mw, sigma2_sq=noise.sigma2_sq_mw,
        kappa=radio.kappa, beta=beta, rho_t=rho_t, rho_r=rho_r, zeta_t=rho_t, zeta_r=rho_r,
    )
    if cfg.mode is Mode.UPPER_BOUND:
        return RateInputs(**base)

    lam = radio.wavelength
    layout, g = _near_field(m, lam, radio.horn_gain, cfg.surface.pitch_wavelengths,
                            cfg.surface.relay_height_wavelengths)
    eta = ch.eta(g.magnitudes)
    if cfg.mode is Mode.LOS:
        return RateInputs(**base, eta_t=eta, eta_r=eta)

    h_t = ch.los_channel(rho_t, layout, lam, *_direction(nodes.node, nodes.tx))
    h_r = ch.los_channel(rho_r, layout, lam, *_direction(nodes.node, nodes.rx))
    base.update(zeta_t=ch.zeta(h_t), zeta_r=ch.zeta(h_r))
    return RateInputs(
        **base, eta_t=eta, eta_r=eta, xi_tr=ch.xi(h_t, h_r),
        xi_circ_t=ch.xi_circ(ch.composite(h_t, g)), xi_circ_r=ch.xi_circ(ch.composite(h_r, g)),
    )


def _point(cfg: SweepConfig, axis_value: float) -> tuple[float, int]:
    if cfg.sweep_axis == "elements":
        return cfg.geometry.d_x, int(axis_value)
    return axis_value, cfg.elements


def _relay_inputs(inp: RateInputs) -> RateInputs:
    # Single-antenna relay: far-field gains only, one antenna per side.
    return replace(inp, M=1)


def rate_rows(cfg: SweepConfig, axis_value: float) -> list[SweepRow]:
    d_x, m = _point(cfg, axis_value)
    inp = scenario_inputs(cfg, d_x, m)
    rows = []
    for arch in cfg.architectures:
        if arch in AF_ARCHITECTURES:
            for b_db in cfg.beta_values_db:
                sized = replace(inp, beta=beta_linear(b_db))
                rep = rate_af_relay(_relay_inputs(sized)) if arch == "af_relay" else rate_rir_af(sized, cfg.mode)
                rows.append(SweepRow(axis_value, arch, b_db, rate_bps_hz=rep.rate, branch=rep.branch.value))
            continue
        if arch == "irs":
            m_irs = 2 * m if cfg.irs_convention == "2M" else m
            rep = rate_irs(inp.with_elements(m_irs), cfg.mode)
        elif arch == "df_relay":
            rep = rate_df_relay(_relay_inputs(inp))
        else:
            rep = rate_rir_df(inp, cfg.mode)
        rows.append(SweepRow(axis_value, arch, rate_bps_hz=rep.rate, branch=rep.branch.value))
    return rows


def sizing_rows(cfg: SweepConfig, axis_value: float) -> list[SweepRow]:
    d_x, m = _point(cfg, axis_value)
    inp = scenario_inputs(cfg, d_x, m)
    target = SizingTarget(cfg.target_rate)
    rows = []
    for arch in cfg.architectures:
        betas = cfg.beta_values_db if arch == "rir_af" else (None,)
        for b_db in betas:
            try:
                if arch == "irs":
                    rep = elements_irs(target, inp, cfg.mode)
                elif arch == "rir_df":
                    rep = elements_rir_df(target, inp, cfg.mode)
                else:
                    rep = elements_rir_af(target, inp, beta_linear(b_db), cfg.mode)
            except InfeasibleError:
                rows.append(SweepRow(axis_value, arch, b_db, branch="infeasible"))
                continue
            rows.append(SweepRow(axis_value, arch, b_db, m_required=rep.m_required, m_real=rep.m_real,
                                 branch=rep.branch.value))
    return rows


def _sort_key(cfg: SweepConfig):
    def key(row: SweepRow):
        beta_rank = cfg.beta_values_db.index(row.beta_db) if row.beta_db is not None else -1
        return (row.axis_value, ARCHITECTURES.index(row.architecture), beta_rank)
    return key


def _evaluate(task):
    kind, cfg, value = task
    return rate_rows(cfg, value) if kind == "rates" else sizing_rows(cfg, value)


def _run(kind: str, cfg: SweepConfig, workers: Optional[int]) -> list[SweepRow]:
    workers = cfg.workers if workers is None else workers
    tasks = [(kind, cfg, v) for v in cfg.axis_values]
    if workers <= 1 or len(tasks) == 1:
        chunks = map(_evaluate, tasks)
        rows = [r for chunk in chunks for r in chunk]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = [r for chunk in pool.map(_evaluate, tasks) for r in chunk]
    return sorted(rows, key=_sort_key(cfg))


def run_rate_sweep(cfg: SweepConfig, workers: Optional[int] = None) -> list[SweepRow]:
    return _run("rates", cfg, workers)


def run_sizing_sweep(cfg: SweepConfig, workers: Optional[int] = None) -> list[SweepRow]:
    if cfg.target_rate is None:
        raise ConfigError("target_rate: required for sizing sweeps")
    if cfg.sweep_axis != "distance":
        raise ConfigError("sweep_axis: sizing sweeps run over distance")
    bad = [a for a in cfg.architectures if a not in SIZING_ARCHITECTURES]
    if bad:
        raise ConfigError(f"architectures: no sizing for {bad}; choose from {list(SIZING_ARCHITECTURES)}")
    return _run("sizing", cfg, workers)


# --- CSV ---------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if math.isinf(value):
        return "max"
    return format(float(value), ".10g")


def format_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([_fmt(r.axis_value), r.architecture, _fmt(r.beta_db), _fmt(r.rate_bps_hz),
                         _fmt(r.m_required), _fmt(r.m_real), r.branch])
    return buf.getvalue()


def emit_csv(rows, path) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_csv(rows))
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror}") from exc


def _num(text: str, cast=float):
    if text == "":
        return None
    if text == "max":
        return FULL_POWER
    return cast(text)


def parse_csv(text: str) -> list[SweepRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    return [
        SweepRow(float(axis), arch, _num(beta), _num(rate), _num(m_req, int), _num(m_real), branch)
        for axis, arch, beta, rate, m_req, m_real, branch in reader
    ]


def read_csv(path) -> list[SweepRow]:
    with open(path, encoding="utf-8") as fh:
        return parse_csv(fh.read())


def default_output(name: str) -> Optional[str]:
    out_dir = os.environ.get(OUTPUT_DIR_ENV)
    return os.path.join(out_dir, name) if out_dir else None


# --- presets reproducing the published figures -------------------------------

_FIGURE_RADIO = {"noise_figure_db": 8.0, "p_t_dbm": 20.0, "p_r_dbm": 20.0, "kappa": 1.0}


def preset(fig_id: int) -> SweepConfig:
    """Bundled configs for the three simulation figures.

    Axis ranges are not given numerically for figures 4 and 5; these use
    10^2..10^5 elements (10 points per decade) and 25..400 m.
    """
    if fig_id == 4:
        raw = {
            "geometry": {"d_x": 400.0},
            "radio": {"fc_ghz": 3.5, "bandwidth_hz": 100e6, **_FIGURE_RADIO},
            "sweep_axis": "elements",
            "axis_values": sorted({int(round(v)) for v in np.logspace(2, 5, 31)}),
            "architectures": ["irs", "rir_df", "rir_af"],
            "beta_values_db": [15, 20, "max"],
        }
    elif fig_id == 5:
        raw = {
            "geometry": {"d_x": 400.0},
            "radio": {"fc_ghz": 60.0, "bandwidth_hz": 1e9, **_FIGURE_RADIO},
            "sweep_axis": "distance",
            "axis_values": [float(v) for v in range(25, 401, 25)],
            "elements": 50_000,
            "architectures": list(ARCHITECTURES),
            "beta_values_db": [15, 20, "max"],
        }
    elif fig_id == 6:
        raw = {
            "geometry": {"d_x": 150.0},
            "radio": {"fc_ghz": 60.0, "bandwidth_hz": 1e9, **_FIGURE_RADIO},
            "sweep_axis": "distance",
            "axis_values": [float(v) for v in range(25, 151, 5)],
            "architectures": ["irs", "rir_df", "rir_af"],
            "beta_values_db": [15, 20],
            "target_rate": 2.0,
        }
    else:
        raise ConfigError(f"no preset for figure {fig_id}; choose 4, 5 or 6")
    return SweepConfig.from_dict(raw)


def run_preset(fig_id: int, workers: Optional[int] = None, **overrides) -> list[SweepRow]:
    cfg = preset(fig_id).with_overrides(**overrides)
    return run_sizing_sweep(cfg, workers) if fig_id == 6 else run_rate_sweep(cfg, workers)
