"""Mixed near/far-field channel construction and the scalar channel statistics.

Far-field links (Tx -> surface, surface -> Rx) use a geometric cluster model
over the planar-array steering vector.  The surface -> relay-antenna link is
near-field: each element gets its own magnitude (aperture-integral
approximation, scaled by the horn gain) and its own spherical-wave phase.

All functions here take the wavelength in meters rather than the carrier
frequency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import SurfaceLayout, element_positions


class ModelValidityError(ValueError):
    """The near-field channel collects more power than the energy bound allows."""


@dataclass(frozen=True)
class PathCluster:
    alpha: complex
    azimuth: float
    elevation: float


@dataclass(frozen=True)
class FarFieldChannel:
    entries: np.ndarray
    rho: float


@dataclass(frozen=True)
class NearFieldChannel:
    magnitudes: np.ndarray
    phases: np.ndarray

    @property
    def entries(self) -> np.ndarray:
        return self.magnitudes * self.phases


@dataclass(frozen=True)
class CompositeChannel:
    entries: np.ndarray


@dataclass(frozen=True)
class ChannelStats:
    zeta: float
    xi: Optional[float]
    eta: float
    xi_circ: float
    zeta_second: Optional[float] = None


def unit_direction(azimuth: float, elevation: float) -> np.ndarray:
    """Unit vector for (azimuth, elevation); elevation pi/2 is the surface normal."""
    ce = np.cos(elevation)
    return np.array([ce * np.cos(azimuth), ce * np.sin(azimuth), np.sin(elevation)])


def array_response(azimuth: float, elevation: float, layout: SurfaceLayout, wavelength: float) -> np.ndarray:
    """Planar steering vector, phase-referenced to the first element."""
    pos = element_positions(layout)
    pos = pos - pos[0]
    k = 2.0 * np.pi / wavelength
    return np.exp(1j * k * (pos @ unit_direction(azimuth, elevation)))


def far_field_channel(
    clusters: Sequence[PathCluster], rho: float, layout: SurfaceLayout, wavelength: float
) -> FarFieldChannel:
    if len(clusters) == 0:
        raise ValueError("far-field channel needs at least one cluster")
    h = np.zeros(layout.element_count, dtype=complex)
    for c in clusters:
        h += c.alpha * array_response(c.azimuth, c.elevation, layout, wavelength)
    return FarFieldChannel(entries=np.sqrt(rho) * h, rho=float(rho))


def los_channel(rho: float, layout: SurfaceLayout, wavelength: float,
                azimuth: float = 0.0, elevation: float = np.pi / 2) -> FarFieldChannel:
    return far_field_channel([PathCluster(1.0, azimuth, elevation)], rho, layout, wavelength)


def random_clusters(rng: np.random.Generator, n_clusters: int) -> list[PathCluster]:
    """Clusters with CN(0, 1/L) gains and uniform angles in [0, 2pi)."""
    alpha = (rng.standard_normal(n_clusters) + 1j * rng.standard_normal(n_clusters)) / np.sqrt(2 * n_clusters)
    az = rng.uniform(0.0, 2 * np.pi, n_clusters)
    el = rng.uniform(0.0, 2 * np.pi, n_clusters)
    return [PathCluster(complex(a), float(p), float(q)) for a, p, q in zip(alpha, az, el)]


def aperture_term(x, y, d):
    """C_{x,y} = (xy/d^2) / sqrt(x^2/d^2 + y^2/d^2 + 1)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return (x * y / d**2) / np.sqrt(x**2 / d**2 + y**2 / d**2 + 1.0)


def _near_field_magnitudes(dx, dy, d, wavelength, horn_gain):
    if np.any(np.asarray(d) == 0):
        raise ValueError("near-field magnitude is undefined for zero relay height")
    half = wavelength / (4.0 * np.sqrt(np.pi))  # c / (4 f sqrt(pi))
    total = 0.0
    for x in (half + dx, half - dx):
        for y in (half + dy, half - dy):
            c = aperture_term(x, y, d)
            total = total + c / (3.0 * (y**2 / d**2 + 1.0)) + (2.0 / 3.0) * np.arctan(c)
    return np.sqrt(horn_gain / (4.0 * np.pi) * total)


def near_field_magnitude(element, relay, wavelength: float, horn_gain: float) -> float:
    """Magnitude of the channel between one surface element and the relay antenna."""
    e = np.asarray(element, dtype=float)
    r = np.asarray(relay, dtype=float)
    d = abs(e[2] - r[2])
    return float(_near_field_magnitudes(e[0] - r[0], e[1] - r[1], d, wavelength, horn_gain))


def spherical_phase(element, relay, wavelength: float) -> complex:
    dist = np.linalg.norm(np.asarray(element, dtype=float) - np.asarray(relay, dtype=float))
    return complex(np.exp(1j * 2.0 * np.pi / wavelength * dist))


def near_field_channel(
    layout: SurfaceLayout, wavelength: float, horn_gain: float, check_energy: bool = True
) -> NearFieldChannel:
    pos = element_positions(layout)
    relay = layout.relay_position
    delta = pos - relay
    d = np.abs(delta[:, 2])
    mags = _near_field_magnitudes(delta[:, 0], delta[:, 1], d, wavelength, horn_gain)
    phases = np.exp(1j * 2.0 * np.pi / wavelength * np.linalg.norm(delta, axis=1))
    g = NearFieldChannel(magnitudes=mags, phases=phases)
    if check_energy:
        check_energy_bound(g.magnitudes)
    return g


def check_energy_bound(magnitudes) -> None:
    """Require M * eta <= 1, i.e. (sum |g_m|)^2 <= M.

    This is the form the aperture-gain bound takes in the rate expressions
    (M^2 eta <= M); it also implies eta / M <= 1.
    """
    g = np.abs(np.asarray(magnitudes))
    m = g.size
    e = eta(g)
    if m * e > 1.0 + 1e-12:
        raise ModelValidityError(f"near-field gain violates energy bound: M*eta = {m * e:.6g} > 1")


def composite(h: FarFieldChannel, g: NearFieldChannel) -> CompositeChannel:
    if h.entries.shape != g.magnitudes.shape:
        raise ValueError(f"length mismatch: {h.entries.shape} vs {g.magnitudes.shape}")
    return CompositeChannel(entries=h.entries * g.magnitudes * g.phases)


def _vec(v) -> np.ndarray:
    if hasattr(v, "entries"):
        v = v.entries
    arr = np.asarray(v)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("channel statistics need a non-empty 1-D vector")
    return arr


def zeta(v) -> float:
    """Mean per-element power, (1/M) sum |v_m|^2."""
    return float(np.mean(np.abs(_vec(v)) ** 2))


def xi(v, w) -> float:
    """(1/M sum |v_m| |w_m|)^2 for the cascaded classical-surface link."""
    a, b = _vec(v), _vec(w)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.mean(np.abs(a) * np.abs(b)) ** 2)


def coherent_gain(v) -> float:
    """(1/M sum |v_m|)^2; xi_circ for a composite channel, eta for a near-field one."""
    return float(np.mean(np.abs(_vec(v))) ** 2)


xi_circ = coherent_gain
eta = coherent_gain


def stats(v, second=None) -> ChannelStats:
    a = _vec(v)
    g = coherent_gain(a)
    if second is None:
        return ChannelStats(zeta=zeta(a), xi=None, eta=g, xi_circ=g)
    b = _vec(second)
    return ChannelStats(zeta=zeta(a), xi=xi(a, b), eta=g, xi_circ=g, zeta_second=zeta(b))
