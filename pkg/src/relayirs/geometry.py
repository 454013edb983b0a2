"""Scenario layout and surface element coordinates.

Frame: x runs along the Tx->Rx baseline, y points toward the surface/relay
node, z is up.  Tx and Rx share y = 0 and are separated by ``d_x`` along x;
the node sits at the midpoint in x, ``d_y`` away in y.

Surface elements live in the surface's own frame: the panel is the plane
z = center.z and the relay antenna hangs ``relay_offset`` away from the
panel center (its z component is the mounting height d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class GeometryError(ValueError):
    """Raised for geometry that violates the layout invariants."""


@dataclass(frozen=True)
class ScenarioGeometry:
    d_x: float
    d_y: float = 10.0
    h_tx: float = 10.0
    h_rx: float = 1.0
    h_node: float = 10.0

    def validate(self) -> None:
        if not self.d_x >= 0:
            raise GeometryError(f"d_x must be >= 0, got {self.d_x}")
        if not self.d_y > 0:
            raise GeometryError(f"d_y must be > 0, got {self.d_y}")
        for name in ("h_tx", "h_rx", "h_node"):
            if not getattr(self, name) > 0:
                raise GeometryError(f"{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class NodePositions:
    tx: tuple[float, float, float]
    rx: tuple[float, float, float]
    node: tuple[float, float, float]

    @property
    def tx_node_distance(self) -> float:
        return link_distance(self.tx, self.node)

    @property
    def node_rx_distance(self) -> float:
        return link_distance(self.node, self.rx)


def place_nodes(geom: ScenarioGeometry) -> NodePositions:
    geom.validate()
    tx = (0.0, 0.0, float(geom.h_tx))
    rx = (float(geom.d_x), 0.0, float(geom.h_rx))
    node = (geom.d_x / 2.0, float(geom.d_y), float(geom.h_node))
    return NodePositions(tx=tx, rx=rx, node=node)


def link_distance(a, b) -> float:
    """Euclidean distance between two 3D points, in meters."""
    return math.dist(a, b)


def grid_shape(m: int) -> tuple[int, int]:
    """Most square (rows, cols) factor pair of ``m`` with rows <= cols."""
    if m < 1:
        raise GeometryError(f"element count must be positive, got {m}")
    rows = math.isqrt(m)
    while m % rows:
        rows -= 1
    return rows, m // rows


@dataclass(frozen=True)
class SurfaceLayout:
    """Rectangular panel of ``element_count`` elements.

    ``grid_rows``/``grid_cols`` of 0 request the automatic near-square
    factorization from :func:`grid_shape`.
    """

    element_count: int
    element_pitch: float
    relay_offset: tuple[float, float, float]
    grid_rows: int = 0
    grid_cols: int = 0
    center: tuple[float, float, float] = field(default=(0.0, 0.0, 0.0))

    def __post_init__(self):
        if self.element_count < 1:
            raise GeometryError(f"element_count must be positive, got {self.element_count}")
        if not self.element_pitch > 0:
            raise GeometryError(f"element_pitch must be > 0, got {self.element_pitch}")
        if self.grid_rows == 0 and self.grid_cols == 0:
            rows, cols = grid_shape(self.element_count)
            object.__setattr__(self, "grid_rows", rows)
            object.__setattr__(self, "grid_cols", cols)
        if self.grid_rows * self.grid_cols != self.element_count:
            raise GeometryError(
                f"grid {self.grid_rows}x{self.grid_cols} does not hold "
                f"{self.element_count} elements"
            )
        if len(self.relay_offset) != 3 or self.relay_offset[2] == 0:
            raise GeometryError("relay must sit off the surface plane (relay_offset z != 0)")

    @classmethod
    def default(
        cls,
        element_count: int,
        wavelength: float,
        pitch_wavelengths: float = 0.5,
        relay_height_wavelengths: float = 10.0,
    ) -> "SurfaceLayout":
        """Half-wavelength grid with the relay on boresight 10 wavelengths out."""
        return cls(
            element_count=element_count,
            element_pitch=pitch_wavelengths * wavelength,
            relay_offset=(0.0, 0.0, relay_height_wavelengths * wavelength),
        )

    @property
    def relay_position(self) -> np.ndarray:
        return np.asarray(self.center, dtype=float) + np.asarray(self.relay_offset, dtype=float)

    @property
    def relay_height(self) -> float:
        return abs(self.relay_offset[2])


def element_positions(layout: SurfaceLayout) -> np.ndarray:
    """(M, 3) array of element centers, row-major, centered on ``layout.center``."""
    p = layout.element_pitch
    xs = (np.arange(layout.grid_cols) - (layout.grid_cols - 1) / 2.0) * p
    ys = (np.arange(layout.grid_rows) - (layout.grid_rows - 1) / 2.0) * p
    gx, gy = np.meshgrid(xs, ys)
    pts = np.column_stack([gx.ravel(), gy.ravel(), np.zeros(layout.element_count)])
    return pts + np.asarray(layout.center, dtype=float)
