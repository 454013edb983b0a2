import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relayirs.geometry import (
    GeometryError,
    ScenarioGeometry,
    SurfaceLayout,
    element_positions,
    grid_shape,
    link_distance,
    place_nodes,
)

coords = st.floats(-1e4, 1e4, allow_nan=False)
points = st.tuples(coords, coords, coords)


def test_place_nodes_coincident_tx_rx():
    nodes = place_nodes(ScenarioGeometry(d_x=0, d_y=10, h_tx=10, h_rx=1, h_node=10))
    assert nodes.tx == (0, 0, 10)
    assert nodes.rx == (0, 0, 1)
    assert nodes.node == (0, 10, 10)


@pytest.mark.parametrize("d_x, node_x", [(400, 200), (150, 75)])
def test_place_nodes_midpoint(d_x, node_x):
    assert place_nodes(ScenarioGeometry(d_x=d_x)).node == (node_x, 10, 10)


@pytest.mark.parametrize(
    "geom",
    [
        ScenarioGeometry(d_x=-1),
        ScenarioGeometry(d_x=10, d_y=0),
        ScenarioGeometry(d_x=10, h_rx=0),
        ScenarioGeometry(d_x=10, h_node=-2),
    ],
)
def test_place_nodes_rejects_invalid(geom):
    with pytest.raises(GeometryError):
        place_nodes(geom)


def test_link_distances_at_400m():
    nodes = place_nodes(ScenarioGeometry(d_x=400))
    assert link_distance((0, 0, 10), (0, 10, 10)) == 10.0
    assert nodes.tx_node_distance == pytest.approx(math.sqrt(200**2 + 10**2), rel=1e-15)
    assert nodes.tx_node_distance == pytest.approx(200.2498, abs=5e-5)
    assert nodes.node_rx_distance == pytest.approx(200.4520, abs=5e-5)


@given(st.floats(0, 1e3), st.floats(0.1, 50), st.floats(0.1, 50), st.floats(0.1, 50))
def test_height_swap_mirrors(d_x, h_tx, h_rx, h_node):
    a = place_nodes(ScenarioGeometry(d_x, 10, h_tx, h_rx, h_node))
    b = place_nodes(ScenarioGeometry(d_x, 10, h_rx, h_tx, h_node))
    assert a.tx[2] == b.rx[2] and a.rx[2] == b.tx[2]
    assert a.node == b.node


@given(points, points, points)
def test_distance_symmetric_and_triangle(a, b, c):
    assert link_distance(a, b) == link_distance(b, a)
    assert link_distance(a, c) <= link_distance(a, b) + link_distance(b, c) + 1e-9


def test_single_element_at_center():
    layout = SurfaceLayout(1, 0.01, (0, 0, 0.1), center=(1.0, 2.0, 3.0))
    np.testing.assert_array_equal(element_positions(layout), [[1.0, 2.0, 3.0]])


def test_two_by_two_offsets():
    p = 0.3
    pts = element_positions(SurfaceLayout(4, p, (0, 0, 1)))
    assert sorted(map(tuple, pts[:, :2].round(12))) == sorted(
        [(-p / 2, -p / 2), (p / 2, -p / 2), (-p / 2, p / 2), (p / 2, p / 2)]
    )


@given(st.integers(1, 400), st.floats(1e-3, 1.0), points)
def test_centroid_is_center(m, pitch, center):
    pts = element_positions(SurfaceLayout(m, pitch, (0, 0, 1), center=center))
    assert len(pts) == m
    np.testing.assert_allclose(pts.mean(axis=0), center, atol=1e-12 + 1e-15 * max(map(abs, center)))


def test_three_by_three_centroid_by_summing():
    pts = element_positions(SurfaceLayout(9, 0.05, (0, 0, 1), center=(4.0, -1.0, 0.5)))
    sx = sum(p[0] for p in pts) / 9
    sy = sum(p[1] for p in pts) / 9
    sz = sum(p[2] for p in pts) / 9
    assert (sx, sy, sz) == pytest.approx((4.0, -1.0, 0.5), abs=1e-12)


@pytest.mark.parametrize("m, shape", [(1, (1, 1)), (12, (3, 4)), (50_000, (200, 250)), (7, (1, 7)), (64, (8, 8))])
def test_grid_shape(m, shape):
    assert grid_shape(m) == shape


def test_layout_rejects_bad_grid_and_in_plane_relay():
    with pytest.raises(GeometryError):
        SurfaceLayout(6, 0.1, (0, 0, 1), grid_rows=4, grid_cols=2)
    with pytest.raises(GeometryError):
        SurfaceLayout(4, 0.1, (0.5, 0, 0))
    with pytest.raises(GeometryError):
        SurfaceLayout(4, 0.0, (0, 0, 1))
