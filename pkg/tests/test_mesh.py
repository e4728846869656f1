from __future__ import annotations

import numpy as np
import pytest

from bgk1d.errors import ConfigError
from bgk1d.mesh import build_mesh


def test_uniform_edges_and_centers():
    mesh = build_mesh(0.0, 1.0, 4)
    assert mesh.h == pytest.approx(0.25)
    np.testing.assert_allclose(mesh.edges, [0.0, 0.25, 0.5, 0.75, 1.0])
    np.testing.assert_allclose(mesh.centers, [0.125, 0.375, 0.625, 0.875])


def test_endpoints_exact_for_irrational_width():
    mesh = build_mesh(-np.pi, np.pi, 7)
    assert mesh.edges[0] == -np.pi
    assert mesh.edges[-1] == np.pi


def test_locate_interior_points():
    mesh = build_mesh(0.0, 1.0, 4)
    np.testing.assert_array_equal(mesh.locate(np.array([0.1, 0.3, 0.9])), [0, 1, 3])


def test_locate_interior_edge_goes_left():
    mesh = build_mesh(0.0, 1.0, 4)
    # interior edges belong to the left cell; domain endpoints stay in range
    np.testing.assert_array_equal(
        mesh.locate(np.array([0.0, 0.25, 0.5, 1.0])), [0, 0, 1, 3]
    )


def test_node_coordinates_shape():
    mesh = build_mesh(0.0, 2.0, 5)
    coords = mesh.node_coordinates(np.array([-1.0, 0.0, 1.0]))
    assert coords.shape == (5, 3)
    np.testing.assert_allclose(coords[:, 1], mesh.centers)
    np.testing.assert_allclose(coords[:, 0], mesh.edges[:-1])
    np.testing.assert_allclose(coords[:, 2], mesh.edges[1:])


def test_invalid_configs_raise():
    with pytest.raises(ConfigError):
        build_mesh(0.0, 1.0, 0)
    with pytest.raises(ConfigError):
        build_mesh(1.0, 1.0, 4)
