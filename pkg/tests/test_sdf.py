import math

import numpy as np
import pytest

from curvbound import meshing as M
from curvbound import sdf as S
from curvbound.patches import ParametricPatch


def sphere_mesh(n=64):
    return M.tessellate(ParametricPatch("sphere", {"radius": 1.0}), n, n)


def cube_mesh():
    v = np.array([[x, y, z] for x in (0, 1) for y in (0, 1)
                  for z in (0, 1)], dtype=float)
    f = np.array([(0, 1, 3), (0, 3, 2), (4, 6, 7), (4, 7, 5),
                  (0, 4, 5), (0, 5, 1), (2, 3, 7), (2, 7, 6),
                  (0, 2, 6), (0, 6, 4), (1, 5, 7), (1, 7, 3)])
    return M.TriMesh(v, f)


def brute_point_triangle(p, tri):
    # dense barycentric sweep as an independent oracle
    w = np.linspace(0, 1, 201)
    u, v = np.meshgrid(w, w)
    keep = (u + v) <= 1.0
    u, v = u[keep], v[keep]
    pts = (np.outer(1 - u - v, tri[0]) + np.outer(u, tri[1])
           + np.outer(v, tri[2]))
    return np.min(np.linalg.norm(pts - p, axis=1))


def test_point_triangle_distance_fuzz():
    rng = np.random.default_rng(7)
    for _ in range(300):
        tri = rng.normal(size=(3, 3))
        p = rng.normal(size=3) * 2
        got = S._point_triangle_distance(p[None, :], tri[None, :, :])[0]
        ref = brute_point_triangle(p, tri)
        # the sweep only underestimates by its own grid spacing
        assert got <= ref + 1e-12
        assert got >= ref - 0.02 * (1 + np.abs(tri).max())


def test_sdf_bounded_by_vertex_distance():
    mesh = sphere_mesh(32)
    grid = S.build_sdf(mesh, resolution=48)
    rng = np.random.default_rng(3)
    flat = grid.points().reshape(-1, 3)
    idx = rng.integers(0, flat.shape[0], size=500)
    pts = flat[idx]
    vals = grid.values.reshape(-1)[idx]
    from scipy.spatial import cKDTree
    nearest = cKDTree(mesh.vertices).query(pts)[0]
    assert np.all(np.abs(vals) <= nearest + 1e-9)


def test_sphere_sign_pattern():
    grid = S.build_sdf(sphere_mesh(48), resolution=48)
    pts = grid.points().reshape(-1, 3)
    r = np.linalg.norm(pts, axis=1)
    vals = grid.values.reshape(-1)
    inside = vals < 0
    # stay one cell away from the surface when checking signs
    clear = np.abs(r - 1.0) > 1.5 * np.max(grid.cell())
    assert np.array_equal(inside[clear], (r < 1.0)[clear])


def test_sphere_inscribed_ball():
    center, radius = S.inscribed_ball(sphere_mesh(64), grid_resolution=64)
    assert radius == pytest.approx(1.0, rel=0.02)
    assert np.linalg.norm(center) < 0.05


def test_cube_inscribed_ball():
    center, radius = S.inscribed_ball(cube_mesh(), grid_resolution=48)
    assert radius == pytest.approx(0.5, rel=0.02)
    assert np.allclose(center, 0.5, atol=0.02)


def test_empty_interior_raises():
    # a single open triangle bounds no volume
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=float)
    f = np.array([(0, 1, 2)])
    with pytest.raises(S.EmptyInteriorError):
        S.inscribed_ball(M.TriMesh(v, f), grid_resolution=32)


def test_resolution_floor():
    with pytest.raises(ValueError):
        S.build_sdf(sphere_mesh(16), resolution=8)
