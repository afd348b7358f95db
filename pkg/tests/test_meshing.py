import math

import numpy as np
import pytest

from curvbound import meshing as M
from curvbound.patches import ParametricPatch


def sphere_patch(r=1.0):
    return ParametricPatch("sphere", {"radius": r})


def icosahedron():
    phi = (1 + math.sqrt(5)) / 2
    v = []
    for a, b in [(1, phi), (-1, phi), (1, -phi), (-1, -phi)]:
        v += [(0, a, b), (a, b, 0), (b, 0, a)]
    v = np.asarray(v, dtype=float)
    f = [(0, 1, 4), (0, 4, 9), (0, 9, 10), (0, 10, 2), (0, 2, 1),
         (1, 2, 6), (1, 6, 7), (1, 7, 4), (4, 7, 8), (4, 8, 9),
         (9, 8, 11), (9, 11, 10), (10, 11, 5), (10, 5, 2), (2, 5, 6),
         (6, 5, 3), (6, 3, 7), (7, 3, 8), (8, 3, 11), (11, 3, 5)]
    return M.TriMesh(v, np.asarray(f))


def cube():
    v = np.array([[x, y, z] for x in (0, 1) for y in (0, 1)
                  for z in (0, 1)], dtype=float)
    f = np.array([(0, 1, 3), (0, 3, 2), (4, 6, 7), (4, 7, 5),
                  (0, 4, 5), (0, 5, 1), (2, 3, 7), (2, 7, 6),
                  (0, 2, 6), (0, 6, 4), (1, 5, 7), (1, 7, 3)])
    return M.TriMesh(v, f)


def test_icosahedron_counts():
    rep = M.topology(icosahedron())
    assert (rep.V, rep.E, rep.F) == (12, 30, 20)
    assert rep.chi == 2 and rep.genus == 0
    assert rep.watertight and rep.orientable


def test_cube_volume_and_translation_invariance():
    c = cube()
    assert M.enclosed_volume(c) == pytest.approx(1.0, abs=1e-15)
    moved = c.translated([10.0, 0.0, 0.0])
    assert M.enclosed_volume(moved) == pytest.approx(1.0, rel=1e-12)


def test_sphere_tessellation_closed_and_area():
    m = M.tessellate(sphere_patch(), 64, 64)
    rep = M.topology(m)
    assert rep.chi == 2 and rep.watertight and rep.genus == 0
    assert m.area() == pytest.approx(4 * math.pi, rel=0.01)


def test_area_converges_quadratically():
    errs = [abs(M.tessellate(sphere_patch(), n, n).area() - 4 * math.pi)
            for n in (16, 32, 64)]
    assert errs[0] / errs[1] > 3.0
    assert errs[1] / errs[2] > 3.0


def test_volume_refinement_rate():
    target = 4 * math.pi / 3
    errs = [abs(M.enclosed_volume(M.tessellate(sphere_patch(), n, n))
                - target) for n in (16, 32, 64)]
    assert errs[0] / errs[1] > 3.0
    assert errs[1] / errs[2] > 3.0


def test_sphere_volume_at_128():
    v = M.enclosed_volume(M.tessellate(sphere_patch(), 128, 128))
    assert v == pytest.approx(4 * math.pi / 3, rel=1e-3)


def test_torus_tessellation():
    p = ParametricPatch("torus", {"major_radius": 2.0})
    m = M.tessellate(p, 64, 64)
    rep = M.topology(m)
    assert rep.chi == 0 and rep.genus == 1 and rep.watertight
    assert M.enclosed_volume(m) == pytest.approx(4 * math.pi ** 2,
                                                 rel=0.005)


def test_two_hemispheres_stitch():
    top = ParametricPatch("sphere", {"radius": 1.0},
                          domain=(0, 2 * math.pi, 0, math.pi / 2))
    bot = ParametricPatch("sphere", {"radius": 1.0},
                          domain=(0, 2 * math.pi, -math.pi / 2, 0))
    m = M.stitch([M.tessellate(top, 32, 16), M.tessellate(bot, 32, 16)])
    rep = M.topology(m)
    assert rep.watertight and rep.chi == 2 and rep.genus == 0


def test_stitch_identity_at_zero_tol():
    m = M.tessellate(sphere_patch(), 16, 16)
    s = M.stitch(m, tol=0.0)
    assert len(s.vertices) == len(m.vertices)
    assert len(s.faces) == len(m.faces)


def test_stitch_idempotent():
    top = ParametricPatch("sphere", {"radius": 1.0},
                          domain=(0, 2 * math.pi, 0, math.pi / 2))
    bot = ParametricPatch("sphere", {"radius": 1.0},
                          domain=(0, 2 * math.pi, -math.pi / 2, 0))
    s1 = M.stitch([M.tessellate(top, 32, 16), M.tessellate(bot, 32, 16)])
    s2 = M.stitch(s1)
    assert M.topology(s2) == M.topology(s1)


def test_orientation_conflict_detected():
    top = ParametricPatch("sphere", {"radius": 1.0},
                          domain=(0, 2 * math.pi, 0, math.pi / 2))
    bot = ParametricPatch("sphere", {"radius": 1.0},
                          domain=(0, 2 * math.pi, -math.pi / 2, 0))
    with pytest.raises(M.OrientationError):
        M.stitch([M.tessellate(top, 32, 16),
                  M.tessellate(bot, 32, 16).flipped()])


def test_nonmanifold_edge_detected():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1],
                  [0, -1, 0]], dtype=float)
    f = np.array([(0, 1, 2), (1, 0, 3), (0, 1, 4)])
    with pytest.raises(M.NonManifoldError):
        M.topology(M.TriMesh(v, f))


def test_chi_two_routes_agree():
    for mesh in (icosahedron(), cube(),
                 M.tessellate(sphere_patch(), 24, 24),
                 M.genus2_mesh(nu=36, nv=24)):
        assert M.topology(mesh).chi \
            == M.euler_characteristic_halfedge(mesh)


def test_genus2_fixture():
    rep = M.topology(M.genus2_mesh())
    assert rep.chi == -2 and rep.genus == 2
    assert rep.watertight and rep.orientable


def test_volume_scaling_and_rigid_motion():
    m = M.tessellate(sphere_patch(), 32, 32)
    v0 = M.enclosed_volume(m)
    for s in (0.5, 2.0):
        assert M.enclosed_volume(m.scaled(s)) \
            == pytest.approx(s ** 3 * v0, rel=1e-12)
    th = 0.7
    R = np.array([[math.cos(th), -math.sin(th), 0],
                  [math.sin(th), math.cos(th), 0], [0, 0, 1]])
    rotated = M.TriMesh(m.vertices @ R.T + [3.0, -1.0, 2.0], m.faces)
    assert M.enclosed_volume(rotated) == pytest.approx(v0, rel=1e-10)


def test_volume_requires_watertight():
    open_mesh = M.tessellate(
        ParametricPatch("sphere", {"radius": 1.0},
                        domain=(0, 2 * math.pi, 0, math.pi / 2)), 16, 8)
    with pytest.raises(M.MeshError, match="watertight"):
        M.enclosed_volume(open_mesh)
