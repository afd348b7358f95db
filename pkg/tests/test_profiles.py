import math

import numpy as np
import pytest
from mpmath import mp, mpf, pi as mppi, sqrt as mpsqrt

from curvbound import profiles as P


def mp_constants():
    # high-precision oracle for the closed forms
    mp.dps = 50
    s3 = mpsqrt(3)
    a = mppi * (2 - 2 / s3) * (s3 - mppi / 2)
    b = 8 - 2 * s3 + mppi * s3 + mppi ** 2 / 3 - 4 * mppi
    c = 4 * mppi * s3 - 2 * mppi - 2 * mppi ** 2 + mppi ** 2 / s3
    return a, b, c


def test_constants_match_high_precision():
    a, b, c = mp_constants()
    k = P.eval_constants()
    assert abs(k["a"] - float(a)) < 1e-12
    assert abs(k["b"] - float(b)) < 1e-12
    assert abs(k["c"] - float(c)) < 1e-12
    assert abs(k["total"] - float(2 * a + 2 * b + c)) < 1e-12
    assert k["unit_ball"] == pytest.approx(4 * math.pi / 3, abs=1e-15)


def test_constants_bounds():
    k = P.eval_constants()
    assert k["a"] < 0.5
    assert k["b"] < 0.8
    assert k["c"] < 1.5
    assert k["total"] < k["unit_ball"]


def circle_region(center=(2.0, 0.0), r=1.0):
    return P.ProfileRegion([P.Arc(center, r, 0.0, 2 * math.pi)])


def rect_region(r0, r1, z0, z1):
    return P.ProfileRegion([
        P.Segment([r0, z0], [r1, z0]),
        P.Segment([r1, z0], [r1, z1]),
        P.Segment([r1, z1], [r0, z1]),
        P.Segment([r0, z1], [r0, z0]),
    ])


def test_circle_area_and_torus_volume():
    reg = circle_region()
    assert reg.area() == pytest.approx(math.pi, abs=1e-12)
    # Pappus: full torus of tube radius 1 at distance 2
    assert reg.revolved_volume() == pytest.approx(4 * math.pi ** 2,
                                                  rel=1e-12)


def test_rectangle_cylinder_shell():
    reg = rect_region(1.0, 2.0, 0.0, 3.0)
    assert reg.area() == pytest.approx(3.0, abs=1e-12)
    # washer shell: pi (r1^2 - r0^2) h
    assert reg.revolved_volume() == pytest.approx(
        math.pi * (4.0 - 1.0) * 3.0, rel=1e-12)
    assert reg.centroid_rho() == pytest.approx(1.5, abs=1e-12)


def test_area_against_polyline_shoelace():
    reg = P.lower_cork_region()
    pts = reg.polyline(512)
    x, y = pts[:, 0], pts[:, 1]
    shoelace = 0.5 * abs(np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]))
    assert reg.area() == pytest.approx(shoelace, rel=1e-5)


def test_reconstructions_match_closed_forms():
    k = P.eval_constants()
    assert P.upper_cork_region().revolved_volume() == pytest.approx(
        k["a"], abs=1e-9)
    assert P.lower_cork_region().revolved_volume() == pytest.approx(
        k["b"], abs=1e-9)
    assert P.central_region().revolved_volume() == pytest.approx(
        k["c"], abs=1e-9)


def test_reconstruction_table():
    rows = P.reconstruction_table()
    assert all(r["pass"] for r in rows)
    assert all(r["difference"] < 1e-4 for r in rows)


def random_region(rng):
    """Random simple region in the half-plane: polygon or rounded shape."""
    kind = rng.integers(0, 3)
    if kind == 0:
        return rect_region(*np.sort(rng.uniform(0.2, 4.0, 2)),
                           *np.sort(rng.uniform(-2.0, 2.0, 2)))
    if kind == 1:
        # pill: circle of random radius away from the axis
        r = rng.uniform(0.2, 1.0)
        c = (rng.uniform(r + 0.2, 5.0), rng.uniform(-1.0, 1.0))
        return circle_region(c, r)
    # right triangle
    r0 = rng.uniform(0.2, 2.0)
    w, h = rng.uniform(0.3, 2.0, 2)
    z0 = rng.uniform(-1.0, 1.0)
    return P.ProfileRegion([
        P.Segment([r0, z0], [r0 + w, z0]),
        P.Segment([r0 + w, z0], [r0, z0 + h]),
        P.Segment([r0, z0 + h], [r0, z0]),
    ])


def test_pappus_on_random_regions():
    rng = np.random.default_rng(7)
    for _ in range(100):
        reg = random_region(rng)
        v_quad = reg.revolved_volume()
        v_papp = 2 * math.pi * abs(reg.centroid_rho()) * reg.area()
        assert v_quad == pytest.approx(v_papp, rel=1e-9)


def test_chord_split_additivity():
    rng = np.random.default_rng(11)
    for _ in range(20):
        r0, r1 = np.sort(rng.uniform(0.2, 4.0, 2))
        z0, z1 = np.sort(rng.uniform(-2.0, 2.0, 2))
        rc = rng.uniform(r0 + 1e-3, r1 - 1e-3)
        whole = rect_region(r0, r1, z0, z1)
        left = rect_region(r0, rc, z0, z1)
        right = rect_region(rc, r1, z0, z1)
        assert left.revolved_volume() + right.revolved_volume() \
            == pytest.approx(whole.revolved_volume(), rel=1e-9)


def test_axis_translation_monotonicity():
    rng = np.random.default_rng(13)
    for _ in range(20):
        reg = random_region(rng)
        d = rng.uniform(0.1, 2.0)
        dv = reg.translated(d).revolved_volume() - reg.revolved_volume()
        assert dv == pytest.approx(2 * math.pi * d * reg.area(), rel=1e-9)


def test_quadrature_convergence():
    for reg in (circle_region(), P.central_region(),
                P.upper_cork_region(), P.lower_cork_region()):
        assert abs(reg.revolved_volume(order=32)
                   - reg.revolved_volume(order=64)) < 1e-10


def test_open_loop_rejected():
    with pytest.raises(P.ProfileError, match="not closed"):
        P.ProfileRegion([P.Segment([1, 0], [2, 0]),
                         P.Segment([2, 0], [1.5, 1.0])])


def test_axis_crossing_rejected():
    with pytest.raises(P.ProfileError, match="axis"):
        rect_region(-0.5, 1.0, 0.0, 1.0)


def test_self_intersection_rejected():
    with pytest.raises(P.ProfileError, match="self-intersect"):
        P.ProfileRegion([
            P.Segment([1, 0], [3, 1]),
            P.Segment([3, 1], [1, 1]),
            P.Segment([1, 1], [3, 0]),
            P.Segment([3, 0], [1, 0]),
        ])


def test_edge_json_round_trip():
    reg = P.lower_cork_region()
    again = P.ProfileRegion.from_dict(reg.to_dict())
    assert again.revolved_volume() == pytest.approx(
        reg.revolved_volume(), rel=1e-15)
