"""Closed planar arc-splines with |curvature| <= 1.

An ArcSpline is a G1 loop of circular arcs (radius >= 1) and straight
segments.  Any such simple loop encloses a unit disc; certify_unit_disc
finds a witness center by grid search plus hill climbing on the exact
distance to the curve.
"""

import math

import numpy as np

from .profiles import Arc, Segment, edge_from_dict, CLOSURE_TOL

G1_TOL = 1e-9
MIN_RADIUS = 1.0


class CurveError(ValueError):
    pass


class ArcSpline:

    def __init__(self, edges):
        if len(edges) < 1:
            raise CurveError("curve needs at least one edge")
        self.edges = list(edges)
        self._validate()

    def _validate(self):
        n = len(self.edges)
        for i, e in enumerate(self.edges):
            if isinstance(e, Arc) and e.radius < MIN_RADIUS - 1e-12:
                raise CurveError(
                    "edge %d: arc radius %.6g < 1 violates the curvature "
                    "bound" % (i, e.radius))
            nxt = self.edges[(i + 1) % n]
            gap = np.linalg.norm(e.point(1.0) - nxt.point(0.0))
            if gap > CLOSURE_TOL:
                raise CurveError("loop not closed at edge %d: gap %.3e"
                                 % (i, gap))
            turn = np.linalg.norm(e.tangent(1.0) - nxt.tangent(0.0))
            if turn > math.sqrt(2 * G1_TOL):
                raise CurveError(
                    "tangent break at joint %d (|dT| = %.3e)" % (i, turn))
        if not self._is_simple():
            raise CurveError("curve self-intersects")

    def _is_simple(self, samples_per_edge=256):
        from shapely.geometry import LineString
        pts = self.polyline(samples_per_edge)
        ls = LineString(pts)
        return ls.is_simple or ls.is_ring

    def polyline(self, samples_per_edge=64):
        pts = []
        for e in self.edges:
            # proportional to edge length so the polyline is balanced
            n = max(4, int(samples_per_edge * e.length()
                           / self.total_length() * len(self.edges)))
            t = np.linspace(0.0, 1.0, n, endpoint=False)
            pts.append(e.point(t))
        pts.append(self.edges[0].point(np.array([0.0])))
        return np.concatenate(pts, axis=0)

    def total_length(self):
        return sum(e.length() for e in self.edges)

    def signed_area(self):
        return sum(e.area_term() for e in self.edges)

    def bounding_box(self):
        pts = self.polyline(64)
        # arcs can bulge past sampled points by at most their sagitta;
        # pad generously with the max radius instead of being clever
        lo = pts.min(axis=0) - 0.1
        hi = pts.max(axis=0) + 0.1
        return lo, hi

    def distance(self, points):
        """Unsigned distance from (n, 2) points to the curve, exact."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        d = np.full(len(points), np.inf)
        for e in self.edges:
            d = np.minimum(d, _edge_distance(e, points))
        return d

    def contains(self, points):
        from shapely import contains_xy
        from shapely.geometry import Polygon
        poly = Polygon(self.polyline(256))
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return contains_xy(poly, points[:, 0], points[:, 1])

    def transformed(self, angle=0.0, translation=(0.0, 0.0)):
        c, s = math.cos(angle), math.sin(angle)
        R = np.array([[c, -s], [s, c]])
        t = np.asarray(translation, dtype=float)
        out = []
        for e in self.edges:
            if isinstance(e, Arc):
                out.append(Arc(R @ e.center + t, e.radius,
                               e.start_angle + angle, e.end_angle + angle))
            else:
                out.append(Segment(R @ e.p0 + t, R @ e.p1 + t))
        return ArcSpline(out)

    def to_dict(self):
        return {"edges": [e.to_dict() for e in self.edges]}

    @classmethod
    def from_dict(cls, d):
        return cls([edge_from_dict(e) for e in d["edges"]])


def _edge_distance(e, pts):
    if isinstance(e, Segment):
        d = e.p1 - e.p0
        t = np.clip((pts - e.p0) @ d / (d @ d), 0.0, 1.0)
        return np.linalg.norm(pts - (e.p0 + t[:, None] * d), axis=1)
    rel = pts - e.center
    r = np.linalg.norm(rel, axis=1)
    phi = np.arctan2(rel[:, 1], rel[:, 0])
    a0, a1 = sorted((e.start_angle, e.end_angle))
    # bring phi into [a0, a0 + 2 pi) and test membership in the sweep
    k = np.floor((phi - a0) / (2 * math.pi))
    phi_n = phi - 2 * math.pi * k
    on_arc = phi_n <= a1
    d_circle = np.abs(r - e.radius)
    ends = np.stack([e.point(0.0), e.point(1.0)])
    d_ends = np.min(np.linalg.norm(
        pts[:, None, :] - ends[None, :, :], axis=2), axis=1)
    return np.where(on_arc, d_circle, d_ends)


def enclosed_area(curve):
    return abs(curve.signed_area())


def certify_unit_disc(curve, grid=512, ascent_steps=50):
    """Deepest interior point and its distance to the curve.

    For a valid curve the theorem guarantees the true value is >= 1; the
    returned radius can undershoot only by the search tolerance.
    """
    lo, hi = curve.bounding_box()
    xs = np.linspace(lo[0], hi[0], grid)
    ys = np.linspace(lo[1], hi[1], grid)
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    pts = np.stack([xx.ravel(), yy.ravel()], axis=-1)
    inside = curve.contains(pts)
    if not np.any(inside):
        raise CurveError("no interior grid samples found")
    interior = pts[inside]
    d = curve.distance(interior)
    best = int(np.argmax(d))
    center = interior[best]
    radius = float(d[best])

    step = float(max(hi - lo)) / grid
    dirs = np.array([[1, 0], [-1, 0], [0, 1], [0, -1],
                     [1, 1], [1, -1], [-1, 1], [-1, -1]], dtype=float)
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    for _ in range(ascent_steps):
        cand = center + step * dirs
        dc = curve.distance(cand)
        i = int(np.argmax(dc))
        if dc[i] > radius:
            center, radius = cand[i], float(dc[i])
        else:
            step *= 0.5
    return center, radius


# --- canonical curves -------------------------------------------------------

def unit_circle(center=(0.0, 0.0)):
    c = np.asarray(center, dtype=float)
    return ArcSpline([Arc(c, 1.0, 0.0, 2 * math.pi)])


def stadium(half_length=1.0):
    """Two unit semicircles joined by straight segments of 2*half_length."""
    L = half_length
    return ArcSpline([
        Segment([-L, -1.0], [L, -1.0]),
        Arc([L, 0.0], 1.0, -math.pi / 2, math.pi / 2),
        Segment([L, 1.0], [-L, 1.0]),
        Arc([-L, 0.0], 1.0, math.pi / 2, 3 * math.pi / 2),
    ])


# --- random families --------------------------------------------------------

def random_rounded_polygon(rng):
    """Minkowski sum of a random convex polygon with the unit disc."""
    from scipy.spatial import ConvexHull
    while True:
        pts = rng.uniform(-2.5, 2.5, size=(rng.integers(3, 9), 2))
        try:
            hull = ConvexHull(pts)
        except Exception:
            continue
        v = pts[hull.vertices]          # counterclockwise
        n = len(v)
        if min(np.linalg.norm(v[(i + 1) % n] - v[i]) for i in range(n)) < 0.05:
            continue
        edges = []
        normals = []
        for i in range(n):
            d = v[(i + 1) % n] - v[i]
            d = d / np.linalg.norm(d)
            normals.append(np.array([d[1], -d[0]]))   # outward for ccw
        ok = True
        for i in range(n):
            ni = normals[i]
            edges.append(Segment(v[i] + ni, v[(i + 1) % n] + ni))
            a0 = math.atan2(ni[1], ni[0])
            nj = normals[(i + 1) % n]
            a1 = math.atan2(nj[1], nj[0])
            sweep = (a1 - a0) % (2 * math.pi)
            if sweep < 1e-6:
                ok = False
                break
            edges.append(Arc(v[(i + 1) % n], 1.0, a0, a0 + sweep))
        if not ok:
            continue
        return ArcSpline(edges)


def random_dumbbell(rng):
    """Two round lobes joined by a concave unit-radius waist."""
    R = rng.uniform(1.0, 2.0)
    d_lo, d_hi = R + 0.1, math.sqrt((R + 1.0) ** 2 - 1.2)
    d = rng.uniform(d_lo, d_hi)
    h = math.sqrt((R + 1.0) ** 2 - d * d)
    beta = math.atan2(h, d)
    edges = [
        # right lobe, counterclockwise through (d + R, 0)
        Arc([d, 0.0], R, beta - math.pi, math.pi - beta),
        # top fillet, clockwise (concave) through the waist (0, h - 1)
        Arc([0.0, h], 1.0, -beta, beta - math.pi),
        # left lobe through (-d - R, 0)
        Arc([-d, 0.0], R, beta, 2 * math.pi - beta),
        # bottom fillet through (0, 1 - h)
        Arc([0.0, -h], 1.0, math.pi - beta, beta),
    ]
    curve = ArcSpline(edges)
    return curve.transformed(rng.uniform(0, 2 * math.pi),
                             rng.uniform(-1, 1, size=2))


def random_curves(n, seed=0, nonconvex_every=4):
    """Deterministic mixed corpus; every k-th curve is a dumbbell."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        if nonconvex_every and i % nonconvex_every == nonconvex_every - 1:
            out.append(random_dumbbell(rng))
        else:
            out.append(random_rounded_polygon(rng))
    return out
