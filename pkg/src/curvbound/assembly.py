"""Assembly of the curvature-bounded small-volume body and fixtures.

The body is a patch complex of revolution about the z axis.  A central
column chamber (two unit-sphere caps joined by a unit cylinder) holds
volume 2a + 2b; a surrounding belt chamber bounded by unit-tube torus
walls holds exactly c; two flat washer walls of axial gap epsilon (the
"white" thin parts) connect the two, adding O(epsilon) volume.  All
non-white walls have |principal curvature| <= 1 with equality attained,
and the stitched tessellation is a topological sphere.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import meshing
from .meshing import TriMesh, stitch, tessellate
from .patches import ParametricPatch
from .profiles import BLUE_RHO, eval_constants

COLORS = ("red", "blue", "yellow", "black", "green", "white")

_K = eval_constants()
# axial clearance of the cap spheres: the column volume is
# 2 pi / 3 + 2 pi delta, which equals 2a + 2b at this value
CAP_DELTA = (2.0 * _K["a"] + 2.0 * _K["b"] - 2.0 * math.pi / 3.0) \
    / (2.0 * math.pi)

SEAM_TOL = 1e-7
MIN_ELBOW_RADIUS = 2.0
BLUE_MARGIN = 0.05


class AssemblyError(ValueError):
    pass


@dataclass
class JerrycanSpec:
    thinness: float = 0.05
    resolution: int = 128
    # belt wall extents (radians): red tori swing from the blue tangency
    # to the outer cusp, the blue wall from the washer gap to the tangency
    red_extent: tuple = (math.radians(210.0), math.radians(270.0))
    blue_tangency: float = math.pi / 6.0
    cap_delta: float = CAP_DELTA
    # optional S-tube: list of {"kind": "elbow", "centerline_radius": r,
    # "sweep": ...} / {"kind": "straight", "length": ...} entries.  The
    # default body needs none; entries are validated either way.
    s_tube: list = field(default_factory=list)

    def __post_init__(self):
        if not 0.0 < self.thinness <= 0.1:
            raise AssemblyError(
                "thinness must be in (0, 0.1], got %r" % self.thinness)
        if self.resolution < 16:
            raise AssemblyError("resolution must be >= 16")
        if not 0.0 < self.blue_tangency <= math.pi / 2:
            raise AssemblyError("blue tangency angle out of range")
        # |parallel curvature| on the blue torus wall stays below 1 only
        # while cos(theta) >= -(2 - sqrt(3))/2; enforce with a margin
        if math.cos(self.blue_tangency) < -BLUE_RHO / 2.0 + BLUE_MARGIN:
            raise AssemblyError("blue extent violates the curvature bound")
        for seg in self.s_tube:
            if seg.get("kind") == "elbow" \
                    and seg.get("centerline_radius", 0.0) < MIN_ELBOW_RADIUS:
                raise AssemblyError(
                    "S-tube elbow centerline radius must be >= 2")

    def to_dict(self):
        return {"thinness": self.thinness, "resolution": self.resolution,
                "red_extent": list(self.red_extent),
                "blue_tangency": self.blue_tangency,
                "cap_delta": self.cap_delta, "s_tube": list(self.s_tube)}

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if "red_extent" in d:
            d["red_extent"] = tuple(d["red_extent"])
        return cls(**d)


class PlacedPatch:
    """A patch with its color tag and outward-orientation flag."""

    __slots__ = ("patch", "color", "flip")

    def __init__(self, patch, color, flip=False):
        if color not in COLORS:
            raise AssemblyError("unknown color %r" % color)
        self.patch = patch
        self.color = color
        self.flip = flip


class AssemblyManifest:

    def __init__(self, placed, seams, resolution, explicit_mesh=None):
        self.placed = list(placed)
        self.seams = list(seams)      # (name_a, name_b, measured gap)
        self.resolution = resolution
        self.explicit_mesh = explicit_mesh

    def patch(self, name):
        for pl in self.placed:
            if pl.patch.name == name:
                return pl
        raise KeyError(name)

    def mesh(self, resolution=None):
        if self.explicit_mesh is not None:
            return self.explicit_mesh.copy()
        res = resolution or self.resolution
        frags = []
        for pl in self.placed:
            length = _profile_length(pl.patch)
            nv = max(2, int(math.ceil(res * length / (2 * math.pi))))
            frags.append(tessellate(pl.patch, res, nv, flip=pl.flip))
        return stitch(frags, SEAM_TOL)

    def max_curvature(self, include_white=False, grid_density=64,
                      refinement_levels=4, workers=1):
        """Largest sampled |principal curvature| and where it occurs."""
        targets = [pl for pl in self.placed
                   if include_white or pl.color != "white"]
        if workers > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(
                    lambda pl: pl.patch.max_abs_curvature(
                        grid_density, refinement_levels), targets))
        else:
            results = [pl.patch.max_abs_curvature(grid_density,
                                                  refinement_levels)
                       for pl in targets]
        best, where = -np.inf, None
        for pl, r in zip(targets, results):
            if r.value > best:
                best = r.value
                where = {"patch": pl.patch.name, "uv": list(r.uv),
                         "position": [float(x) for x in
                                      pl.patch.evaluate(*r.uv)]}
        return best, where

    def centroid(self):
        return np.mean([pl.patch.translation for pl in self.placed], axis=0)

    def to_dict(self):
        return {"patches": [dict(pl.patch.to_dict(), color=pl.color)
                            for pl in self.placed],
                "seams": [{"a": a, "b": b, "gap": g}
                          for a, b, g in self.seams],
                "resolution": self.resolution}


def _profile_length(patch):
    """Arc length of the patch profile curve (meridian), pre-scale.

    Deliberately excludes patch.scale so a homothety of the assembly
    keeps the tessellation connectivity, and discrete volumes scale by
    exactly s^3.
    """
    v = np.linspace(patch.domain[2], patch.domain[3], 129)
    rho, z = patch._profile(v)[:2]
    rho = np.broadcast_to(rho, v.shape)
    z = np.broadcast_to(z, v.shape)
    return float(np.sum(np.hypot(np.diff(rho), np.diff(z))))


def _ring(patch, v, n=64):
    u = np.linspace(patch.domain[0], patch.domain[1], n, endpoint=False)
    return patch.evaluate(u, np.full_like(u, v))


def _seam_gap(pa, va, pb, vb, n=64):
    return float(np.max(np.linalg.norm(
        _ring(pa, va, n) - _ring(pb, vb, n), axis=1)))


def build_jerrycan(spec=None):
    """Assemble the patch complex for the given spec.

    Raises AssemblyError when a configured extent violates the curvature
    bound or a seam fails to close.
    """
    spec = spec or JerrycanSpec()
    eps = spec.thinness
    delta = spec.cap_delta
    theta_g = math.asin(eps / 2.0)      # blue angle at the washer gap
    rho_g = BLUE_RHO + math.cos(theta_g)
    t = spec.blue_tangency
    red_lo, red_hi = spec.red_extent

    def P(kind, params, domain, translation=(0, 0, 0), name=""):
        return ParametricPatch(kind, params, (0.0, 2 * math.pi) + domain,
                               translation=translation, name=name)

    placed = [
        PlacedPatch(P("sphere", {"radius": 1.0}, (-math.pi / 2, 0.0),
                      (0, 0, 1 + delta), "cap-top"), "yellow", flip=True),
        PlacedPatch(P("cylinder", {"radius": 1.0}, (eps / 2, 1 + delta),
                      name="wall-upper"), "black"),
        PlacedPatch(P("plane-disc", {}, (1.0, rho_g), (0, 0, eps / 2),
                      name="washer-top"), "white", flip=True),
        PlacedPatch(P("torus", {"major_radius": BLUE_RHO}, (theta_g, t),
                      name="belt-inner-upper"), "blue", flip=True),
        PlacedPatch(P("torus", {"major_radius": 2.0},
                      (red_lo - 2 * math.pi, red_hi - 2 * math.pi),
                      (0, 0, 1), "belt-outer-upper"), "red", flip=True),
        PlacedPatch(P("torus", {"major_radius": 2.0},
                      (2 * math.pi - red_hi, 2 * math.pi - red_lo),
                      (0, 0, -1), "belt-outer-lower"), "red", flip=True),
        PlacedPatch(P("torus", {"major_radius": BLUE_RHO}, (-t, -theta_g),
                      name="belt-inner-lower"), "blue", flip=True),
        PlacedPatch(P("plane-disc", {}, (1.0, rho_g), (0, 0, -eps / 2),
                      name="washer-bottom"), "white"),
        PlacedPatch(P("cylinder", {"radius": 1.0}, (-(1 + delta), -eps / 2),
                      name="wall-lower"), "black"),
        PlacedPatch(P("sphere", {"radius": 1.0}, (0.0, math.pi / 2),
                      (0, 0, -(1 + delta)), "cap-bottom"), "yellow",
                    flip=True),
    ]

    # certify every non-white patch extent before accepting the build
    for pl in placed:
        if pl.color == "white":
            continue
        r = pl.patch.max_abs_curvature(grid_density=32, refinement_levels=3)
        if r.value > 1.0 + 1e-6:
            raise AssemblyError(
                "curvature violation on %s: |k| = %.6f at uv=%r"
                % (pl.patch.name, r.value, r.uv))

    # seam ring agreement, walked along the profile chain
    chain = [
        ("cap-top", 0.0, "wall-upper", 1 + delta),
        ("wall-upper", eps / 2, "washer-top", 1.0),
        ("washer-top", rho_g, "belt-inner-upper", theta_g),
        ("belt-inner-upper", t, "belt-outer-upper", red_lo - 2 * math.pi),
        ("belt-outer-upper", red_hi - 2 * math.pi,
         "belt-outer-lower", 2 * math.pi - red_hi),
        ("belt-outer-lower", 2 * math.pi - red_lo,
         "belt-inner-lower", -t),
        ("belt-inner-lower", -theta_g, "washer-bottom", rho_g),
        ("washer-bottom", 1.0, "wall-lower", -eps / 2),
        ("wall-lower", -(1 + delta), "cap-bottom", 0.0),
    ]
    manifest = AssemblyManifest(placed, [], spec.resolution)
    for name_a, va, name_b, vb in chain:
        gap = _seam_gap(manifest.patch(name_a).patch, va,
                        manifest.patch(name_b).patch, vb)
        if gap > SEAM_TOL:
            raise AssemblyError("seam %s/%s gap %.3e exceeds tolerance"
                                % (name_a, name_b, gap))
        manifest.seams.append((name_a, name_b, gap))
    return manifest


def inflate(manifest, s):
    """Homothety by s about the assembly centroid.

    Curvature samples scale by 1/s, enclosed volume by s^3.
    """
    if s <= 1.0:
        raise AssemblyError("inflation factor must be > 1, got %r" % s)
    about = manifest.centroid()
    placed = [PlacedPatch(pl.patch.scaled(s, about), pl.color, pl.flip)
              for pl in manifest.placed]
    seams = [(a, b, g * s) for a, b, g in manifest.seams]
    mesh = None
    if manifest.explicit_mesh is not None:
        mesh = manifest.explicit_mesh.scaled(s, about)
    return AssemblyManifest(placed, seams, manifest.resolution, mesh)


def build_fixture(kind, resolution=64):
    """Closed certification fixtures with known topology and volume."""
    if kind == "sphere":
        p = ParametricPatch("sphere", {"radius": 1.0}, name="sphere")
        return AssemblyManifest([PlacedPatch(p, "yellow")], [], resolution)
    if kind == "torus":
        p = ParametricPatch("torus", {"major_radius": 2.0}, name="torus")
        return AssemblyManifest([PlacedPatch(p, "red")], [], resolution)
    if kind == "genus2":
        p1 = ParametricPatch("torus", {"major_radius": 2.0}, name="handle-1")
        p2 = ParametricPatch("torus", {"major_radius": 2.0},
                             translation=(0, 0, 3), name="handle-2")
        mesh = meshing.genus2_mesh(nu=max(resolution, 32),
                                   nv=2 * max(resolution // 3, 12))
        return AssemblyManifest([PlacedPatch(p1, "red"),
                                 PlacedPatch(p2, "red")], [], resolution,
                                explicit_mesh=mesh)
    raise AssemblyError("unknown fixture %r" % kind)
