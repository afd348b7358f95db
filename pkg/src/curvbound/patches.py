"""Parametric surface patches with analytic curvature.

Every supported kind is a surface of revolution about the local z axis:
a profile (rho(v), z(v)) swept by the azimuth u.  A rigid placement
(rotation, translation) plus an optional uniform scale maps local to
world coordinates; reflections (det = -1 rotations) are allowed and
simply flip the normal.

Kinds and parameters:
    sphere           {"radius": r}        rho = r cos v, z = r sin v
    torus            {"major_radius": R}  rho = R + cos v, z = sin v (tube 1)
    cylinder         {"radius": r}        rho = r, z = v
    plane-disc       {}                   rho = v, z = 0 (annulus/disc)
    revolved-profile {"edge": {...}}      profile arc or segment, see profiles
"""

import json
import math

import numpy as np

from .profiles import Arc, Segment, edge_from_dict

KINDS = ("sphere", "torus", "cylinder", "plane-disc", "revolved-profile")

ORTHONORMAL_TOL = 1e-12
AXIS_TOL = 1e-9
SINGULAR_TOL = 1e-12


class PatchError(ValueError):
    pass


class DomainError(PatchError):
    pass


class SingularityError(PatchError):
    pass


class FundamentalForms:
    """First (E, F, G) and second (L, M, N) fundamental form coefficients."""

    __slots__ = ("E", "F", "G", "L", "M", "N")

    def __init__(self, E, F, G, L, M, N):
        self.E, self.F, self.G = E, F, G
        self.L, self.M, self.N = L, M, N

    def first_form_det(self):
        return self.E * self.G - self.F * self.F


class CurvatureSample:
    __slots__ = ("uv", "position", "k1", "k2", "normal")

    def __init__(self, uv, position, k1, k2, normal):
        self.uv = uv
        self.position = position
        self.k1 = k1          # k1 >= k2
        self.k2 = k2
        self.normal = normal

    def max_abs(self):
        return max(abs(self.k1), abs(self.k2))


class MaxCurvatureResult:
    __slots__ = ("value", "uv", "skipped_singular")

    def __init__(self, value, uv, skipped_singular):
        self.value = value
        self.uv = uv
        self.skipped_singular = skipped_singular


def _identity3():
    return np.eye(3)


class ParametricPatch:

    def __init__(self, kind, params=None, domain=None, rotation=None,
                 translation=None, scale=1.0, name=""):
        if kind not in KINDS:
            raise PatchError("unknown patch kind %r" % kind)
        self.kind = kind
        self.params = dict(params or {})
        self.rotation = (np.asarray(rotation, dtype=float)
                         if rotation is not None else _identity3())
        self.translation = (np.asarray(translation, dtype=float)
                            if translation is not None else np.zeros(3))
        self.scale = float(scale)
        self.name = name
        self._edge = None
        self._check_placement()
        self._check_params()
        self.domain = tuple(float(x) for x in (
            domain if domain is not None else self._default_domain()))
        if len(self.domain) != 4:
            raise PatchError("domain must be (umin, umax, vmin, vmax)")
        if self.domain[0] >= self.domain[1] or self.domain[2] >= self.domain[3]:
            raise PatchError("empty parameter domain %r" % (self.domain,))
        self._check_axis_clearance()

    # --- validation ---------------------------------------------------------

    def _check_placement(self):
        R = self.rotation
        if R.shape != (3, 3):
            raise PatchError("rotation must be 3x3")
        if np.max(np.abs(R.T @ R - np.eye(3))) > ORTHONORMAL_TOL:
            raise PatchError("rotation is not orthonormal to 1e-12")
        if self.translation.shape != (3,):
            raise PatchError("translation must be a 3-vector")
        if self.scale <= 0:
            raise PatchError("scale must be positive")

    def _check_params(self):
        k, p = self.kind, self.params
        if k == "sphere":
            if p.get("radius", 0) <= 0:
                raise PatchError("sphere needs radius > 0")
        elif k == "torus":
            if p.get("major_radius", 0) <= 0:
                raise PatchError("torus needs major_radius > 0")
            # tube radius is fixed at 1 by construction; reject overrides
            if "tube_radius" in p and p["tube_radius"] != 1.0:
                raise PatchError("torus tube radius must be 1")
        elif k == "cylinder":
            if p.get("radius", 0) <= 0:
                raise PatchError("cylinder needs radius > 0")
        elif k == "revolved-profile":
            if "edge" not in p:
                raise PatchError("revolved-profile needs an edge")
            self._edge = edge_from_dict(p["edge"])

    def _default_domain(self):
        if self.kind == "revolved-profile" and isinstance(self._edge, Arc):
            a0, a1 = sorted((self._edge.start_angle, self._edge.end_angle))
            return (0.0, 2 * math.pi, a0, a1)
        return {
            "sphere": (0.0, 2 * math.pi, -math.pi / 2, math.pi / 2),
            "torus": (0.0, 2 * math.pi, -math.pi, math.pi),
            "cylinder": (0.0, 2 * math.pi, 0.0, 1.0),
            "plane-disc": (0.0, 2 * math.pi, 0.0, 1.0),
            "revolved-profile": (0.0, 2 * math.pi, 0.0, 1.0),
        }[self.kind]

    def _check_axis_clearance(self):
        # revolved profiles must stay clear of the axis; spheres and discs
        # may touch it (their poles are handled by the tessellator)
        if self.kind == "revolved-profile":
            t = np.linspace(0.0, 1.0, 257)
            rho = self._profile(self._clip_v(t))[0]
            if np.min(rho) < AXIS_TOL:
                raise SingularityError(
                    "profile touches the revolution axis (min rho %.3e)"
                    % float(np.min(rho)))

    def _clip_v(self, t):
        vmin, vmax = self.domain[2], self.domain[3]
        return vmin + np.asarray(t, dtype=float) * (vmax - vmin)

    # --- local profile ------------------------------------------------------

    def _profile(self, v):
        """rho, z and their first/second v-derivatives, vectorized."""
        v = np.asarray(v, dtype=float)
        k, p = self.kind, self.params
        zero = np.zeros_like(v)
        one = np.ones_like(v)
        if k == "sphere":
            r = p["radius"]
            return (r * np.cos(v), r * np.sin(v),
                    -r * np.sin(v), r * np.cos(v),
                    -r * np.cos(v), -r * np.sin(v))
        if k == "torus":
            R = p["major_radius"]
            return (R + np.cos(v), np.sin(v),
                    -np.sin(v), np.cos(v),
                    -np.cos(v), -np.sin(v))
        if k == "cylinder":
            r = p["radius"]
            return (r * one, v, zero, one, zero, zero)
        if k == "plane-disc":
            return (v, zero, one, zero, zero, zero)
        # revolved-profile: v is the edge's native parameter (angle for
        # arcs after the domain mapping; the edge classes use t in [0, 1])
        e = self._edge
        if isinstance(e, Arc):
            c, r = e.center, e.radius
            return (c[0] + r * np.cos(v), c[1] + r * np.sin(v),
                    -r * np.sin(v), r * np.cos(v),
                    -r * np.cos(v), -r * np.sin(v))
        d = e.p1 - e.p0
        return (e.p0[0] + v * d[0], e.p0[1] + v * d[1],
                d[0] * one, d[1] * one, zero, zero)

    # --- evaluation ---------------------------------------------------------

    def _check_domain(self, u, v):
        umin, umax, vmin, vmax = self.domain
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        eps = 1e-12
        if (np.any(u < umin - eps) or np.any(u > umax + eps)
                or np.any(v < vmin - eps) or np.any(v > vmax + eps)):
            raise DomainError(
                "parameters outside domain %r" % (self.domain,))
        return u, v

    def evaluate(self, u, v):
        u, v = self._check_domain(u, v)
        rho, z = self._profile(v)[:2]
        local = np.stack([rho * np.cos(u), rho * np.sin(u),
                          z * np.ones_like(u)], axis=-1)
        return self.translation + self.scale * (local @ self.rotation.T)

    def partials(self, u, v):
        """World-space S_u, S_v, S_uu, S_uv, S_vv at (u, v)."""
        u, v = self._check_domain(u, v)
        rho, _, dr, dz, ddr, ddz = self._profile(v)
        cu, su = np.cos(u), np.sin(u)
        zero = np.zeros_like(cu * rho)

        def world(x, y, z_):
            loc = np.stack([x, y, z_], axis=-1)
            return self.scale * (loc @ self.rotation.T)

        Su = world(-rho * su, rho * cu, zero)
        Sv = world(dr * cu, dr * su, dz * np.ones_like(cu))
        Suu = world(-rho * cu, -rho * su, zero)
        Suv = world(-dr * su, dr * cu, zero)
        Svv = world(ddr * cu, ddr * su, ddz * np.ones_like(cu))
        return Su, Sv, Suu, Suv, Svv

    def fundamental_forms(self, u, v):
        Su, Sv, Suu, Suv, Svv = self.partials(u, v)
        E = np.sum(Su * Su, axis=-1)
        F = np.sum(Su * Sv, axis=-1)
        G = np.sum(Sv * Sv, axis=-1)
        det = E * G - F * F
        # degenerate when sqrt(det) is negligible next to the form scale
        if np.any(det <= (SINGULAR_TOL * (E + G)) ** 2):
            raise SingularityError(
                "degenerate first fundamental form (singular parameter point)")
        n = np.cross(Su, Sv)
        n = n / np.linalg.norm(n, axis=-1, keepdims=True)
        L = np.sum(n * Suu, axis=-1)
        M = np.sum(n * Suv, axis=-1)
        N = np.sum(n * Svv, axis=-1)
        return FundamentalForms(E, F, G, L, M, N)

    def normal(self, u, v):
        Su, Sv = self.partials(u, v)[:2]
        n = np.cross(Su, Sv)
        return n / np.linalg.norm(n, axis=-1, keepdims=True)

    def principal_curvatures(self, u, v):
        """Eigenvalues of the shape operator, sorted k1 >= k2."""
        f = self.fundamental_forms(u, v)
        E, F, G, L, M, N = f.E, f.F, f.G, f.L, f.M, f.N
        det1 = E * G - F * F
        # shape operator S = I^{-1} II; trace and det give the curvatures.
        # The discriminant is written in the cancellation-free split form
        # (G L - E N)^2 + 4 (G M - F N)(E M - F L) so that umbilics come
        # out exact instead of sqrt-of-roundoff noisy.
        H2 = (E * N + G * L - 2.0 * F * M) / det1          # k1 + k2
        disc = ((G * L - E * N) ** 2
                + 4.0 * (G * M - F * N) * (E * M - F * L))
        root = np.sqrt(np.maximum(disc, 0.0)) / det1
        return H2 / 2.0 + root / 2.0, H2 / 2.0 - root / 2.0

    def curvature_sample(self, u, v):
        k1, k2 = self.principal_curvatures(u, v)
        return CurvatureSample((float(u), float(v)),
                               self.evaluate(u, v), float(k1), float(k2),
                               self.normal(u, v))

    def max_abs_curvature(self, grid_density=64, refinement_levels=4):
        """Max of |k1|, |k2| over the domain by grid search + zooming.

        Singular grid points (poles) are skipped and flagged rather than
        aborting the scan.
        """
        if grid_density < 8:
            raise PatchError("grid_density must be >= 8")
        umin, umax, vmin, vmax = self.domain
        skipped = False
        best = -np.inf
        best_uv = (umin, vmin)
        for _ in range(refinement_levels):
            u = np.linspace(umin, umax, grid_density)
            v = np.linspace(vmin, vmax, grid_density)
            uu, vv = np.meshgrid(u, v, indexing="ij")
            try:
                k1, k2 = self.principal_curvatures(uu, vv)
                kmax = np.maximum(np.abs(k1), np.abs(k2))
            except SingularityError:
                # retry pointwise, masking the singular samples
                skipped = True
                kmax = np.full(uu.shape, -np.inf)
                for idx in np.ndindex(uu.shape):
                    try:
                        k1, k2 = self.principal_curvatures(
                            uu[idx], vv[idx])
                        kmax[idx] = max(abs(float(k1)), abs(float(k2)))
                    except SingularityError:
                        pass
            i = np.unravel_index(np.argmax(kmax), kmax.shape)
            if kmax[i] > best:
                best = float(kmax[i])
                best_uv = (float(uu[i]), float(vv[i]))
            # zoom into a 3-cell window around the maximizer
            du = (umax - umin) / (grid_density - 1)
            dv = (vmax - vmin) / (grid_density - 1)
            umin = max(self.domain[0], best_uv[0] - 1.5 * du)
            umax = min(self.domain[1], best_uv[0] + 1.5 * du)
            vmin = max(self.domain[2], best_uv[1] - 1.5 * dv)
            vmax = min(self.domain[3], best_uv[1] + 1.5 * dv)
        return MaxCurvatureResult(best, best_uv, skipped)

    # --- serialization ------------------------------------------------------

    def to_dict(self):
        d = {"kind": self.kind, "params": dict(self.params),
             "domain": list(self.domain),
             "rotation": [float(x) for x in self.rotation.ravel()],
             "translation": [float(x) for x in self.translation]}
        if self.scale != 1.0:
            d["scale"] = self.scale
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], d.get("params", {}),
                   d.get("domain"),
                   np.asarray(d["rotation"], dtype=float).reshape(3, 3)
                   if "rotation" in d else None,
                   d.get("translation"), d.get("scale", 1.0),
                   d.get("name", ""))

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))

    def scaled(self, s, about=None):
        """Homothety by s about a world point (default: origin)."""
        about = np.zeros(3) if about is None else np.asarray(about, float)
        return ParametricPatch(
            self.kind, self.params, self.domain, self.rotation,
            about + s * (self.translation - about), self.scale * s, self.name)
