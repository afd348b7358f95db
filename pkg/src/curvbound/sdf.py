"""Signed distance grids and largest inscribed ball.

The sign comes from ray-crossing parity along grid columns, voted over
the three axes (thin chambers make single-ray parity fragile).  The
unsigned distance is measured to a dense point sampling of the surface,
so |SDF| never exceeds the distance to the nearest mesh vertex.  The
inscribed-ball radius is refined afterwards with exact point-triangle
distances, making the returned value a true distance to the mesh.
"""

import numpy as np
from scipy.ndimage import distance_transform_edt
from scipy.spatial import cKDTree

from .meshing import MeshError


class EmptyInteriorError(MeshError):
    pass


class SDFGrid:
    """Axis-aligned grid of signed distances, negative inside."""

    def __init__(self, lo, hi, values):
        self.lo = np.asarray(lo, dtype=float)
        self.hi = np.asarray(hi, dtype=float)
        self.values = values
        self.shape = values.shape

    def axes(self):
        return [np.linspace(self.lo[k], self.hi[k], self.shape[k])
                for k in range(3)]

    def cell(self):
        return (self.hi - self.lo) / (np.asarray(self.shape) - 1)

    def points(self):
        xs, ys, zs = self.axes()
        xx, yy, zz = np.meshgrid(xs, ys, zs, indexing="ij")
        return np.stack([xx, yy, zz], axis=-1)


def surface_samples(mesh):
    """Vertices, edge midpoints and centroids of every triangle."""
    p = mesh.vertices[mesh.faces]
    mids = 0.5 * (p + np.roll(p, 1, axis=1))
    cent = p.mean(axis=1)
    return np.concatenate([mesh.vertices, mids.reshape(-1, 3), cent])


def _column_parity(mesh, axis, axes_pts):
    """Inside-parity per grid point for rays along one axis."""
    p_ax, q_ax = [k for k in range(3) if k != axis]
    tri = mesh.vertices[mesh.faces]
    P = tri[..., p_ax]
    Q = tri[..., q_ax]
    Z = tri[..., axis]
    ps, qs, zs = axes_pts[p_ax], axes_pts[q_ax], axes_pts[axis]
    dp = ps[1] - ps[0]
    dq = qs[1] - qs[0]
    # consistent sub-cell shift so rays never graze vertices or edges
    pr = ps + 0.618033988749895e-7 * dp
    qr = qs + 0.414213562373095e-7 * dq

    i0 = np.clip(np.searchsorted(pr, P.min(axis=1)), 0, len(ps))
    i1 = np.clip(np.searchsorted(pr, P.max(axis=1)), 0, len(ps))
    j0 = np.clip(np.searchsorted(qr, Q.min(axis=1)), 0, len(qs))
    j1 = np.clip(np.searchsorted(qr, Q.max(axis=1)), 0, len(qs))
    ni = i1 - i0
    nj = j1 - j0
    npairs = ni * nj
    keep = npairs > 0
    if not np.any(keep):
        return np.zeros((len(ps), len(qs), len(zs)), dtype=bool)
    tsel = np.repeat(np.nonzero(keep)[0], npairs[keep])
    # per-triangle local (di, dj) lattice offsets
    counts = npairs[keep]
    local = np.concatenate([np.arange(n) for n in counts])
    njr = np.repeat(nj[keep], counts)
    i0r = np.repeat(i0[keep], counts)
    j0r = np.repeat(j0[keep], counts)
    ii = i0r + local // njr
    jj = j0r + local % njr

    cx = pr[ii]
    cy = qr[jj]
    a = np.stack([P[tsel, 0], Q[tsel, 0]], axis=-1)
    b = np.stack([P[tsel, 1], Q[tsel, 1]], axis=-1)
    c = np.stack([P[tsel, 2], Q[tsel, 2]], axis=-1)
    pt = np.stack([cx, cy], axis=-1)

    def edge(u, v, w):
        return ((w[:, 0] - u[:, 0]) * (v[:, 1] - u[:, 1])
                - (w[:, 1] - u[:, 1]) * (v[:, 0] - u[:, 0]))

    w0 = edge(b, c, pt)
    w1 = edge(c, a, pt)
    w2 = edge(a, b, pt)
    area = edge(a, b, c)
    inside = ((np.sign(w0) == np.sign(area))
              & (np.sign(w1) == np.sign(area))
              & (np.sign(w2) == np.sign(area))
              & (np.abs(area) > 1e-300))
    if not np.any(inside):
        return np.zeros((len(ps), len(qs), len(zs)), dtype=bool)
    tsel, ii, jj = tsel[inside], ii[inside], jj[inside]
    w0, w1, w2, area = w0[inside], w1[inside], w2[inside], area[inside]
    zc = (w0 * Z[tsel, 0] + w1 * Z[tsel, 1] + w2 * Z[tsel, 2]) / area

    # parity: a point is inside when an odd number of crossings lie above
    nz = len(zs)
    above = np.zeros((len(ps), len(qs), nz + 1), dtype=np.int64)
    kk = np.searchsorted(zs, zc)
    np.add.at(above, (ii, jj, kk), 1)
    below_or_at = np.cumsum(above, axis=2)[:, :, :nz]
    total = above.sum(axis=2)[:, :, None]
    parity = (total - below_or_at) % 2 == 1
    return parity


def build_sdf(mesh, resolution, margin_cells=2):
    """SDFGrid over the mesh bounding box plus a small margin."""
    if resolution < 32:
        raise MeshError("grid resolution must be >= 32")
    lo = mesh.vertices.min(axis=0)
    hi = mesh.vertices.max(axis=0)
    span = hi - lo
    cell = span.max() / (resolution - 1)
    lo = lo - margin_cells * cell
    hi = hi + margin_cells * cell
    shape = tuple(
        int(np.ceil((hi[k] - lo[k]) / cell)) + 1 for k in range(3))
    hi = lo + (np.asarray(shape) - 1) * cell
    axes_pts = [np.linspace(lo[k], hi[k], shape[k]) for k in range(3)]

    votes = np.zeros(shape, dtype=np.int8)
    for axis in range(3):
        parity = _column_parity(mesh, axis, axes_pts)
        # parity comes back as (p, q, ray-axis); put axes back in order
        order = [k for k in range(3) if k != axis] + [axis]
        votes += np.transpose(parity, np.argsort(order)).astype(np.int8)
    inside = votes >= 2

    # unsigned distance: Euclidean distance transform of the voxelized
    # surface sampling, shrunk by half a cell diagonal so the value never
    # exceeds the distance to the nearest true surface point
    samples = surface_samples(mesh)
    occ = np.zeros(shape, dtype=bool)
    ijk = np.clip(np.rint((samples - lo) / cell).astype(np.int64),
                  0, np.asarray(shape) - 1)
    occ[ijk[:, 0], ijk[:, 1], ijk[:, 2]] = True
    dist = distance_transform_edt(~occ, sampling=(cell, cell, cell))
    dist = np.maximum(dist - 0.5 * cell * np.sqrt(3.0), 0.0)
    values = np.where(inside, -dist, dist)
    return SDFGrid(lo, hi, values)


class _ExactDistance:
    """Exact point-to-mesh distance with a centroid KD-tree prefilter."""

    def __init__(self, mesh, k=96):
        self.tri = mesh.vertices[mesh.faces]
        self.centroids = self.tri.mean(axis=1)
        self.tree = cKDTree(self.centroids)
        self.k = min(k, len(self.centroids))
        # max distance from a centroid to its triangle's far corner
        self.reach = np.max(np.linalg.norm(
            self.tri - self.centroids[:, None, :], axis=2))

    def __call__(self, point):
        point = np.asarray(point, dtype=float)
        d_k, idx = self.tree.query(point, k=self.k)
        d = float(np.min(_point_triangle_distance(point, self.tri[idx])))
        # widen if some unvisited triangle could still be closer
        if d_k[-1] < d + self.reach and self.k < len(self.centroids):
            idx = self.tree.query_ball_point(point, d + self.reach)
            d = float(np.min(_point_triangle_distance(
                point, self.tri[idx])))
        return d


def _point_triangle_distance(p, tris):
    """Distances from point p to each triangle, vectorized (Ericson)."""
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    ab = b - a
    ac = c - a
    ap = p - a
    d1 = np.einsum("ij,ij->i", ab, ap)
    d2 = np.einsum("ij,ij->i", ac, ap)
    bp = p - b
    d3 = np.einsum("ij,ij->i", ab, bp)
    d4 = np.einsum("ij,ij->i", ac, bp)
    cp = p - c
    d5 = np.einsum("ij,ij->i", ab, cp)
    d6 = np.einsum("ij,ij->i", ac, cp)

    closest = np.empty_like(a)
    done = np.zeros(len(a), dtype=bool)

    def settle(mask, pts):
        m = mask & ~done
        closest[m] = pts[m] if pts.ndim == 2 else pts
        done[m] = True

    settle((d1 <= 0) & (d2 <= 0), a)
    settle((d3 >= 0) & (d4 <= d3), b)
    settle((d6 >= 0) & (d5 <= d6), c)

    vc = d1 * d4 - d3 * d2
    with np.errstate(invalid="ignore", divide="ignore"):
        v_ab = d1 / (d1 - d3)
    settle((vc <= 0) & (d1 >= 0) & (d3 <= 0), a + v_ab[:, None] * ab)

    vb = d5 * d2 - d1 * d6
    with np.errstate(invalid="ignore", divide="ignore"):
        w_ac = d2 / (d2 - d6)
    settle((vb <= 0) & (d2 >= 0) & (d6 <= 0), a + w_ac[:, None] * ac)

    va = d3 * d6 - d5 * d4
    with np.errstate(invalid="ignore", divide="ignore"):
        w_bc = (d4 - d3) / ((d4 - d3) + (d5 - d6))
    settle((va <= 0) & (d4 - d3 >= 0) & (d5 - d6 >= 0),
           b + w_bc[:, None] * (c - b))

    denom = np.where(va + vb + vc != 0, va + vb + vc, 1.0)
    v = vb / denom
    w = vc / denom
    settle(np.ones(len(a), dtype=bool), a + v[:, None] * ab + w[:, None] * ac)
    return np.linalg.norm(closest - p, axis=1)


def inscribed_ball(mesh, grid_resolution=64):
    """Center and radius of the largest ball found inside the mesh.

    Grid seed from the SDF, then hill-climbing on the exact distance.
    The returned radius is a lower bound on the true inradius up to the
    mesh's own faceting error.
    """
    grid = build_sdf(mesh, grid_resolution)
    if not np.any(grid.values < 0):
        raise EmptyInteriorError("no interior grid samples found")
    flat = np.argmin(grid.values)
    ijk = np.unravel_index(flat, grid.shape)
    center = grid.lo + np.asarray(ijk) * grid.cell()

    dist = _ExactDistance(mesh)
    radius = dist(center)
    step = float(np.max(grid.cell()))
    # all 26 lattice neighbor directions, normalized
    dirs = np.array([(i, j, k) for i in (-1, 0, 1) for j in (-1, 0, 1)
                     for k in (-1, 0, 1) if (i, j, k) != (0, 0, 0)],
                    dtype=float)
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    for _ in range(50):
        improved = False
        for d in dirs:
            cand = center + step * d
            r = dist(cand)
            if r > radius:
                center, radius = cand, r
                improved = True
        if not improved:
            step *= 0.5
            if step < 1e-12:
                break
    return center, radius
