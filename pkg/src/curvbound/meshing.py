"""Triangle meshes: tessellation, stitching, topology, volume.

Meshes are plain index triangle soups kept consistently oriented; the
topology report recomputes everything from scratch (no cached state), so
it doubles as the certification artifact.
"""

import math

import numpy as np
from scipy.spatial import cKDTree

WELD_TOL = 1e-7
DEGENERATE_AREA = 1e-14
POLE_TOL = 1e-9


class MeshError(ValueError):
    pass


class NonManifoldError(MeshError):
    pass


class OrientationError(MeshError):
    pass


class TriMesh:
    """Vertex positions (n, 3) and triangle index triples (m, 3)."""

    def __init__(self, vertices, faces):
        self.vertices = np.ascontiguousarray(vertices, dtype=float)
        self.faces = np.ascontiguousarray(faces, dtype=np.int64)
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 3:
            raise MeshError("vertices must be (n, 3)")
        if self.faces.ndim != 2 or self.faces.shape[1] != 3:
            raise MeshError("faces must be (m, 3)")
        if self.faces.size and (self.faces.min() < 0
                                or self.faces.max() >= len(self.vertices)):
            raise MeshError("face index out of range")

    def face_normals_areas(self):
        p = self.vertices[self.faces]
        n = np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
        a = 0.5 * np.linalg.norm(n, axis=1)
        return n, a

    def area(self):
        return float(np.sum(self.face_normals_areas()[1]))

    def translated(self, d):
        return TriMesh(self.vertices + np.asarray(d, float), self.faces)

    def scaled(self, s, about=None):
        about = (np.zeros(3) if about is None
                 else np.asarray(about, dtype=float))
        return TriMesh(about + s * (self.vertices - about), self.faces)

    def flipped(self):
        return TriMesh(self.vertices, self.faces[:, [0, 2, 1]])

    def copy(self):
        return TriMesh(self.vertices.copy(), self.faces.copy())


def tessellate(patch, nu, nv, flip=False):
    """Grid tessellation of a patch, two triangles per cell.

    Closed azimuth loops reuse the seam vertices, and rings that collapse
    to a point (sphere poles, disc centers) become a single vertex with a
    triangle fan, keeping the Euler count exact.
    """
    if nu < 2 or nv < 2:
        raise MeshError("nu, nv must be >= 2")
    umin, umax, vmin, vmax = patch.domain
    closed_u = abs((umax - umin) - 2 * math.pi) < 1e-12
    ucount = nu if closed_u else nu + 1
    u = umin + (umax - umin) * np.arange(ucount) / nu
    v = np.linspace(vmin, vmax, nv + 1)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    pts = patch.evaluate(uu, vv)          # (ucount, nv+1, 3)

    # periodic profile (torus, full-circle arc): last ring equals first
    closed_v = bool(np.max(np.linalg.norm(pts[:, -1] - pts[:, 0], axis=1))
                    < POLE_TOL)
    vcount = nv if closed_v else nv + 1
    pts = pts[:, :vcount]

    # detect collapsed rings (all points of a v-row coincide)
    ring_span = np.array([
        np.max(np.linalg.norm(pts[:, j] - pts[0, j], axis=1))
        for j in range(vcount)])
    collapsed = ring_span < POLE_TOL

    index = np.full((ucount, vcount), -1, dtype=np.int64)
    verts = []
    for j in range(vcount):
        if collapsed[j]:
            index[:, j] = len(verts)
            verts.append(pts[:, j].mean(axis=0))
        else:
            index[:, j] = np.arange(len(verts), len(verts) + ucount)
            verts.extend(pts[:, j])
    verts = np.asarray(verts)

    faces = []
    for i in range(nu):
        i1 = (i + 1) % ucount if closed_u else i + 1
        for j in range(nv):
            j1 = (j + 1) % vcount if closed_v else j + 1
            a, b = index[i, j], index[i1, j]
            c, d = index[i1, j1], index[i, j1]
            # orientation follows S_u x S_v
            if a != b:
                faces.append((a, b, c))
            if c != d:
                faces.append((a, c, d))
    mesh = TriMesh(verts, np.asarray(faces, dtype=np.int64))
    return mesh.flipped() if flip else mesh


def merge(meshes):
    """Concatenate fragments without welding."""
    vs, fs, off = [], [], 0
    for m in meshes:
        vs.append(m.vertices)
        fs.append(m.faces + off)
        off += len(m.vertices)
    return TriMesh(np.concatenate(vs), np.concatenate(fs))


def stitch(fragments, tol=WELD_TOL):
    """Weld fragment vertices within tol and drop degenerate faces.

    Raises OrientationError when the welded mesh traverses some edge
    twice in the same direction (a flipped fragment).
    """
    if tol < 0:
        raise MeshError("tol must be >= 0")
    mesh = merge(fragments) if not isinstance(fragments, TriMesh) \
        else fragments
    verts, faces = mesh.vertices, mesh.faces

    # union-find over close vertex pairs
    parent = np.arange(len(verts))

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    if tol > 0 and len(verts):
        tree = cKDTree(verts)
        for i, j in tree.query_pairs(tol):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(len(verts))])
    uniq, remap = np.unique(roots, return_inverse=True)
    new_verts = np.empty((len(uniq), 3))
    np.add.at(counts := np.zeros(len(uniq)), remap, 1.0)
    new_verts.fill(0.0)
    np.add.at(new_verts, remap, verts)
    new_verts /= counts[:, None]

    new_faces = remap[faces]
    # drop collapsed faces and exact duplicates
    ok = ((new_faces[:, 0] != new_faces[:, 1])
          & (new_faces[:, 1] != new_faces[:, 2])
          & (new_faces[:, 2] != new_faces[:, 0]))
    new_faces = new_faces[ok]
    p = new_verts[new_faces]
    areas = 0.5 * np.linalg.norm(
        np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]), axis=1)
    new_faces = new_faces[areas > DEGENERATE_AREA]
    key = np.sort(new_faces, axis=1)
    _, first = np.unique(key, axis=0, return_index=True)
    new_faces = new_faces[np.sort(first)]

    out = TriMesh(new_verts, new_faces)
    dup = _repeated_directed_edges(out)
    if len(dup):
        raise OrientationError(
            "inconsistent orientation across weld; repeated directed edges: %s"
            % dup[:10].tolist())
    return out


def _directed_edges(mesh):
    f = mesh.faces
    return np.concatenate([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]])


def _repeated_directed_edges(mesh):
    de = _directed_edges(mesh)
    uniq, counts = np.unique(de, axis=0, return_counts=True)
    return uniq[counts > 1]


class TopologyReport:
    __slots__ = ("V", "E", "F", "chi", "components", "watertight",
                 "orientable", "genus", "boundary_edges")

    def __init__(self, V, E, F, components, watertight, orientable,
                 genus, boundary_edges):
        self.V, self.E, self.F = V, E, F
        self.chi = V - E + F
        self.components = components
        self.watertight = watertight
        self.orientable = orientable
        self.genus = genus
        self.boundary_edges = boundary_edges

    def to_dict(self):
        return {"V": self.V, "E": self.E, "F": self.F, "chi": self.chi,
                "components": self.components,
                "watertight": self.watertight,
                "orientable": self.orientable,
                "genus": self.genus}

    def __eq__(self, other):
        return isinstance(other, TopologyReport) \
            and self.to_dict() == other.to_dict()

    def __repr__(self):
        return "TopologyReport(%r)" % (self.to_dict(),)


def topology(mesh):
    """Exact topological counts; genus only for closed orientable meshes."""
    V = len(mesh.vertices)
    F = len(mesh.faces)
    de = _directed_edges(mesh)
    und = np.sort(de, axis=1)
    edges, inverse, counts = np.unique(
        und, axis=0, return_inverse=True, return_counts=True)
    E = len(edges)
    if np.any(counts > 2):
        bad = edges[counts > 2]
        raise NonManifoldError(
            "non-manifold edges (>= 3 incident triangles): %s"
            % bad[:10].tolist())
    boundary = edges[counts == 1]
    watertight = len(boundary) == 0 and F > 0

    # orientability: the two traversals of every interior edge must be
    # opposite, i.e. no directed edge repeats
    orientable = len(_repeated_directed_edges(mesh)) == 0

    # connected components over the vertex graph
    parent = np.arange(V)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    used = np.unique(mesh.faces)
    components = len({find(i) for i in used}) if len(used) else 0

    chi = V - E + F
    genus = None
    if watertight and orientable and components == 1:
        genus = (2 - chi) // 2
    return TopologyReport(V, E, F, components, watertight, orientable,
                          genus, boundary)


def euler_characteristic_halfedge(mesh):
    """chi recomputed from an explicit half-edge pairing.

    Independent of the edge-hashing route in topology(); the two must
    agree exactly.
    """
    f = mesh.faces
    half = np.concatenate([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]])
    order = np.lexsort((half[:, 1], half[:, 0]))
    half = half[order]
    twin_key = half[:, ::-1]
    # pair each half-edge with its reversed twin via a dictionary
    seen = {}
    paired = 0
    for he in map(tuple, half):
        if he in seen:
            raise OrientationError("repeated directed edge %r" % (he,))
        seen[he] = True
    for he in map(tuple, twin_key):
        if he in seen:
            paired += 1
    unpaired = len(half) - paired
    E = paired // 2 + unpaired
    return len(mesh.vertices) - E + len(mesh.faces)


def enclosed_volume(mesh):
    """Signed divergence-theorem volume, normalized positive.

    (1/6) sum det(v0, v1, v2); numpy's pairwise summation keeps the
    reduction deterministic.
    """
    rep = topology(mesh)
    if not rep.watertight:
        raise MeshError("volume undefined: mesh is not watertight "
                        "(%d boundary edges)" % len(rep.boundary_edges))
    if not rep.orientable:
        raise MeshError("volume undefined: mesh orientation inconsistent")
    p = mesh.vertices[mesh.faces]
    terms = np.einsum("ij,ij->i", p[:, 0], np.cross(p[:, 1], p[:, 2]))
    return abs(float(np.sum(terms))) / 6.0


def genus2_mesh(nu=48, nv=32, hole=6):
    """Two stacked tori with congruent holes joined by a straight tube.

    chi = -2 (genus 2) by construction: each torus loses a disc, the
    bridging tube is an annulus.
    """
    R = 2.0

    def torus_grid(zoff, vcenter):
        i = np.arange(nu)
        j = np.arange(nv)
        u = 2 * math.pi * i / nu
        v = vcenter + 2 * math.pi * (j - nv / 2) / nv
        uu, vv = np.meshgrid(u, v, indexing="ij")
        x = (R + np.cos(vv)) * np.cos(uu)
        y = (R + np.cos(vv)) * np.sin(uu)
        z = np.sin(vv) + zoff
        return np.stack([x, y, z], axis=-1).reshape(-1, 3)

    # center the v-grid so the hole window sits at the top (bottom) ring
    verts1 = torus_grid(0.0, math.pi / 2)
    verts2 = torus_grid(3.0, -math.pi / 2)

    def idx(i, j):
        return (i % nu) * nv + (j % nv)

    i0 = (nu - hole) // 2
    j0 = (nv - hole) // 2
    hole_cells = {(i0 + a, j0 + b) for a in range(hole) for b in range(hole)}

    def torus_faces(offset):
        faces = []
        for i in range(nu):
            for j in range(nv):
                if (i, j) in hole_cells:
                    continue
                a = idx(i, j) + offset
                b = idx(i + 1, j) + offset
                c = idx(i + 1, j + 1) + offset
                d = idx(i, j + 1) + offset
                faces.append((a, b, c))
                faces.append((a, c, d))
        return faces

    faces = torus_faces(0) + torus_faces(nu * nv)

    # boundary loop of the rectangular hole, counterclockwise in (i, j)
    loop = []
    for a in range(hole):
        loop.append((i0 + a, j0))
    for b in range(hole):
        loop.append((i0 + hole, j0 + b))
    for a in range(hole, 0, -1):
        loop.append((i0 + a, j0 + hole))
    for b in range(hole, 0, -1):
        loop.append((i0, j0 + b))

    # the vertically aligned partner vertex on the upper torus sits at
    # the j-mirrored grid position (cos v is even in v)
    def mirror_j(j):
        return nv - j if j % nv else 0

    n = len(loop)
    for k in range(n):
        i_a, j_a = loop[k]
        i_b, j_b = loop[(k + 1) % n]
        a0 = idx(i_a, j_a)
        a1 = idx(i_b, j_b)
        b0 = idx(i_a, mirror_j(j_a)) + nu * nv
        b1 = idx(i_b, mirror_j(j_b)) + nu * nv
        faces.append((a0, b1, b0))
        faces.append((a0, a1, b1))

    verts = np.concatenate([verts1, verts2])
    faces = np.asarray(faces, dtype=np.int64)
    # compact away the unused hole-interior vertices
    used = np.unique(faces)
    remap = np.full(len(verts), -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    return TriMesh(verts[used], remap[faces])
