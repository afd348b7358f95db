"""OBJ and binary STL export/import for triangle meshes."""

import struct

import numpy as np

from .meshing import TriMesh, MeshError

FORMATS = ("obj", "stl-binary")


def export_mesh(mesh, path, fmt=None):
    if fmt is None:
        fmt = "stl-binary" if str(path).lower().endswith(".stl") else "obj"
    if fmt not in FORMATS:
        raise MeshError("unknown format %r (use one of %r)" % (fmt, FORMATS))
    try:
        if fmt == "obj":
            _write_obj(mesh, path)
        else:
            _write_stl(mesh, path)
    except OSError as e:
        raise IOError("cannot write %r: %s" % (path, e)) from e


def import_mesh(path, fmt=None):
    if fmt is None:
        fmt = "stl-binary" if str(path).lower().endswith(".stl") else "obj"
    if fmt not in FORMATS:
        raise MeshError("unknown format %r" % fmt)
    try:
        return _read_obj(path) if fmt == "obj" else _read_stl(path)
    except OSError as e:
        raise IOError("cannot read %r: %s" % (path, e)) from e


def _write_obj(mesh, path):
    with open(path, "w") as f:
        for v in mesh.vertices:
            f.write("v %.17g %.17g %.17g\n" % (v[0], v[1], v[2]))
        for a, b, c in mesh.faces:
            f.write("f %d %d %d\n" % (a + 1, b + 1, c + 1))


def _read_obj(path):
    verts, faces = [], []
    with open(path) as f:
        for line in f:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                verts.append([float(x) for x in parts[1:4]])
            elif parts[0] == "f":
                idx = [int(p.split("/")[0]) for p in parts[1:]]
                if len(idx) != 3:
                    raise MeshError("only triangle faces are supported")
                faces.append([i - 1 for i in idx])
    return TriMesh(np.asarray(verts, dtype=float),
                   np.asarray(faces, dtype=np.int64))


def _write_stl(mesh, path):
    tri = mesh.vertices[mesh.faces].astype("<f4")
    n = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
    norm = np.linalg.norm(n, axis=1, keepdims=True)
    n = (n / np.where(norm > 0, norm, 1.0)).astype("<f4")
    with open(path, "wb") as f:
        f.write(b"binary stl triangle mesh".ljust(80, b"\0"))
        f.write(struct.pack("<I", len(tri)))
        rec = np.zeros(len(tri), dtype=[("n", "<f4", 3), ("v", "<f4", (3, 3)),
                                        ("attr", "<u2")])
        rec["n"] = n
        rec["v"] = tri
        f.write(rec.tobytes())


def _read_stl(path):
    with open(path, "rb") as f:
        header = f.read(80)
        if len(header) < 80:
            raise MeshError("truncated STL header")
        (count,) = struct.unpack("<I", f.read(4))
        rec = np.frombuffer(
            f.read(count * 50),
            dtype=[("n", "<f4", 3), ("v", "<f4", (3, 3)), ("attr", "<u2")])
    if len(rec) != count:
        raise MeshError("truncated STL payload")
    tri = rec["v"].astype(float).reshape(-1, 3)
    # re-index identical corners so topology survives the round trip
    verts, inverse = np.unique(tri, axis=0, return_inverse=True)
    return TriMesh(verts, inverse.reshape(-1, 3))
