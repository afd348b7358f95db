"""Command-line entry point: build, verify, volumes, planar, export.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage or spec
error, 3 I/O error.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, report
from .assembly import (AssemblyError, JerrycanSpec, build_fixture,
                       build_jerrycan)
from .curves import ArcSpline, CurveError, certify_unit_disc, enclosed_area
from .meshing import MeshError, enclosed_volume, topology
from .meshio import export_mesh, import_mesh
from .profiles import eval_constants
from .sdf import inscribed_ball

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

BUILTINS = ("jerrycan", "sphere", "torus", "genus2")


def thread_count(args):
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("CURVBOUND_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _builtin_manifest(name, args):
    if name == "jerrycan":
        spec = JerrycanSpec(thinness=args.thinness,
                            resolution=args.resolution)
        return build_jerrycan(spec)
    return build_fixture(name, resolution=args.resolution)


def cmd_build(args):
    spec = JerrycanSpec(thinness=args.thinness, resolution=args.resolution)
    manifest = build_jerrycan(spec)
    mesh = manifest.mesh()
    fmt = "stl-binary" if args.format == "stl" else "obj"
    export_mesh(mesh, args.output, fmt)
    manifest_path = args.manifest or (os.path.splitext(args.output)[0]
                                      + ".manifest.json")
    with open(manifest_path, "w") as f:
        json.dump({"spec": spec.to_dict(),
                   "manifest": manifest.to_dict()}, f, sort_keys=True,
                  indent=2)
    print("wrote %s (%d vertices, %d triangles) and %s"
          % (args.output, len(mesh.vertices), len(mesh.faces),
             manifest_path))
    return EXIT_OK


def cmd_verify(args):
    manifest = None
    if args.builtin:
        name = args.builtin
        manifest = _builtin_manifest(name, args)
        mesh = manifest.mesh()
    else:
        name = args.input
        mesh = import_mesh(args.input)

    topo = topology(mesh)
    checks = []
    volume = None
    if topo.watertight and topo.orientable:
        volume = enclosed_volume(mesh)
    checks.append(report.check("watertight", topo.watertight, True, 0,
                               topo.watertight))
    checks.append(report.check("orientable", topo.orientable, True, 0,
                               topo.orientable))

    max_curv = None
    if manifest is not None and manifest.explicit_mesh is None:
        value, where = manifest.max_curvature(workers=thread_count(args))
        max_curv = {"value": value, "location": where}
        checks.append(report.check(
            "max_abs_curvature", value, args.curvature_bound, 1e-6,
            value <= args.curvature_bound + 1e-6))

    ball = None
    if volume is not None:
        center, radius = inscribed_ball(mesh, args.sdf_resolution)
        ball = {"center": [float(x) for x in center],
                "radius": float(radius)}

    unit_ball = 4 * math.pi / 3
    if args.builtin == "jerrycan":
        checks.append(report.check("genus", topo.genus, 0, 0,
                                   topo.genus == 0))
        checks.append(report.check("volume_below_unit_ball", volume,
                                   unit_ball, 0, volume is not None
                                   and volume < unit_ball))
        checks.append(report.check("inscribed_ball_radius",
                                   ball and ball["radius"], 0.21, 0,
                                   ball is not None
                                   and ball["radius"] >= 0.21))
    elif args.builtin == "sphere":
        checks.append(report.check("genus", topo.genus, 0, 0,
                                   topo.genus == 0))
        checks.append(report.check(
            "volume", volume, unit_ball, 0.005,
            volume is not None
            and abs(volume - unit_ball) <= 0.005 * unit_ball))
        checks.append(report.check(
            "inscribed_ball_radius", ball and ball["radius"], 1.0, 0.02,
            ball is not None and abs(ball["radius"] - 1.0) <= 0.02))
    elif args.builtin == "torus":
        target = 4 * math.pi ** 2
        checks.append(report.check("genus", topo.genus, 1, 0,
                                   topo.genus == 1))
        checks.append(report.check(
            "volume", volume, target, 0.005,
            volume is not None and abs(volume - target) <= 0.005 * target))
    elif args.builtin == "genus2":
        checks.append(report.check("genus", topo.genus, 2, 0,
                                   topo.genus == 2))

    rep = report.build_report(str(name), topo, volume, max_curv, ball,
                              checks)
    print(report.to_json(rep) if args.json else report.to_text(rep))
    if not topo.watertight:
        return EXIT_VERIFY
    return EXIT_OK if report.all_pass(rep) else EXIT_VERIFY


def cmd_volumes(args):
    k = eval_constants()
    rows = [
        ("a", k["a"], 0.5),
        ("b", k["b"], 0.8),
        ("c", k["c"], 1.5),
        ("2a+2b+c", k["total"], k["unit_ball"]),
    ]
    if args.json:
        out = {"constants": k,
               "rows": [{"name": n, "value": v, "bound": b,
                         "pass": v < b} for n, v, b in rows],
               "ratio": k["total"] / k["unit_ball"]}
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print("%-10s %-22s %-22s %s" % ("name", "value", "bound", "pass"))
        for n, v, b in rows:
            print("%-10s %.15f %.15f %s" % (n, v, b, v < b))
        print("ratio to unit ball: %.4f" % (k["total"] / k["unit_ball"]))
    return EXIT_OK if all(v < b for _, v, b in rows) else EXIT_VERIFY


def cmd_planar(args):
    if args.input:
        with open(args.input) as f:
            curve = ArcSpline.from_dict(json.load(f))
        curves = [(args.input, curve)]
    else:
        from .curves import random_curves
        curves = [("random-%d" % i, c) for i, c in
                  enumerate(random_curves(args.random, seed=args.seed))]
    ok = True
    rows = []
    for label, curve in curves:
        area = enclosed_area(curve)
        center, radius = certify_unit_disc(curve)
        ok &= area >= math.pi - 1e-6 and radius >= 1 - 1e-3
        rows.append({"curve": label, "area": area,
                     "inradius": radius,
                     "center": [float(x) for x in center]})
    if args.json:
        print(json.dumps({"curves": rows, "pass": ok},
                         sort_keys=True, indent=2))
    else:
        for r in rows:
            print("%-12s area=%.9f inradius=%.9f" % (
                r["curve"], r["area"], r["inradius"]))
        print("overall: %s" % ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_export(args):
    if args.builtin:
        mesh = _builtin_manifest(args.builtin, args).mesh()
    else:
        mesh = import_mesh(args.input)
    fmt = "stl-binary" if args.output.lower().endswith(".stl") else "obj"
    export_mesh(mesh, args.output, fmt)
    print("wrote %s" % args.output)
    return EXIT_OK


def make_parser():
    p = argparse.ArgumentParser(
        prog="curvbound",
        description="Build and certify curvature-bounded surfaces of "
                    "small enclosed volume.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=None,
                        help="worker cap (default: CURVBOUND_THREADS or "
                             "all cores)")

    b = sub.add_parser("build", help="build the body and write a mesh")
    b.add_argument("--thinness", type=float, default=0.05)
    b.add_argument("--resolution", type=int, default=128)
    b.add_argument("--output", required=True)
    b.add_argument("--format", choices=("obj", "stl"), default="obj")
    b.add_argument("--manifest", default=None)
    common(b)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="verify a mesh or builtin body")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--input", help="OBJ or STL mesh path")
    g.add_argument("--builtin", choices=BUILTINS)
    v.add_argument("--thinness", type=float, default=0.05)
    v.add_argument("--resolution", type=int, default=128)
    v.add_argument("--curvature-bound", type=float, default=1.0)
    v.add_argument("--sdf-resolution", type=int, default=64)
    v.add_argument("--json", action="store_true")
    common(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("volumes", help="closed-form volume constants")
    c.add_argument("--json", action="store_true")
    common(c)
    c.set_defaults(func=cmd_volumes)

    pl = sub.add_parser("planar", help="certify planar arc-splines")
    pl.add_argument("--input", help="ArcSpline JSON path")
    pl.add_argument("--random", type=int, default=10,
                    help="number of random curves when no input is given")
    pl.add_argument("--json", action="store_true")
    common(pl)
    pl.set_defaults(func=cmd_planar)

    e = sub.add_parser("export", help="convert or export meshes")
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--input")
    g.add_argument("--builtin", choices=BUILTINS)
    e.add_argument("--thinness", type=float, default=0.05)
    e.add_argument("--resolution", type=int, default=128)
    e.add_argument("--output", required=True)
    common(e)
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0,) else 0
    np.random.seed(args.seed)
    try:
        return args.func(args)
    except (AssemblyError, CurveError, MeshError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except IOError as e:
        print("I/O error: %s" % e, file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
