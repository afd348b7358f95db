"""Build the curvature-bounded body and certify it end to end.

Walks through the whole pipeline: closed-form volume budget, patch
assembly, watertight mesh, curvature scan, enclosed volume, and the
inscribed-ball witness.  Writes body.obj next to this script.
"""

import math
import os

from curvbound import assembly, meshing, meshio, sdf
from curvbound.profiles import eval_constants

here = os.path.dirname(os.path.abspath(__file__))

consts = eval_constants()
print("volume budget (closed forms):")
for k in ("a", "b", "c", "total", "unit_ball"):
    print("  %-9s %.15f" % (k, consts[k]))
print("  ratio to unit ball: %.4f" % (consts["total"] / consts["unit_ball"]))

# a gasket thinness of 0.05 keeps the body comfortably under the budget
spec = assembly.JerrycanSpec(thinness=0.05, resolution=128)
body = assembly.build_jerrycan(spec)
print("\nassembled %d patches, worst seam gap %.3e"
      % (len(body.placed), max(g for _, _, g in body.seams)))

mesh = body.mesh()
rep = meshing.topology(mesh)
print("mesh: V=%d F=%d chi=%d genus=%s watertight=%s"
      % (rep.V, rep.F, rep.chi, rep.genus, rep.watertight))

vol = meshing.enclosed_volume(mesh)
print("enclosed volume %.10f  (< 4 pi / 3 = %.10f: %s)"
      % (vol, 4 * math.pi / 3, vol < 4 * math.pi / 3))

kmax, where = body.max_curvature(grid_density=64, refinement_levels=4)
print("max |principal curvature| %.10f on patch %r"
      % (kmax, where["patch"]))

center, radius = sdf.inscribed_ball(mesh, grid_resolution=96)
print("inscribed ball: radius %.6f at (%.4f, %.4f, %.4f)"
      % (radius, center[0], center[1], center[2]))

out = os.path.join(here, "body.obj")
meshio.export_mesh(mesh, out)
print("\nwrote %s" % out)
