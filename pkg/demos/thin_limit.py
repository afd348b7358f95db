"""Gasket-thinness sweep: the enclosed volume tends to 2a + 2b + c.

The white gasket contributes O(eps) volume, so shrinking it walks the
total down toward the closed-form budget.  A two-point Richardson
extrapolation in eps recovers the limit to a few parts in a thousand.
"""

import numpy as np

from curvbound import assembly, meshing
from curvbound.profiles import eval_constants

target = eval_constants()["total"]
eps_values = [0.08, 0.04, 0.02]
vols = []
print("  eps     volume        excess over 2a+2b+c")
for eps in eps_values:
    spec = assembly.JerrycanSpec(thinness=eps, resolution=96)
    v = meshing.enclosed_volume(assembly.build_jerrycan(spec).mesh())
    vols.append(v)
    print("  %.2f   %.8f   %+.6f" % (eps, v, v - target))

# V(eps) ~ V0 + k eps to leading order
v0 = vols[-1] - (vols[-2] - vols[-1])
slope = (vols[0] - vols[-1]) / (eps_values[0] - eps_values[-1])
print("\nextrapolated V(0) = %.8f   (target %.8f, err %+.2e)"
      % (v0, target, v0 - target))
print("gasket volume slope dV/deps ~ %.4f" % slope)
