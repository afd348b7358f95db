"""Construction and numerical certification of curvature-bounded
surfaces enclosing less volume than the unit ball."""

__version__ = "0.1.0"

from .profiles import (Arc, Segment, ProfileRegion, eval_constants,
                       region_area, revolved_volume)
from .patches import ParametricPatch, FundamentalForms, CurvatureSample
from .meshing import (TriMesh, tessellate, stitch, topology,
                      enclosed_volume, TopologyReport)
from .sdf import SDFGrid, build_sdf, inscribed_ball
from .meshio import export_mesh, import_mesh
from .assembly import (JerrycanSpec, AssemblyManifest, build_jerrycan,
                       build_fixture, inflate)
from .curves import ArcSpline, enclosed_area, certify_unit_disc

__all__ = [
    "Arc", "Segment", "ProfileRegion", "eval_constants", "region_area",
    "revolved_volume", "ParametricPatch", "FundamentalForms",
    "CurvatureSample", "TriMesh", "tessellate", "stitch", "topology",
    "enclosed_volume", "TopologyReport", "SDFGrid", "build_sdf",
    "inscribed_ball", "export_mesh", "import_mesh", "JerrycanSpec",
    "AssemblyManifest", "build_jerrycan", "build_fixture", "inflate",
    "ArcSpline", "enclosed_area", "certify_unit_disc",
]
