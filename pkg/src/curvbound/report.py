"""Verification reports: deterministic JSON plus human-readable text."""

import json

from . import __version__
from .profiles import eval_constants


def check(name, measured, bound, tolerance, passed):
    return {"name": name, "measured": measured, "bound": bound,
            "tolerance": tolerance, "pass": bool(passed)}


def build_report(input_desc, topo, volume, max_curvature, inscribed,
                 checks):
    """Assemble the report dict with the fixed key schema."""
    return {
        "version": __version__,
        "input": input_desc,
        "topology": topo.to_dict() if topo is not None else None,
        "volume": volume,
        "max_curvature": max_curvature,
        "inscribed_ball": inscribed,
        "constants": eval_constants(),
        "checks": checks,
    }


def all_pass(report):
    return all(c["pass"] for c in report["checks"])


def to_json(report):
    return json.dumps(report, sort_keys=True, indent=2)


def to_text(report):
    lines = ["curvbound %s — %s" % (report["version"], report["input"])]
    t = report["topology"]
    if t is not None:
        lines.append(
            "topology: V=%d E=%d F=%d chi=%d genus=%s watertight=%s "
            "orientable=%s" % (t["V"], t["E"], t["F"], t["chi"],
                               t["genus"], t["watertight"], t["orientable"]))
    if report["volume"] is not None:
        lines.append("enclosed volume: %.9f" % report["volume"])
    mc = report["max_curvature"]
    if mc is not None:
        lines.append("max |curvature|: %.9f on %s" % (
            mc["value"], mc.get("location", {}).get("patch", "?")))
    ball = report["inscribed_ball"]
    if ball is not None:
        lines.append("inscribed ball: r=%.6f at (%.4f, %.4f, %.4f)"
                     % (ball["radius"], *ball["center"]))
    k = report["constants"]
    lines.append("constants: a=%.6f b=%.6f c=%.6f 2a+2b+c=%.6f < %.6f"
                 % (k["a"], k["b"], k["c"], k["total"], k["unit_ball"]))
    for c in report["checks"]:
        lines.append("  [%s] %-28s measured=%-22r bound=%r (tol %r)"
                     % ("PASS" if c["pass"] else "FAIL", c["name"],
                        c["measured"], c["bound"], c["tolerance"]))
    lines.append("overall: %s" % ("PASS" if all_pass(report) else "FAIL"))
    return "\n".join(lines)
