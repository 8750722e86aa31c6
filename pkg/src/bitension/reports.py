"""Report records, canonical JSON, and verdict consistency checking.

Reports are plain dicts with a fixed key order and floats rendered at 17
significant digits, so identical inputs produce byte-identical output.  The
verdict is re-derivable from the residuals, checks, and tolerances recorded
in the report; ``check_report`` performs that re-derivation and is run by
the acceptance suite on every CLI invocation.
"""

import json
import math

from .errors import StructuralError

SCHEMA_VERSION = 1

VERDICT_HARMONIC = "harmonic"
VERDICT_PROPER = "proper-biharmonic"
VERDICT_NOT = "not-biharmonic"
VERDICT_EXCLUDED_MINIMAL = "excluded-minimal"
VERDICT_NO_SOLUTION = "no-solution"
VERDICT_UNCLASSIFIED = "unclassified"


def fmt_float(x: float) -> str:
    """Render a float at 17 significant digits; -0.0 collapses to 0."""
    v = float(x)
    if not math.isfinite(v):
        raise StructuralError(f"non-finite value {v!r} in report")
    if v == 0.0:
        v = 0.0  # drops the sign of -0.0
    return format(v, ".17g")


def lambda_verdict(lam: float) -> str:
    return f"lambda-biharmonic({fmt_float(lam)})"


def canonical_json(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, 17-digit floats."""
    pieces = []
    _write(obj, pieces)
    return "".join(pieces)


def _write(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(fmt_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _write(item, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(",")
            if not isinstance(key, str):
                raise StructuralError("report keys must be strings")
            out.append(json.dumps(key))
            out.append(":")
            _write(value, out)
        out.append("}")
    else:
        raise StructuralError(f"unsupported report value type {type(obj)!r}")


def labeled(label: str, value: float) -> dict:
    return {"label": label, "value": float(value)}


def build_report(command: str, inputs: dict, residuals: dict, roots: list,
                 verdict: str, tolerances: dict, warnings: list,
                 checks: dict = None, class_label: str = None) -> dict:
    report = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "residuals": {k: float(v) for k, v in residuals.items()},
        "roots": roots,
        "verdict": verdict,
    }
    if class_label is not None:
        report["class_label"] = class_label
    report["checks"] = {} if checks is None else checks
    report["tolerances"] = tolerances
    report["warnings"] = list(warnings)
    return report


# ---------------------------------------------------------------------------
# Verdict derivation: one rule per command, shared by builders and checker.
# ---------------------------------------------------------------------------

def derive_verdict(command: str, residuals: dict, checks: dict,
                   tolerances: dict, roots: list) -> str:
    tol = tolerances["residual"]
    if command == "verify curve":
        if residuals["tension_max"] <= tol:
            return VERDICT_HARMONIC
        if residuals["bitension_max"] <= tol:
            return VERDICT_PROPER
        if residuals["lambda_minus4_max"] <= tol:
            return lambda_verdict(-4.0)
        return VERDICT_NOT

    if command == "verify torus":
        if checks.get("minimal"):
            return VERDICT_EXCLUDED_MINIMAL
        if residuals["zhang_system"] <= tol:
            return VERDICT_PROPER
        return VERDICT_NOT

    if command == "verify hypersurface":
        if not checks.get("nonzero_mean_curvature"):
            return VERDICT_HARMONIC
        if checks.get("positive_holomorphic_curvature") and \
                residuals["criterion_defect"] <= tol:
            return VERDICT_PROPER
        return VERDICT_NOT

    if command == "solve clifford":
        admissible = [r for r in roots if r["label"].startswith("a_sq")
                      and "excluded" not in r["label"]]
        return VERDICT_PROPER if admissible else VERDICT_NO_SOLUTION

    if command == "solve zhang":
        return VERDICT_PROPER if roots else VERDICT_NO_SOLUTION

    if command == "solve helix":
        if checks.get("no_real_solution"):
            return VERDICT_NO_SOLUTION
        return VERDICT_PROPER

    if command == "solve sphere-bundle":
        if checks.get("minimal"):
            return VERDICT_EXCLUDED_MINIMAL
        if "minus4_residual" in residuals:
            if residuals["minus4_residual"] <= tol:
                return lambda_verdict(-4.0)
            return VERDICT_NOT
        located = [r for r in roots if r["label"].startswith("a_sq")]
        return lambda_verdict(-4.0) if located else VERDICT_NO_SOLUTION

    if command == "classify helix":
        distances = [v for k, v in residuals.items() if k.startswith("distance_")]
        class_tol = tolerances["classification"]
        if not distances or min(distances) > class_tol:
            return VERDICT_UNCLASSIFIED
        return "classified"  # placeholder; checker compares labels separately

    raise StructuralError(f"unknown command {command!r}")


def check_report(report: dict) -> None:
    """Re-derive the verdict from the report alone; raise on inconsistency."""
    for key in ("schema", "command", "inputs", "residuals", "roots", "verdict",
                "tolerances", "warnings"):
        if key not in report:
            raise StructuralError(f"report is missing key {key!r}")
    if report["schema"] != SCHEMA_VERSION:
        raise StructuralError(f"unsupported schema {report['schema']!r}")
    for name, value in report["residuals"].items():
        if not (isinstance(value, (int, float)) and value >= 0.0):
            raise StructuralError(f"residual {name!r} is not a nonnegative real")

    command = report["command"]
    derived = derive_verdict(command, report["residuals"], report.get("checks", {}),
                             report["tolerances"], report["roots"])
    actual = report["verdict"]
    if command == "classify helix":
        if derived == VERDICT_UNCLASSIFIED:
            consistent = actual == VERDICT_UNCLASSIFIED
        else:
            # the verdict must be the row whose distance is minimal
            distances = {k[len("distance_"):]: v
                         for k, v in report["residuals"].items()
                         if k.startswith("distance_")}
            best = min(distances, key=distances.get)
            consistent = actual == best
        if not consistent:
            raise StructuralError(
                f"classification verdict {actual!r} inconsistent with distances"
            )
        return
    if derived != actual:
        raise StructuralError(
            f"verdict {actual!r} inconsistent with residuals (expected {derived!r})"
        )
