"""Coordinate model of R^{2n+2}: inner product, complex structure, Hopf field.

Convention fixed once for the whole package: complex coordinate ``z_k``
occupies the consecutive real slots ``(2k-2, 2k-1)`` (0-based), and the
complex structure acts blockwise by ``(u, v) -> (-v, u)``.  The Hopf field
on the unit sphere is ``xi(p) = -J p``.

All functions are pure and safe to call concurrently.
"""

import numpy as np

from .errors import DataError, DomainError, StructuralError
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig


def as_ambient(v) -> np.ndarray:
    """Validate and return ``v`` as a float vector of even length >= 4."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise StructuralError(f"ambient vector must be 1-d, got shape {arr.shape}")
    if arr.size < 4 or arr.size % 2 != 0:
        raise StructuralError(
            f"ambient vector length must be even and >= 4, got {arr.size}"
        )
    if not np.all(np.isfinite(arr)):
        raise DataError("ambient vector has non-finite entries")
    return arr


def complex_dimension(v: np.ndarray) -> int:
    """The n of CP^n for a vector living in R^{2n+2}."""
    return v.size // 2 - 1


def j_apply(v) -> np.ndarray:
    """Blockwise rotation (u, v) -> (-v, u) on consecutive coordinate pairs."""
    arr = as_ambient(v)
    out = np.empty_like(arr)
    out[0::2] = -arr[1::2]
    out[1::2] = arr[0::2]
    return out


def check_unit(p: np.ndarray, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> None:
    """Raise DomainError (carrying |p| - 1) unless p sits on the unit sphere."""
    defect = float(np.linalg.norm(p)) - 1.0
    if abs(defect) > tol.unit_norm:
        raise DomainError(f"point is off the unit sphere by {defect:.3e}", defect=defect)


def hopf_vector_field(p, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """Hopf field xi(p) = -J p; unit and orthogonal to p for unit p."""
    arr = as_ambient(p)
    check_unit(arr, tol)
    return -j_apply(arr)


def sphere_tangent_project(p, v) -> np.ndarray:
    """Project v onto the tangent space of the unit sphere at p: v - <v,p> p."""
    parr = as_ambient(p)
    varr = as_ambient(v)
    if parr.size != varr.size:
        raise StructuralError(
            f"dimension mismatch: point has {parr.size} coords, vector {varr.size}"
        )
    return varr - float(np.dot(varr, parr)) * parr


def horizontality_defect(p, v, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """<v, xi(p)> for a sphere-tangent v; zero exactly when v is horizontal.

    Raises DomainError when v is not tangent to the sphere at p, since the
    vertical component is meaningful only for tangent vectors.
    """
    parr = as_ambient(p)
    varr = as_ambient(v)
    if parr.size != varr.size:
        raise StructuralError("dimension mismatch between point and vector")
    check_unit(parr, tol)
    radial = float(np.dot(varr, parr))
    scale = max(1.0, float(np.linalg.norm(varr)))
    if abs(radial) > tol.orthogonality * scale:
        raise DomainError(
            f"vector is not sphere-tangent: <v, p> = {radial:.3e}", defect=radial
        )
    return float(np.dot(varr, -j_apply(parr)))


def standard_complex_axis(k: int, n: int) -> np.ndarray:
    """Unit vector of the k-th complex axis (k = 1, 2, ...) in R^{2n+2}."""
    if k < 1 or 2 * k > 2 * n + 2:
        raise DomainError(f"complex axis {k} does not exist for n = {n}")
    e = np.zeros(2 * n + 2)
    e[2 * (k - 1)] = 1.0
    return e
