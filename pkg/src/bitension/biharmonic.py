"""Tension and bitension residuals for sphere and projective-space curves.

Sign conventions, recorded once: the rough Laplacian is the geometers'
Delta = -trace grad^2, the sphere has sectional curvature 1, and the
projective target is normalized to holomorphic sectional curvature 4.
With those choices the Frenet-form bitension of an arc-length curve has
frame coefficients

    E1: -3 k1 k1'
    E2: k1'' - k1^3 - k1 k2^2 + k1
    E3: 2 k1' k2 + k1 k2'
    E4: k1 k2 k3

plus, in the projective case, ``-3 k1 t12`` times the expansion of J E1 in
the Frenet frame.  Lambda-biharmonicity means tau2 - lambda * tau = 0.
"""

from dataclasses import dataclass

import numpy as np

from .ambient import hopf_vector_field, j_apply
from .curves import (
    CurveFamily,
    CurveJet,
    FrenetApparatus,
    frenet_apparatus,
    sphere_covariant_derivative,
)
from .errors import DomainError, StructuralError, UnsupportedOrderError
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig

SIGN_CONVENTION = (
    "rough Laplacian = -trace grad^2; sphere curvature 1; "
    "holomorphic sectional curvature 4; lambda-residual = tau2 - lambda*tau"
)


@dataclass
class BitensionResidual:
    """A residual vector (ambient or frame coefficients) with its norm."""

    value: np.ndarray
    norm: float
    lam: float = 0.0
    convention_note: str = SIGN_CONVENTION

    @classmethod
    def from_value(cls, value, lam: float = 0.0,
                   note: str = SIGN_CONVENTION) -> "BitensionResidual":
        arr = np.asarray(value, dtype=float)
        return cls(value=arr, norm=float(np.linalg.norm(arr)), lam=lam, convention_note=note)


def frenet_bitension_coefficients(k1, k2=0.0, k3=0.0, k1p=0.0, k1pp=0.0, k2p=0.0):
    """The four Frenet-frame coefficients of the sphere-curve bitension."""
    return np.array([
        -3.0 * k1 * k1p,
        k1pp - k1**3 - k1 * k2**2 + k1,
        2.0 * k1p * k2 + k1 * k2p,
        k1 * k2 * k3,
    ])


def tension_coefficients(apparatus: FrenetApparatus) -> np.ndarray:
    """tau = k1 E2 as a length-4 frame-coefficient vector."""
    return np.array([0.0, apparatus.curvature(1), 0.0, 0.0])


def sphere_curve_bitension(apparatus: FrenetApparatus) -> BitensionResidual:
    """Bitension of a sphere curve in Frenet form (frame coefficients)."""
    if apparatus.d > 4 and apparatus.curvature(4) > 0.0:
        raise UnsupportedOrderError(
            f"closed form covers osculating order <= 4, got d = {apparatus.d}"
        )
    coeffs = frenet_bitension_coefficients(
        apparatus.curvature(1), apparatus.curvature(2), apparatus.curvature(3),
        apparatus.k1_prime, apparatus.k1_second, apparatus.k2_prime,
    )
    return BitensionResidual.from_value(coeffs)


def cpn_curve_bitension(apparatus: FrenetApparatus, jE1_coefficients,
                        tol: ToleranceConfig = DEFAULT_TOLERANCES) -> BitensionResidual:
    """Bitension of a projective-space curve given the J E1 frame expansion.

    ``jE1_coefficients`` expands J E1 in E_1..E_d.  Mass of J E1 genuinely
    outside the osculating span (beyond the classification tolerance, since
    J E1 is a unit vector) contributes ``|3 k1 t12| * sqrt(1 - |coeffs|^2)``
    to the residual norm rather than being silently dropped; sub-tolerance
    defects are roundoff and count as zero, as the square root would
    otherwise amplify them.
    """
    if apparatus.d > 4:
        raise UnsupportedOrderError(
            f"closed form covers osculating order <= 4, got d = {apparatus.d}"
        )
    jc = np.asarray(jE1_coefficients, dtype=float)
    if jc.size != apparatus.d:
        raise StructuralError(
            f"expected {apparatus.d} expansion coefficients, got {jc.size}"
        )
    mass = float(np.dot(jc, jc))
    if mass > 1.0 + tol.classification:
        raise DomainError(f"J E1 expansion has norm^2 = {mass:.6f} > 1")

    coeffs = frenet_bitension_coefficients(
        apparatus.curvature(1), apparatus.curvature(2), apparatus.curvature(3),
        apparatus.k1_prime, apparatus.k1_second, apparatus.k2_prime,
    )
    t12 = apparatus.torsion(1, 2)
    factor = 3.0 * apparatus.curvature(1) * t12
    padded = np.zeros(4)
    padded[: jc.size] = jc
    value = coeffs - factor * padded
    missing = 1.0 - mass
    outside = abs(factor) * np.sqrt(missing) if missing > tol.classification else 0.0
    norm = float(np.hypot(np.linalg.norm(value), outside))
    res = BitensionResidual.from_value(value)
    res.norm = norm
    return res


def lambda_biharmonic_residual(tau2: BitensionResidual, tau_coefficients,
                               lam: float) -> BitensionResidual:
    """tau2 - lambda * tau on matching frames."""
    tau = np.asarray(tau_coefficients, dtype=float)
    if tau.shape != np.shape(tau2.value):
        raise StructuralError(
            f"frame-length mismatch: tau2 has {np.shape(tau2.value)}, tau {tau.shape}"
        )
    return BitensionResidual.from_value(tau2.value - lam * tau, lam=lam)


def quartic_ode_residual(jet: CurveJet) -> float:
    """|gamma'''' + 6 gamma'' + gamma|, the lifted-circle characteristic ODE."""
    g, g2, g4 = jet.derivs[0], jet.derivs[2], jet.derivs[4]
    return float(np.linalg.norm(g4 + 6.0 * g2 + g))


def _assemble_ambient(apparatus: FrenetApparatus, coefficients) -> np.ndarray:
    vec = np.zeros_like(apparatus.frames[0])
    for c, frame in zip(coefficients, apparatus.frames):
        vec += c * frame
    return vec


def hopf_relation_check(family: CurveFamily, s: float,
                        tol: ToleranceConfig = DEFAULT_TOLERANCES) -> BitensionResidual:
    """Right-hand side of the lift relation for a flow-invariant curve tube.

    Evaluates ``tau2 - 4 J (J tau)^T + 2 div((J tau)^T) xi`` where tau is the
    curve tension, the tangential projection runs over span{E1, xi}, and the
    divergence reduces to d/ds <J tau, E1> (the fibre derivative vanishes by
    flow invariance).  The result is the horizontal lift of the projected
    curve's bitension, so it vanishes exactly when the projection is
    biharmonic.
    """
    app = frenet_apparatus(family, s, tol=tol)
    xi = hopf_vector_field(app.point, tol)
    e1 = app.frames[0]
    defect = abs(float(np.dot(e1, xi)))
    if defect > tol.classification:
        raise DomainError(
            f"curve is not a horizontal lift: |<E1, xi>| = {defect:.3e}", defect=defect
        )

    tau2_coeffs = sphere_curve_bitension(app).value
    tau2_vec = _assemble_ambient(app, tau2_coeffs[: app.d])

    if app.d == 1:  # geodesic: tau = 0 and everything vanishes
        return BitensionResidual.from_value(tau2_vec, lam=0.0)

    def tangential_j_tau(apparatus: FrenetApparatus) -> float:
        t = apparatus.curvature(1) * apparatus.frames[1]
        return float(np.dot(j_apply(t), apparatus.frames[0]))

    tau_vec = app.curvature(1) * app.frames[1]
    jtau = j_apply(tau_vec)
    along_e1 = float(np.dot(jtau, e1))
    along_xi = float(np.dot(jtau, xi))
    jtau_top = along_e1 * e1 + along_xi * xi

    h = tol.fd_step
    g = [tangential_j_tau(frenet_apparatus(family, s + k * h, tol=tol))
         for k in (-2, -1, 1, 2)]
    g_prime = (g[0] - 8.0 * g[1] + 8.0 * g[2] - g[3]) / (12.0 * h)

    rhs = tau2_vec - 4.0 * j_apply(jtau_top) + 2.0 * g_prime * xi
    return BitensionResidual.from_value(rhs)


def extrinsic_curve_bitension(family: CurveFamily, s: float,
                              h: float = None,
                              tol: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """Tube-assembled bitension from raw jets; the finite-difference oracle.

    Assembles ``-Delta tau + 2 tau`` over the flow-invariant tube frame
    {E1, xi}: the E1 part is the iterated covariant derivative of
    tau = k1 E2 computed by central differences of sampled tau values, and
    the fibre part of the Laplacian contributes exactly ``-tau`` for a
    horizontal field extended by the flow.  Independent of the Frenet-form
    coefficients.
    """
    h = tol.fd_step if h is None else h

    def tau_at(sigma: float) -> np.ndarray:
        app = frenet_apparatus(family, sigma, tol=tol)
        if app.d < 2:
            return np.zeros_like(app.frames[0])
        return app.curvature(1) * app.frames[1]

    def cov_tau(sigma: float) -> np.ndarray:
        samples = [tau_at(sigma + k * h) for k in (-2, -1, 1, 2)]
        dtau = (samples[0] - 8.0 * samples[1] + 8.0 * samples[2] - samples[3]) / (12.0 * h)
        return sphere_covariant_derivative(family.jet(sigma), tau_at(sigma), dtau, tol)

    samples = [cov_tau(s + k * h) for k in (-2, -1, 1, 2)]
    d_covtau = (samples[0] - 8.0 * samples[1] + 8.0 * samples[2] - samples[3]) / (12.0 * h)
    cov2 = sphere_covariant_derivative(family.jet(s), cov_tau(s), d_covtau, tol)

    tau0 = tau_at(s)
    fibre = -tau0  # second covariant derivative along the Hopf fibre
    return cov2 + fibre + 2.0 * tau0


# ---------------------------------------------------------------------------
# Characterization sweeps over constant-curvature sphere helices.
# ---------------------------------------------------------------------------

def helix_apparatus(k1: float, k2: float = 0.0, k3: float = 0.0,
                    torsions: dict = None) -> FrenetApparatus:
    """Abstract constant-curvature apparatus (no ambient frames)."""
    for k in (k1, k2, k3):
        if k < 0:
            raise DomainError("curvatures must be nonnegative")
    curvatures = tuple(k for k in (k1, k2, k3) if k > 0.0)
    d = len(curvatures) + 1
    return FrenetApparatus(d=d, curvatures=curvatures, torsions=dict(torsions or {}))


def helix_bitension_norm(k1, k2):
    """|tau2| for a constant-curvature sphere helix; vectorized."""
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    return np.abs(k1 * (1.0 - k1**2 - k2**2))


def helix_minus4_lift_norm(k1, k2):
    """Residual of the (-4)-characterization of unit-torsion circle lifts.

    A horizontal lift whose frame closes through the Hopf field is forced to
    have k2 = 1, so the characterizing system is |tau2 + 4 tau| together with
    the structural defect |k2 - 1|; vectorized.
    """
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    return np.hypot(k1 * (5.0 - k1**2 - k2**2), k2 - 1.0)


def helix_residual_grid(kind: str, k1_values, k2_values):
    """Residual surface over a (k1, k2) grid; rows index k1."""
    k1 = np.asarray(k1_values, dtype=float)[:, None]
    k2 = np.asarray(k2_values, dtype=float)[None, :]
    if kind == "bitension":
        return helix_bitension_norm(k1, k2)
    if kind == "minus4-lift":
        return helix_minus4_lift_norm(k1, k2)
    raise DomainError(f"unknown sweep kind {kind!r}")
