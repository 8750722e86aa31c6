"""Explicit biharmonic curve families, the order-4 helix solver, classifier.

The two lift families are closed-form curves on S^{2n+1} whose projections
are the proper-biharmonic circles and helices of the projective target; the
order-4 solver produces the curvature/torsion data of the holomorphic
helices that have no explicit parametrization, gated purely by computable
conditions (discriminant sign, curvature positivity, range of k2^2).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ambient import as_ambient, j_apply, standard_complex_axis
from .curves import CurveFamily, trig_curve_family
from .errors import (
    ConstraintViolationError,
    DomainError,
    NoSolutionError,
    StructuralError,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig

SQRT2 = float(np.sqrt(2.0))

# Admissibility of the order-4 solve: real k2 needs the quartic discriminant
# 9 c^4 - 42 c^2 + 1 >= 0, i.e. cos^2(alpha0) <= (7 - 4 sqrt(3)) / 3.  The
# nominal interval endpoint arccos(-(2 - sqrt(3)) / sqrt(2)) would allow
# cos^2(alpha0) up to (7 - 4 sqrt(3)) / 2, which the discriminant rejects;
# the solver gates on the discriminant and reports the discrepancy.
COS_SQ_DISCRIMINANT_MAX = (7.0 - 4.0 * np.sqrt(3.0)) / 3.0
COS_SQ_ENDPOINT_NOMINAL = (7.0 - 4.0 * np.sqrt(3.0)) / 2.0

ALPHA0_INTERVAL_WARNING = (
    "alpha0 admissibility is gated by the discriminant 9cos^4 - 42cos^2 + 1 >= 0 "
    "(cos^2 alpha0 <= (7-4*sqrt(3))/3 ~= 2.3933e-2); the nominal interval endpoint "
    "arccos(-(2-sqrt(3))/sqrt(2)) would admit cos^2 alpha0 up to (7-4*sqrt(3))/2, "
    "which fails the discriminant and is rejected"
)


def _check_pm1_vectors(e1: np.ndarray, e3: np.ndarray,
                       tol: ToleranceConfig) -> None:
    for name, v in (("e1", e1), ("e3", e3)):
        if abs(float(np.linalg.norm(v)) - 1.0) > tol.unit_norm:
            raise DomainError(f"{name} must be a unit vector")
    if abs(float(np.dot(e3, e1))) > tol.orthogonality:
        raise DomainError("e3 must be orthogonal to e1")
    if abs(float(np.dot(e3, j_apply(e1)))) > tol.orthogonality:
        raise DomainError("e3 must be orthogonal to J e1")


def lift_curve_tau12_pm1(n: int = 1, e1=None, e3=None,
                         tol: ToleranceConfig = DEFAULT_TOLERANCES) -> CurveFamily:
    """Horizontal lift of the unit-complex-torsion proper-biharmonic circle.

    Frequencies sqrt(2) +/- 1 with amplitudes sqrt(2 -+ sqrt(2)) / 2; the lift
    is a sphere helix with k1 = 2, k2 = 1 whose third frame member is the
    Hopf field up to sign.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    e1 = standard_complex_axis(1, n) if e1 is None else as_ambient(e1)
    e3 = standard_complex_axis(2, n) if e3 is None else as_ambient(e3)
    if e1.size != 2 * n + 2 or e3.size != 2 * n + 2:
        raise StructuralError("constant vectors do not match the ambient dimension")
    _check_pm1_vectors(e1, e3, tol)

    amp1 = np.sqrt(2.0 - SQRT2) / 2.0
    amp3 = np.sqrt(2.0 + SQRT2) / 2.0
    freq_a = SQRT2 + 1.0
    freq_b = SQRT2 - 1.0
    terms = [
        (e1, amp1, freq_a, 0.0),
        (j_apply(e1), -amp1, freq_a, -np.pi / 2.0),
        (e3, amp3, freq_b, 0.0),
        (j_apply(e3), amp3, freq_b, -np.pi / 2.0),
    ]
    return trig_curve_family("tau12-pm1", {"n": n}, n, terms)


def _check_orthonormal_complex_set(vectors, tol: ToleranceConfig) -> None:
    """All of {e_i, J e_j} must be orthonormal."""
    full = list(vectors) + [j_apply(v) for v in vectors]
    for i, u in enumerate(full):
        if abs(float(np.linalg.norm(u)) - 1.0) > tol.unit_norm:
            raise DomainError("constant vectors must be unit")
        for v in full[i + 1:]:
            if abs(float(np.dot(u, v))) > tol.orthogonality:
                raise DomainError("the set {e_i, J e_j} must be orthonormal")


def lift_curve_tau12_zero(kind: str, k1: Optional[float] = None,
                          n: Optional[int] = None, vectors=None,
                          tol: ToleranceConfig = DEFAULT_TOLERANCES) -> CurveFamily:
    """Horizontal lifts of the torsion-free proper-biharmonic curves.

    ``circle`` is the k1 = 1 circle lift (needs n >= 2); ``helix`` takes
    k1 in (0, 1) and lifts the helix with k1^2 + k2^2 = 1 (needs n >= 3).
    """
    if kind == "circle":
        n = 2 if n is None else n
        if n < 2:
            raise DomainError("the circle lift needs n >= 2")
        if vectors is None:
            vectors = [standard_complex_axis(k, n) for k in (1, 2, 3)]
        else:
            vectors = [as_ambient(v) for v in vectors]
        if len(vectors) != 3:
            raise StructuralError("circle kind needs three constant vectors")
        _check_orthonormal_complex_set(vectors, tol)
        e1, e2, e3 = vectors
        amp = 1.0 / SQRT2
        terms = [
            (e1, amp, SQRT2, 0.0),
            (e2, amp, SQRT2, -np.pi / 2.0),
            (e3, amp, 0.0, 0.0),
        ]
        return trig_curve_family("tau12-zero-circle", {"n": n}, n, terms)

    if kind == "helix":
        if k1 is None or not 0.0 < k1 < 1.0:
            raise DomainError("helix kind needs k1 in (0, 1)")
        n = 3 if n is None else n
        if n < 3:
            raise DomainError("the helix lift needs n >= 3")
        if vectors is None:
            vectors = [standard_complex_axis(k, n) for k in (1, 2, 3, 4)]
        else:
            vectors = [as_ambient(v) for v in vectors]
        if len(vectors) != 4:
            raise StructuralError("helix kind needs four constant vectors")
        _check_orthonormal_complex_set(vectors, tol)
        e1, e2, e3, e4 = vectors
        amp = 1.0 / SQRT2
        w_plus = np.sqrt(1.0 + k1)
        w_minus = np.sqrt(1.0 - k1)
        terms = [
            (e1, amp, w_plus, 0.0),
            (e2, amp, w_plus, -np.pi / 2.0),
            (e3, amp, w_minus, 0.0),
            (e4, amp, w_minus, -np.pi / 2.0),
        ]
        return trig_curve_family("tau12-zero-helix", {"n": n, "k1": k1}, n, terms)

    raise DomainError(f"unknown kind {kind!r}; use 'circle' or 'helix'")


def great_circle(n: int = 1, i: int = 0, j: int = 1) -> CurveFamily:
    """gamma(s) = cos(s) e_i + sin(s) e_j on coordinate axes i, j.

    The default (0, 1) pair spans one complex slot, so the circle is a Hopf
    fibre (vertical); picking axes from different slots, e.g. (0, 2), gives
    a horizontal geodesic.
    """
    dim = 2 * n + 2
    if not (0 <= i < dim and 0 <= j < dim and i != j):
        raise DomainError("great circle needs two distinct coordinate axes")
    ei = np.zeros(dim)
    ei[i] = 1.0
    ej = np.zeros(dim)
    ej[j] = 1.0
    label = "great-circle" if (j == i + 1 and i % 2 == 0) else "great-circle-horizontal"
    terms = [(ei, 1.0, 1.0, 0.0), (ej, 1.0, 1.0, -np.pi / 2.0)]
    return trig_curve_family(label, {"n": n, "i": i, "j": j}, n, terms)


def small_circle(a: float, n: int = 1) -> CurveFamily:
    """gamma(s) = (a cos(s/a), a sin(s/a), b, 0, ...) with a^2 + b^2 = 1."""
    if not 0.0 < a < 1.0:
        raise DomainError("small circle needs radius a in (0, 1)")
    b = np.sqrt(1.0 - a * a)
    dim = 2 * n + 2
    e0 = np.zeros(dim)
    e0[0] = 1.0
    e1 = np.zeros(dim)
    e1[1] = 1.0
    e2 = np.zeros(dim)
    e2[2] = 1.0
    terms = [(e0, a, 1.0 / a, 0.0), (e1, a, 1.0 / a, -np.pi / 2.0), (e2, b, 0.0, 0.0)]
    return trig_curve_family("small-circle", {"n": n, "a": a}, n, terms)


# ---------------------------------------------------------------------------
# Gram conditions of the unit-torsion lift.
# ---------------------------------------------------------------------------

def gram_conditions(family: CurveFamily):
    """The ten inner-product conditions on the constant vectors of the lift.

    With gamma = cos(A s) c1 + sin(A s) c2 + cos(B s) c3 + sin(B s) c4 and
    c_ij = <c_i, c_j>, the arc-length/curvature normalization of the k1 = 2,
    k2 = 1 helix pins these ten combinations.  Returns (label, value, target)
    triples.
    """
    if family.constant_vectors is None or family.frequencies is None:
        raise StructuralError("family does not expose cos/sin constant vectors")
    c1, c2, c3, c4 = family.constant_vectors
    a, b = family.frequencies  # a > b
    c = {}
    vecs = {1: c1, 2: c2, 3: c3, 4: c4}
    for i in range(1, 5):
        for j in range(i, 5):
            c[(i, j)] = float(np.dot(vecs[i], vecs[j]))

    return [
        ("c11+2c13+c33", c[1, 1] + 2 * c[1, 3] + c[3, 3], 1.0),
        ("A2c22+2ABc24+B2c44", a**2 * c[2, 2] + 2 * a * b * c[2, 4] + b**2 * c[4, 4], 1.0),
        ("Ac12+Ac23+Bc14+Bc34", a * c[1, 2] + a * c[2, 3] + b * c[1, 4] + b * c[3, 4], 0.0),
        ("A3c12+AB2c23+A2Bc14+B3c34",
         a**3 * c[1, 2] + a * b**2 * c[2, 3] + a**2 * b * c[1, 4] + b**3 * c[3, 4], 0.0),
        ("A4c11+2A2B2c13+B4c33",
         a**4 * c[1, 1] + 2 * a**2 * b**2 * c[1, 3] + b**4 * c[3, 3], 5.0),
        ("A2c11+(A2+B2)c13+B2c33",
         a**2 * c[1, 1] + (a**2 + b**2) * c[1, 3] + b**2 * c[3, 3], 1.0),
        ("A4c22+(AB3+A3B)c24+B4c44",
         a**4 * c[2, 2] + (a * b**3 + a**3 * b) * c[2, 4] + b**4 * c[4, 4], 5.0),
        ("A5c12+A3B2c23+A2B3c14+B5c34",
         a**5 * c[1, 2] + a**3 * b**2 * c[2, 3] + a**2 * b**3 * c[1, 4] + b**5 * c[3, 4], 0.0),
        ("A3c12+A3c23+B3c14+B3c34",
         a**3 * c[1, 2] + a**3 * c[2, 3] + b**3 * c[1, 4] + b**3 * c[3, 4], 0.0),
        ("A6c22+2A3B3c24+B6c44",
         a**6 * c[2, 2] + 2 * a**3 * b**3 * c[2, 4] + b**6 * c[4, 4], 29.0),
    ]


def gram_condition_max_defect(family: CurveFamily) -> float:
    return max(abs(value - target) for _, value, target in gram_conditions(family))


# ---------------------------------------------------------------------------
# Order-4 holomorphic helix solver and the torsion-class classifier.
# ---------------------------------------------------------------------------

TORSION_INDEX_ORDER = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


@dataclass(frozen=True)
class HelixClassification:
    label: Optional[str]          # I1/I2/I3/I4/I3'/I4' or None
    distances: dict               # per-row Euclidean torsion-pattern distance
    mu: Optional[float]
    nu: Optional[float]


def classify_helix_cp2(k1: float, k2: float, k3: float, torsions,
                       tol: ToleranceConfig = DEFAULT_TOLERANCES) -> HelixClassification:
    """Match a torsion pattern against the order-4 holomorphic helix classes.

    Classes with tau12 = tau34 carry mu = (k1+k3)/sqrt(k2^2+(k1+k3)^2);
    classes with tau12 = -tau34 carry nu = (k1-k3)/sqrt(k2^2+(k1-k3)^2),
    and the labels I3/I4 attach to the sign of tau12 (I3 negative, I4
    positive).  Equal k1 = k3 routes to the primed classes.  No row within
    ``tol.classification`` yields label None together with all distances.
    """
    if min(k1, k2, k3) <= 0.0:
        raise DomainError("classification needs strictly positive curvatures")
    t = np.asarray(torsions, dtype=float)
    if t.size != 6:
        raise StructuralError("torsion list must have six entries (lexicographic)")

    rows = {}
    mu = nu = None
    if abs(k1 - k3) <= tol.classification * max(1.0, k1, k3):
        rows["I3'"] = np.array([0.0, 0.0, -1.0, 1.0, 0.0, 0.0])
        rows["I4'"] = np.array([0.0, 0.0, 1.0, -1.0, 0.0, 0.0])
        mu = (k1 + k3) / np.hypot(k2, k1 + k3)
        tmu = k2 * mu / (k1 + k3)
        rows["I1"] = np.array([mu, 0.0, tmu, tmu, 0.0, mu])
        rows["I2"] = -rows["I1"]
    else:
        mu = (k1 + k3) / np.hypot(k2, k1 + k3)
        nu = (k1 - k3) / np.hypot(k2, k1 - k3)
        tmu = k2 * mu / (k1 + k3)
        tnu = k2 * nu / (k1 - k3)
        rows["I1"] = np.array([mu, 0.0, tmu, tmu, 0.0, mu])
        rows["I2"] = -rows["I1"]
        pattern = np.array([nu, 0.0, -tnu, tnu, 0.0, -nu])
        if nu > 0:
            rows["I4"] = pattern     # tau12 = nu > 0
            rows["I3"] = -pattern
        else:
            rows["I3"] = pattern
            rows["I4"] = -pattern

    distances = {name: float(np.linalg.norm(t - row)) for name, row in rows.items()}
    best = min(distances, key=distances.get)
    label = best if distances[best] <= tol.classification else None
    return HelixClassification(label=label, distances=distances, mu=mu,
                               nu=None if nu is None else float(nu))


@dataclass(frozen=True)
class HelixSolution:
    """Curvatures and complex torsions of an order-4 biharmonic helix."""

    alpha0: float
    branch: str                  # 'plus' or 'minus' inside the square root
    k1: float
    k2: float
    k3: float
    tau12: float
    tau13: float
    tau14: float
    tau23: float
    tau24: float
    tau34: float
    class_label: str

    def torsion_vector(self) -> list:
        return [self.tau12, self.tau13, self.tau14,
                self.tau23, self.tau24, self.tau34]

    def jE1_coefficients(self) -> list:
        """Expansion of J E1 in the Frenet frame: cos(a0) E2 + sin(a0) E4."""
        return [0.0, np.cos(self.alpha0), 0.0, np.sin(self.alpha0)]


def helix_discriminant(alpha0: float) -> float:
    c2 = np.cos(alpha0) ** 2
    return 9.0 * c2 * c2 - 42.0 * c2 + 1.0


def solve_order4_helix(alpha0: float, branch: str = "plus",
                       tol: ToleranceConfig = DEFAULT_TOLERANCES) -> HelixSolution:
    """Closed-form curvature system of the order-4 biharmonic helices.

    k2 = |sin a0|/sqrt(2) * sqrt(1 - 3cos^2 a0 +/- sqrt(disc)) with the
    prefactor sign fixed by positivity, then k3 = -3 sin(2 a0) / (2 k2) and
    k1 = -(k2 cos a0 - k3 sin a0)/sin a0.  Rejections are purely numerical:
    negative discriminant, k2^2 outside (0, 1 + 3cos^2 a0), or a
    non-positive curvature.
    """
    if branch not in ("plus", "minus"):
        raise DomainError("branch must be 'plus' or 'minus'")
    s = float(np.sin(alpha0))
    c = float(np.cos(alpha0))
    if abs(s) < 1e-12:
        raise DomainError("sin(alpha0) = 0 leaves the torsion system degenerate")
    if abs(c) < 1e-12:
        raise DomainError("cos(alpha0) = 0 degenerates the order-4 system")

    disc = helix_discriminant(alpha0)
    if disc < 0.0:
        raise NoSolutionError(
            f"discriminant 9cos^4 - 42cos^2 + 1 = {disc:.6e} is negative",
            discriminant=disc,
        )
    sign = 1.0 if branch == "plus" else -1.0
    inner = 1.0 - 3.0 * c * c + sign * np.sqrt(disc)
    k2_sq = (s * s / 2.0) * inner
    if not 0.0 < k2_sq < 1.0 + 3.0 * c * c:
        raise ConstraintViolationError(
            f"k2^2 = {k2_sq:.6e} outside (0, 1 + 3cos^2 alpha0)"
        )
    k2 = abs(s) / SQRT2 * np.sqrt(inner)
    k3 = -3.0 * np.sin(2.0 * alpha0) / (2.0 * k2)
    if k3 <= 0.0:
        raise ConstraintViolationError(
            "k3 <= 0: alpha0 lies outside the sin(2 alpha0) < 0 regimes"
        )
    k1 = -(k2 * c - k3 * s) / s
    if k1 <= 0.0:
        raise ConstraintViolationError("k1 <= 0 for this alpha0")

    torsions = {
        "tau12": -c, "tau13": 0.0, "tau14": -s,
        "tau23": s, "tau24": 0.0, "tau34": c,
    }
    classification = classify_helix_cp2(
        k1, k2, k3,
        [torsions["tau12"], torsions["tau13"], torsions["tau14"],
         torsions["tau23"], torsions["tau24"], torsions["tau34"]],
        tol,
    )
    return HelixSolution(
        alpha0=float(alpha0), branch=branch,
        k1=float(k1), k2=float(k2), k3=float(k3),
        class_label=classification.label or "unclassified",
        **torsions,
    )


def admissible_alpha0_samples(count: int, margin: float = 1e-3):
    """Evenly spaced admissible alpha0 values, split over both regimes."""
    if count < 2:
        raise DomainError("need at least two samples")
    c_max = np.sqrt(COS_SQ_DISCRIMINANT_MAX)
    # regime with sin > 0, cos < 0: alpha0 in (pi/2, arccos(-c_max))
    hi_a = np.arccos(-c_max)
    first = np.linspace(np.pi / 2 + margin, hi_a - margin, count - count // 2)
    # regime with sin < 0, cos > 0: alpha0 in (3pi/2, 3pi/2 + asin(c_max))
    hi_b = 1.5 * np.pi + np.arcsin(c_max)
    second = np.linspace(1.5 * np.pi + margin, hi_b - margin, count // 2)
    return np.concatenate([first, second])
