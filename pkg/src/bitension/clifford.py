"""Product submanifolds of Clifford tori, sphere bundles, and hypersurfaces.

Everything here is closed form: tension/bitension coefficients of minimal
products inside a Clifford torus, the quadratic whose roots make the
projected product proper-biharmonic, the tangent sphere bundle residuals,
the circle-product (Lagrangian torus) system with its independent extrinsic
oracle, and the scalar hypersurface predicates.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig


@dataclass(frozen=True)
class ProductSphereConfig:
    """M1^{m1} x M2^{m2} minimal in S^{2p+1}(a) x S^{2q+1}(b), a^2 + b^2 = 1."""

    p: int
    q: int
    a: float
    b: float
    m1: int
    m2: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise DomainError("factor complex dimensions must be nonnegative")
        if self.a <= 0.0 or self.b <= 0.0:
            raise DomainError("radii must be positive")
        if abs(self.a**2 + self.b**2 - 1.0) > 1e-12:
            raise DomainError("radii must satisfy a^2 + b^2 = 1 within 1e-12")
        if not 1 <= self.m1 <= 2 * self.p + 1:
            raise DomainError(f"m1 must lie in [1, {2 * self.p + 1}]")
        if not 1 <= self.m2 <= 2 * self.q + 1:
            raise DomainError(f"m2 must lie in [1, {2 * self.q + 1}]")

    @property
    def n(self) -> int:
        return self.p + self.q + 1


def clifford_tension_bitension(cfg: ProductSphereConfig):
    """Tension and bitension coefficients along the torus unit normal.

    tension = (a/b) m2 - (b/a) m1 and
    bitension = tension * (m1 + m2 - (b^2/a^2) m1 - (a^2/b^2) m2).
    """
    a, b = cfg.a, cfg.b
    tension = (a / b) * cfg.m2 - (b / a) * cfg.m1
    bitension = tension * (
        cfg.m1 + cfg.m2 - (b * b) / (a * a) * cfg.m1 - (a * a) / (b * b) * cfg.m2
    )
    return tension, bitension


@dataclass(frozen=True)
class CliffordRoot:
    branch: str                 # quadratic branch: 'minus' or 'plus'
    a_sq: float
    b_sq: float
    tension: float
    condition_residual: float   # defect of (b^2/a^2) m1 + (a^2/b^2) m2 = 4 + m1 + m2
    minimal: bool               # tension below the minimality tolerance


def clifford_minus4_solve(m1: int, m2: int,
                          tol: ToleranceConfig = DEFAULT_TOLERANCES) -> List[CliffordRoot]:
    """Radii making the projected product proper-biharmonic.

    Clearing denominators in (b^2/a^2) m1 + (a^2/b^2) m2 = 4 + m1 + m2 with
    t = a^2, b^2 = 1 - t gives (2m1 + 2m2 + 4) t^2 - (3m1 + m2 + 4) t + m1 = 0.
    Both the quadratic and the original rational condition are re-checked on
    every root; roots with vanishing tension are kept but flagged minimal
    (excluded from proper-biharmonicity) rather than dropped.
    """
    if m1 < 1 or m2 < 1:
        raise DomainError("factor dimensions m1, m2 must be at least 1")
    aa = 2 * m1 + 2 * m2 + 4
    bb = 3 * m1 + m2 + 4
    cc = m1
    disc = bb * bb - 4 * aa * cc
    roots: List[CliffordRoot] = []
    if disc < 0:
        return roots
    for branch, sign in (("minus", -1.0), ("plus", 1.0)):
        t = (bb + sign * np.sqrt(disc)) / (2.0 * aa)
        if not 0.0 < t < 1.0:
            continue
        b_sq = 1.0 - t
        residual = abs((b_sq / t) * m1 + (t / b_sq) * m2 - 4.0 - m1 - m2)
        tension = np.sqrt(t / b_sq) * m2 - np.sqrt(b_sq / t) * m1
        roots.append(CliffordRoot(
            branch=branch, a_sq=float(t), b_sq=float(b_sq),
            tension=float(tension), condition_residual=float(residual),
            minimal=bool(abs(tension) <= tol.minimality),
        ))
    return roots


# ---------------------------------------------------------------------------
# Tangent sphere bundle of S^{2p+1}(a) inside S^{4p+3}.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphereBundleVerdict:
    p: int
    a_sq: float
    mean_curvature_coef: float       # H = coef * eta2
    biharmonic_residual: float       # zero only at a = b, the minimal case
    minus4_residual: float
    minimal: bool
    minimal_in_clifford_torus: bool
    proper_biharmonic_in_sphere: bool
    minus4_biharmonic: bool
    projection_proper_biharmonic: bool


def sphere_bundle_analyze(p: int, a_sq: float,
                          tol: ToleranceConfig = DEFAULT_TOLERANCES) -> SphereBundleVerdict:
    """Closed-form residuals for the norm-b tangent sphere bundle.

    The bundle is always minimal inside the ambient Clifford torus; its
    biharmonic residual -1 - 2p(a^2/b^2 + b^2/a^2) + (4p+1) vanishes only at
    the minimal radius a = b, so it is never proper-biharmonic in the
    sphere, and its Hopf projection is never proper-biharmonic either.
    """
    if p < 1:
        raise DomainError("p must be at least 1")
    if not 0.0 < a_sq < 1.0:
        raise DomainError("a^2 must lie in (0, 1)")
    b_sq = 1.0 - a_sq
    ratio = a_sq / b_sq + b_sq / a_sq
    coef = (2.0 * p / (4.0 * p + 1.0)) * (a_sq - b_sq) / a_sq
    bih = -1.0 - 2.0 * p * ratio + (4.0 * p + 1.0)
    minus4 = bih + 4.0
    minimal = abs(coef) <= tol.minimality
    return SphereBundleVerdict(
        p=p,
        a_sq=float(a_sq),
        mean_curvature_coef=float(coef),
        biharmonic_residual=float(bih),
        minus4_residual=float(minus4),
        minimal=minimal,
        minimal_in_clifford_torus=True,
        proper_biharmonic_in_sphere=(abs(bih) <= tol.residual) and not minimal,
        minus4_biharmonic=(abs(minus4) <= tol.residual) and not minimal,
        projection_proper_biharmonic=False,
    )


def sphere_bundle_minus4_roots(p: int):
    """Closed-form radii where the bundle is (-4)-biharmonic."""
    if p < 1:
        raise DomainError("p must be at least 1")
    s = np.sqrt(2.0 * p + 1.0)
    return (
        (2.0 * p + 1.0 - s) / (4.0 * p + 2.0),
        (2.0 * p + 1.0 + s) / (4.0 * p + 2.0),
    )


def locate_sphere_bundle_roots(p: int, grid_points: int = 10_000) -> List[float]:
    """Bracket sign changes of the (-4)-residual on an a^2 grid and refine."""
    def residual(t: float) -> float:
        return 4.0 * p + 4.0 - 2.0 * p * (t / (1.0 - t) + (1.0 - t) / t)

    grid = np.linspace(1e-6, 1.0 - 1e-6, grid_points)
    values = np.array([residual(t) for t in grid])
    roots = []
    for i in range(grid_points - 1):
        if values[i] == 0.0:
            roots.append(float(grid[i]))
        elif values[i] * values[i + 1] < 0.0:
            roots.append(float(brentq(residual, grid[i], grid[i + 1], xtol=1e-15)))
    return roots


def sphere_bundle_frame_trace(p: int, a_sq: float):
    """Trace the second fundamental form over an explicit orthonormal frame.

    Builds a concrete point (x0, y0) and the 4p+1 frame vectors, applies
    B(Z, Z) = -2<X, Y> eta1 - (b^2/a^2)(|X|^2 - (a^2/b^2)|Y|^2) eta2 to each,
    and returns (H_from_trace, H_closed_form) as ambient vectors.  Backs the
    mean-curvature coefficient with an assembly independent of the residual
    algebra.
    """
    if p < 1:
        raise DomainError("p must be at least 1")
    if not 0.0 < a_sq < 1.0:
        raise DomainError("a^2 must lie in (0, 1)")
    a = np.sqrt(a_sq)
    b = np.sqrt(1.0 - a_sq)
    dim = 2 * p + 2

    def pair(x, y):
        return np.concatenate([x, y])

    basis = np.eye(dim)
    x0 = a * basis[0]
    y0 = b * basis[1]
    eta1 = pair(y0, x0)
    eta2 = pair(x0, -(a * a) / (b * b) * y0)

    frame = [pair((a / b) * y0, -(b / a) * x0)]      # normalized y0^H
    for k in range(2, dim):                           # y_k^H and y_k^V, unit
        frame.append(pair(basis[k], np.zeros(dim)))
        frame.append(pair(np.zeros(dim), basis[k]))
    assert len(frame) == 4 * p + 1

    def second_fundamental(z):
        x, y = z[:dim], z[dim:]
        c1 = -2.0 * float(np.dot(x, y))
        c2 = -(b * b) / (a * a) * (float(np.dot(x, x)) - (a * a) / (b * b) * float(np.dot(y, y)))
        return c1 * eta1 + c2 * eta2

    trace = sum(second_fundamental(z) for z in frame)
    h_trace = trace / (4.0 * p + 1.0)
    h_closed = (2.0 * p / (4.0 * p + 1.0)) * (a_sq - (1.0 - a_sq)) / a_sq * eta2
    return h_trace, h_closed


# ---------------------------------------------------------------------------
# Circle products (Lagrangian torus) and the hypersurface predicates.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LagrangianTorusSpec:
    """Radii of S^1(a_1) x ... x S^1(a_{n+1}) inside S^{2n+1}."""

    radii: tuple

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        if r.size < 2:
            raise DomainError("a circle product needs at least two factors")
        if np.any(r <= 0.0):
            raise DomainError("all radii must be positive")
        if abs(float(np.sum(r * r)) - 1.0) > 1e-12:
            raise DomainError("radii must satisfy sum a_k^2 = 1 within 1e-12")
        object.__setattr__(self, "radii", tuple(float(x) for x in r))

    @classmethod
    def from_squares(cls, squares) -> "LagrangianTorusSpec":
        sq = np.asarray(squares, dtype=float)
        if np.any(sq <= 0.0):
            raise DomainError("all squared radii must be positive")
        return cls(radii=tuple(np.sqrt(sq)))

    @property
    def n(self) -> int:
        return len(self.radii) - 1


def zhang_residual(spec: LagrangianTorusSpec,
                   tol: ToleranceConfig = DEFAULT_TOLERANCES):
    """Componentwise defect of the (-4)-system of the circle product.

    r_k = d a_k - 1/a_k^3 - (2/a_k)(n+3)((n+1) a_k^2 - 1), d = sum 1/a_j^2.
    The minimality flag marks the all-equal harmonic configuration
    a_k^2 = 1/(n+1), which solves the system but is excluded.
    """
    a = np.asarray(spec.radii, dtype=float)
    n = spec.n
    d = float(np.sum(1.0 / (a * a)))
    r = d * a - 1.0 / a**3 - (2.0 / a) * (n + 3.0) * ((n + 1.0) * a * a - 1.0)
    minimal = bool(np.all(np.abs(a * a - 1.0 / (n + 1.0)) <= tol.minimality))
    return r, minimal


def torus_extrinsic_oracle(spec: LagrangianTorusSpec, lam: float) -> float:
    """|tau2 - lambda tau| assembled from shape-operator data.

    Uses the diagonal second fundamental form B(X_k, X_k) = -(1/a_k) eta_k + x,
    the eigenvalues A_tau X_k = -((n+1) - 1/a_k^2) X_k, a parallel normal
    tension, and the ambient curvature trace (n+1) tau; independent of the
    componentwise system above.
    """
    a = np.asarray(spec.radii, dtype=float)
    n = spec.n
    mu = (n + 1.0) - 1.0 / (a * a)            # <nabla_{X_k} tau, X_k>
    t = (n + 1.0) * a - 1.0 / a               # tension coefficients on eta_k
    coef = -mu / a + a * float(np.sum(mu)) + ((n + 1.0) - lam) * t
    return float(np.linalg.norm(coef))


def _two_block_gap(u: float, d: float, n: int) -> float:
    # Residual of one block of the system, cleared of the 1/a^3 pole:
    # multiply r_k by a_k^3 and substitute u = a_k^2.
    return d * u * u - 1.0 - 2.0 * (n + 3.0) * u * ((n + 1.0) * u - 1.0)


def zhang_solve_two_block(n: int,
                          tol: ToleranceConfig = DEFAULT_TOLERANCES,
                          grid_points: int = 10_000) -> List[LagrangianTorusSpec]:
    """Solve the circle-product system under a1 distinct, a2 = ... = a_{n+1}.

    Substituting s = (1 - t)/n for the repeated square reduces the system to
    two rational equations in t = a1^2; roots of the first are bracketed on a
    grid and refined, then kept only when the second equation, the full
    componentwise residual, and non-minimality all hold.
    """
    if n < 2:
        raise DomainError("the two-block reduction needs n >= 2")

    def f1(t: float) -> float:
        s = (1.0 - t) / n
        d = 1.0 / t + n / s
        return _two_block_gap(t, d, n)

    def f2(t: float) -> float:
        s = (1.0 - t) / n
        d = 1.0 / t + n / s
        return _two_block_gap(s, d, n)

    grid = np.linspace(1e-6, 1.0 - 1e-6, grid_points)
    values = np.array([f1(t) for t in grid])
    candidates = []
    for i in range(grid_points - 1):
        if values[i] == 0.0:
            candidates.append(float(grid[i]))
        elif values[i] * values[i + 1] < 0.0:
            candidates.append(float(brentq(f1, grid[i], grid[i + 1], xtol=1e-15)))

    specs = []
    seen = []
    for t in candidates:
        if any(abs(t - prev) < 1e-9 for prev in seen):
            continue
        seen.append(t)
        if abs(f2(t)) > 1e-8:
            continue
        s = (1.0 - t) / n
        spec = LagrangianTorusSpec(radii=tuple([np.sqrt(t)] + [np.sqrt(s)] * n))
        r, minimal = zhang_residual(spec, tol)
        if minimal or float(np.linalg.norm(r)) > 1e-10:
            continue
        specs.append(spec)
    specs.sort(key=lambda sp: sp.radii[0])
    return specs


@dataclass(frozen=True)
class HypersurfaceData:
    """Scalar data of a constant-mean-curvature real hypersurface."""

    n: int
    mean_curvature_sq: float
    second_ff_norm_sq: float
    c: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be at least 1")
        if self.mean_curvature_sq < 0.0 or self.second_ff_norm_sq < 0.0:
            raise DomainError("squared norms must be nonnegative")


@dataclass(frozen=True)
class HypersurfaceVerdict:
    proper_biharmonic: bool
    criterion_defect: float          # | |B|^2 - 2c(n+1) |
    scalar_curvature: float          # 4n^2 - 2n - 4 + (2n-1)^2 |H|^2 (c = 1)
    m_bar: int
    tangent_bound: float             # (m+3)/m for tangent J H
    tangent_bound_ok: bool
    normal_bound: float              # 1 for normal J H
    normal_bound_ok: bool
    nonexistence_note: Optional[str]


def hypersurface_predicates(data: HypersurfaceData,
                            m_bar: Optional[int] = None,
                            tol: ToleranceConfig = DEFAULT_TOLERANCES) -> HypersurfaceVerdict:
    """Proper-biharmonicity criterion, scalar curvature, mean-curvature bounds.

    A nonzero-CMC hypersurface is proper-biharmonic exactly when
    |B|^2 = 2c(n+1); nonpositive holomorphic curvature makes that right-hand
    side nonpositive, which rules the case out entirely.
    """
    m = 2 * data.n - 1 if m_bar is None else m_bar
    if m < 1:
        raise DomainError("hypersurface dimension must be positive")
    defect = abs(data.second_ff_norm_sq - 2.0 * data.c * (data.n + 1))
    has_mean_curvature = data.mean_curvature_sq > tol.minimality
    note = None
    if data.c <= 0.0:
        note = (
            "nonpositive holomorphic curvature: |B|^2 = 2c(n+1) <= 0 is "
            "impossible for a non-minimal hypersurface, so no proper-"
            "biharmonic hypersurface exists"
        )
    proper = (
        data.c > 0.0 and has_mean_curvature and defect <= tol.residual
    )
    scalar = (
        4.0 * data.n**2 - 2.0 * data.n - 4.0
        + (2.0 * data.n - 1.0) ** 2 * data.mean_curvature_sq
    )
    tangent_bound = (m + 3.0) / m
    return HypersurfaceVerdict(
        proper_biharmonic=proper,
        criterion_defect=float(defect),
        scalar_curvature=float(scalar),
        m_bar=m,
        tangent_bound=float(tangent_bound),
        tangent_bound_ok=data.mean_curvature_sq <= tangent_bound + tol.residual,
        normal_bound=1.0,
        normal_bound_ok=data.mean_curvature_sq <= 1.0 + tol.residual,
        nonexistence_note=note,
    )
