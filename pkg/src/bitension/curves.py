"""Curve jets, covariant differentiation, and the Frenet apparatus.

Curves live on the unit sphere of R^{2n+2} and are parametrized by arc
length; every formula downstream assumes that, so non-unit-speed input is
rejected rather than silently reparametrized.  Frames and curvatures are
extracted by Gram-Schmidt on iterated covariant derivatives carried as
truncated Taylor jets, which keeps curvature derivatives analytically exact.
A finite-difference path over sampled positions is kept as an independent
cross-check.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .ambient import as_ambient, complex_dimension, hopf_vector_field, j_apply
from .errors import ClassificationError, DataError, DomainError, StructuralError
from .jets import RJet, VJet
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig

JET_ORDER = 5  # derivatives carried per jet: gamma ... gamma^(5)


@dataclass
class CurveJet:
    """Arc-length curve evaluation: gamma and its first five derivatives."""

    s: float
    derivs: list  # 6 ambient vectors

    def __post_init__(self):
        if len(self.derivs) != JET_ORDER + 1:
            raise StructuralError(f"curve jet needs {JET_ORDER + 1} derivative vectors")
        self.derivs = [as_ambient(d) for d in self.derivs]
        sizes = {d.size for d in self.derivs}
        if len(sizes) != 1:
            raise StructuralError("curve jet derivatives have mixed dimensions")

    @property
    def position(self) -> np.ndarray:
        return self.derivs[0]

    @property
    def velocity(self) -> np.ndarray:
        return self.derivs[1]

    @property
    def n(self) -> int:
        return complex_dimension(self.derivs[0])

    def validate(self, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> None:
        """Check the on-sphere, unit-speed, arc-length invariants."""
        g, g1 = self.derivs[0], self.derivs[1]
        if not all(np.all(np.isfinite(d)) for d in self.derivs):
            raise DataError("curve jet has non-finite derivatives")
        r = abs(float(np.linalg.norm(g)) - 1.0)
        if r > tol.unit_norm:
            raise DomainError(f"curve leaves the unit sphere by {r:.3e}", defect=r)
        v = abs(float(np.linalg.norm(g1)) - 1.0)
        if v > tol.unit_norm:
            raise DomainError(f"curve is not unit speed: |gamma'| - 1 = {v:.3e}", defect=v)
        o = abs(float(np.dot(g, g1)))
        if o > tol.orthogonality:
            raise DomainError(f"<gamma, gamma'> = {o:.3e} is not zero", defect=o)

    def to_vjet(self) -> VJet:
        return VJet.from_derivatives(self.derivs)


@dataclass
class CurveFamily:
    """A named curve with an evaluator producing a CurveJet at any s.

    Evaluators must be stateless; concurrent evaluation at distinct s is part
    of the contract.
    """

    label: str
    params: dict
    n: int
    jet_fn: Callable[[float], "CurveJet"]
    constant_vectors: Optional[tuple] = None  # (c1, c2, c3, c4) when trig-built
    frequencies: Optional[tuple] = None

    def jet(self, s: float) -> CurveJet:
        return self.jet_fn(float(s))

    def position(self, s: float) -> np.ndarray:
        return self.jet(s).position


def trig_curve_family(
    label: str,
    params: dict,
    n: int,
    terms: Sequence[tuple],
) -> CurveFamily:
    """Family gamma(s) = sum_m amp_m * cos(freq_m s + phase_m) * base_m.

    All derivatives are exact: d/ds cos(w s + p) = w cos(w s + p + pi/2).
    """
    prepared = []
    for base, amp, freq, phase in terms:
        prepared.append((as_ambient(base), float(amp), float(freq), float(phase)))
    dim = prepared[0][0].size
    if any(b.size != dim for b, _, _, _ in prepared):
        raise StructuralError("trig curve terms have mixed dimensions")

    def jet_fn(s: float) -> CurveJet:
        derivs = []
        for k in range(JET_ORDER + 1):
            acc = np.zeros(dim)
            for base, amp, freq, phase in prepared:
                acc += amp * freq**k * np.cos(freq * s + phase + k * np.pi / 2.0) * base
            derivs.append(acc)
        return CurveJet(s=s, derivs=derivs)

    # Recover the cos/sin constant-vector form gamma = cos(A s) c1 + sin(A s) c2 + ...
    # when the family uses exactly two distinct nonzero frequencies.
    freqs = sorted({freq for _, _, freq, _ in prepared if freq != 0.0}, reverse=True)
    cvecs = None
    if len(freqs) == 2:
        cs = [np.zeros(dim) for _ in range(4)]
        ok = True
        for base, amp, freq, phase in prepared:
            slot = 0 if freq == freqs[0] else 2
            if np.isclose(phase, 0.0):
                cs[slot] += amp * base
            elif np.isclose(phase, -np.pi / 2.0):
                cs[slot + 1] += amp * base  # amp*sin(ws)
            else:
                ok = False
        if ok:
            cvecs = tuple(cs)

    return CurveFamily(
        label=label,
        params=params,
        n=n,
        jet_fn=jet_fn,
        constant_vectors=cvecs,
        frequencies=tuple(freqs) if len(freqs) == 2 else None,
    )


# 5-point central stencils for derivatives 1..4, 7-point for the 5th.
_STENCILS = {
    1: (2, np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0, 1),
    2: (2, np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0, 2),
    3: (2, np.array([-1.0, 2.0, 0.0, -2.0, 1.0]) / 2.0, 3),
    4: (2, np.array([1.0, -4.0, 6.0, -4.0, 1.0]), 4),
    5: (3, np.array([-1.0, 4.0, -5.0, 0.0, 5.0, -4.0, 1.0]) / 2.0, 5),
}


def sampled_curve_family(
    label: str,
    position_fn: Callable[[float], np.ndarray],
    h: float,
    n: Optional[int] = None,
    params: Optional[dict] = None,
) -> CurveFamily:
    """Family whose jets come from central differences of positions only.

    The error model is transparent: derivative k carries O(h^2)
    truncation plus O(eps/h^k) roundoff.  Used as the independent oracle
    against analytic families and for user-supplied position data.
    """
    if not h > 0:
        raise DomainError("finite-difference step h must be positive")

    def jet_fn(s: float) -> CurveJet:
        offsets = range(-3, 4)
        pts = [as_ambient(position_fn(s + k * h)) for k in offsets]
        derivs = [pts[3]]
        for order in range(1, JET_ORDER + 1):
            half, weights, power = _STENCILS[order]
            window = pts[3 - half : 3 + half + 1]
            acc = sum(w * p for w, p in zip(weights, window)) / h**power
            derivs.append(acc)
        return CurveJet(s=s, derivs=derivs)

    probe = as_ambient(position_fn(0.0))
    return CurveFamily(
        label=label,
        params=dict(params or {}, h=h),
        n=n if n is not None else complex_dimension(probe),
        jet_fn=jet_fn,
    )


def sphere_covariant_derivative(jet: CurveJet, field_value, field_derivative,
                                tol: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """Levi-Civita derivative along the curve of a sphere-tangent field.

    For the unit sphere the Gauss formula collapses to
    ``W' + <W, gamma'> gamma``; the output is again sphere-tangent.
    """
    w = as_ambient(field_value)
    dw = as_ambient(field_derivative)
    g, g1 = jet.position, jet.velocity
    if w.size != g.size or dw.size != g.size:
        raise StructuralError("field dimension does not match the curve")
    radial = float(np.dot(w, g))
    if abs(radial) > tol.orthogonality * max(1.0, float(np.linalg.norm(w))):
        raise DomainError(
            f"field is not sphere-tangent: <W, gamma> = {radial:.3e}", defect=radial
        )
    return dw + float(np.dot(w, g1)) * g


def _covariant_jet(w: VJet, gamma: VJet, gamma1: VJet) -> VJet:
    # D W = W' + <W, gamma'> gamma, all as jets.
    return w.derivative() + gamma.scale(w.dot(gamma1))


@dataclass
class FrenetApparatus:
    """Frames, curvatures (with derivatives), and complex torsions at one s.

    ``frames`` holds ambient representatives E_1..E_d; apparatuses built from
    pure curvature data (downstairs solver output) carry ``frames=None``.
    Torsions are keyed by 1-based index pairs (i, j) with i < j.
    """

    d: int
    curvatures: tuple            # (k1, ..., k_{d-1})
    torsions: dict
    frames: Optional[list] = None
    k1_prime: float = 0.0
    k1_second: float = 0.0
    k2_prime: float = 0.0
    point: Optional[np.ndarray] = None

    def curvature(self, i: int) -> float:
        """k_i, or 0.0 past the osculating order."""
        if i < 1:
            raise DomainError("curvature index starts at 1")
        if i <= len(self.curvatures):
            return float(self.curvatures[i - 1])
        return 0.0

    def torsion(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        if i > j:
            return -self.torsion(j, i)
        return float(self.torsions.get((i, j), 0.0))

    def torsion_vector(self) -> list:
        """Lexicographic [t12, t13, t14, t23, t24, t34] padded with zeros."""
        return [self.torsion(i, j) for i in range(1, 4) for j in range(i + 1, 5)]


def frenet_apparatus(
    family: CurveFamily,
    s: float,
    max_order: Optional[int] = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> FrenetApparatus:
    """Gram-Schmidt the iterated covariant derivatives of gamma' at s.

    Truncates at the first curvature below ``tol.rank_truncation``; that
    index fixes the osculating order d.  Curvature derivatives come from the
    jet coefficients, so for analytic families they are exact.
    """
    jet = family.jet(s)
    jet.validate(tol)
    n = jet.n
    # A sphere curve in S^{2n+1} admits at most 2n+1 orthonormal frames.
    if max_order is None:
        max_order = min(2 * n + 1, JET_ORDER)
    if max_order > 2 * n + 1:
        raise DomainError(f"max_order {max_order} exceeds 2n+1 = {2 * n + 1}")
    max_order = min(max_order, JET_ORDER)

    gamma = jet.to_vjet()
    gamma1 = gamma.derivative()
    frame_jets = [gamma1]
    curvature_jets = []

    while len(frame_jets) < max_order:
        w = _covariant_jet(frame_jets[-1], gamma, gamma1)
        v = w
        for e in frame_jets:
            v = v - e.scale(v.dot(e))
        ksq = v.norm_sq()
        if ksq.value <= tol.rank_truncation**2:
            break
        kjet = ksq.sqrt()
        curvature_jets.append(kjet)
        frame_jets.append(v.scale(RJet.constant(1.0, v.order) / kjet))

    d = len(frame_jets)
    frames = [fj.value for fj in frame_jets]
    for i, f in enumerate(frames):
        for g in frames[:i]:
            if abs(float(np.dot(f, g))) > 1e-8:
                raise DataError("Frenet frames lost orthogonality")

    jf = [j_apply(f) for f in frames]
    torsions = {}
    for i in range(d):
        for j in range(i + 1, d):
            torsions[(i + 1, j + 1)] = float(np.dot(frames[i], jf[j]))

    def deriv(jet_idx: int, order: int) -> float:
        if jet_idx < len(curvature_jets) and curvature_jets[jet_idx].order >= order:
            return curvature_jets[jet_idx].derivative_value(order)
        return 0.0

    return FrenetApparatus(
        d=d,
        curvatures=tuple(k.value for k in curvature_jets),
        torsions=torsions,
        frames=frames,
        k1_prime=deriv(0, 1),
        k1_second=deriv(0, 2),
        k2_prime=deriv(1, 1),
        point=jet.position,
    )


def curvature_derivatives_fd(
    family: CurveFamily,
    s: float,
    h: Optional[float] = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> dict:
    """k1', k1'', k2' by 5-point central differences of the apparatus.

    Independent of the jet coefficients; noise floor is about eps/h^2 for
    the second derivative, which is why this path is the cross-check and
    not the primary source.
    """
    h = tol.fd_step if h is None else h
    shifts = [-2, -1, 0, 1, 2]
    apps = [frenet_apparatus(family, s + k * h, tol=tol) for k in shifts]
    k1 = np.array([a.curvature(1) for a in apps])
    k2 = np.array([a.curvature(2) for a in apps])
    return {
        "k1_prime": float(np.dot([1, -8, 0, 8, -1], k1) / (12 * h)),
        "k1_second": float(np.dot([-1, 16, -30, 16, -1], k1) / (12 * h * h)),
        "k2_prime": float(np.dot([1, -8, 0, 8, -1], k2) / (12 * h)),
    }


def downstairs_apparatus(
    apparatus: FrenetApparatus,
    p=None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> FrenetApparatus:
    """Reinterpret a horizontal-lift apparatus as the projected-curve apparatus.

    Horizontal frame members are lifts and pass through with their
    curvatures and torsions; a trailing frame member parallel to the Hopf
    field is stripped, dropping the last curvature (the circle case with
    unit complex torsion).  Mixed members raise ClassificationError.
    """
    if apparatus.frames is None:
        raise StructuralError("downstairs reinterpretation needs ambient frames")
    point = as_ambient(p) if p is not None else apparatus.point
    if point is None:
        raise StructuralError("no base point available for the Hopf field")
    xi = hopf_vector_field(point, tol)

    e1_defect = abs(float(np.dot(apparatus.frames[0], xi)))
    if e1_defect > tol.classification:
        raise DomainError(
            f"E1 is not horizontal: |<E1, xi>| = {e1_defect:.3e}", defect=e1_defect
        )

    vertical = []
    for idx, f in enumerate(apparatus.frames):
        align = abs(float(np.dot(f, xi)))
        if align > 1.0 - tol.classification:
            vertical.append(idx)
        elif align > tol.classification:
            raise ClassificationError(
                f"frame E{idx + 1} is neither horizontal nor vertical "
                f"(|<E, xi>| = {align:.3e})"
            )

    if not vertical:
        return FrenetApparatus(
            d=apparatus.d,
            curvatures=apparatus.curvatures,
            torsions=dict(apparatus.torsions),
            frames=[f.copy() for f in apparatus.frames],
            k1_prime=apparatus.k1_prime,
            k1_second=apparatus.k1_second,
            k2_prime=apparatus.k2_prime,
            point=point.copy(),
        )

    if vertical != [apparatus.d - 1]:
        raise ClassificationError(
            "only a single trailing vertical frame member is supported"
        )

    d_bar = apparatus.d - 1
    frames = [f.copy() for f in apparatus.frames[:d_bar]]
    torsions = {
        (i, j): v for (i, j), v in apparatus.torsions.items() if j <= d_bar
    }
    return FrenetApparatus(
        d=d_bar,
        curvatures=apparatus.curvatures[: d_bar - 1],
        torsions=torsions,
        frames=frames,
        k1_prime=apparatus.k1_prime if d_bar >= 2 else 0.0,
        k1_second=apparatus.k1_second if d_bar >= 2 else 0.0,
        k2_prime=apparatus.k2_prime if d_bar >= 3 else 0.0,
        point=point.copy(),
    )
