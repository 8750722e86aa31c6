"""Tolerance configuration threaded through every verdict.

A single immutable record so that every reported verdict can cite the
thresholds it used.  ``residual`` is the verdict tolerance the CLI's
``--tol`` flag overrides; the remaining fields are numerical knobs with
their own defaults.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ToleranceConfig:
    unit_norm: float = 1e-10        # |p| = 1 checks
    orthogonality: float = 1e-10    # inner-product-zero checks
    residual: float = 1e-9          # verdict threshold on residual norms
    rank_truncation: float = 1e-7   # curvature below this cuts the osculating order
    fd_step: float = 1e-4           # step for finite-difference cross-checks
    classification: float = 1e-6    # torsion-pattern and vertical/horizontal splits
    minimality: float = 1e-9        # |tension| below this counts as minimal

    def with_residual(self, tol: float) -> "ToleranceConfig":
        if not tol > 0:
            raise ValueError("tolerance must be positive")
        return replace(self, residual=tol)

    def as_dict(self) -> dict:
        return {
            "unit_norm": self.unit_norm,
            "orthogonality": self.orthogonality,
            "residual": self.residual,
            "rank_truncation": self.rank_truncation,
            "fd_step": self.fd_step,
            "classification": self.classification,
            "minimality": self.minimality,
        }


DEFAULT_TOLERANCES = ToleranceConfig()
