"""Pydantic request/response models for the HTTP service and CLI client."""

import math
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

FamilyName = Literal[
    "tau12-pm1", "tau12-zero-circle", "tau12-zero-helix", "great-circle"
]


class CliffordSolveRequest(BaseModel):
    m1: int = Field(ge=1, description="dimension of the first minimal factor")
    m2: int = Field(ge=1, description="dimension of the second minimal factor")
    tol: Optional[float] = Field(default=None, gt=0)


class ZhangSolveRequest(BaseModel):
    n: int = Field(ge=2, description="complex dimension of the projective target")
    tol: Optional[float] = Field(default=None, gt=0)


class HelixSolveRequest(BaseModel):
    alpha0: float
    branch: Literal["plus", "minus"] = "plus"
    tol: Optional[float] = Field(default=None, gt=0)


class SphereBundleSolveRequest(BaseModel):
    p: int = Field(ge=1)
    a_sq: Optional[float] = Field(
        default=None, description="analyze one radius; omit to locate roots"
    )
    tol: Optional[float] = Field(default=None, gt=0)


class CurveVerifyRequest(BaseModel):
    family: FamilyName
    n: Optional[int] = Field(default=None, ge=1)
    k1: Optional[float] = None
    samples: int = Field(default=100, ge=2)
    s_max: float = Field(default=2.0 * math.pi, gt=0)
    tol: Optional[float] = Field(default=None, gt=0)


class TorusVerifyRequest(BaseModel):
    radii_sq: List[float] = Field(min_length=2)
    lam: float = -4.0
    tol: Optional[float] = Field(default=None, gt=0)


class HypersurfaceVerifyRequest(BaseModel):
    n: int = Field(ge=1)
    mean_curvature_sq: float = Field(ge=0)
    second_ff_norm_sq: float = Field(ge=0)
    c: float = 1.0
    m_bar: Optional[int] = Field(default=None, ge=1)
    tol: Optional[float] = Field(default=None, gt=0)


class HelixClassifyRequest(BaseModel):
    k1: float = Field(gt=0)
    k2: float = Field(gt=0)
    k3: float = Field(gt=0)
    torsions: List[float] = Field(
        min_length=6, max_length=6,
        description="lexicographic t12, t13, t14, t23, t24, t34",
    )
    tol: Optional[float] = Field(default=None, gt=0)


class CurveSampleRequest(BaseModel):
    family: FamilyName
    n: Optional[int] = Field(default=None, ge=1)
    k1: Optional[float] = None
    ds: float = Field(default=0.01, gt=0)
    count: int = Field(default=100, ge=1)


class LabeledValue(BaseModel):
    label: str
    value: float


class Report(BaseModel):
    """Response document; canonical serialization is done by the service."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(alias="schema")
    command: str
    inputs: dict
    residuals: dict
    roots: List[LabeledValue]
    verdict: str
    class_label: Optional[str] = None
    checks: dict = Field(default_factory=dict)
    tolerances: dict
    warnings: List[str]
