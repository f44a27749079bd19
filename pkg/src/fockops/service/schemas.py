"""Pydantic request/response models for the service and the CLI client.

Complex numbers travel as two-element ``[re, im]`` arrays; matrices are
row-major nested lists of those.  Every response carries a ``schema`` field
so consumers can detect format changes.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

Complex2 = tuple[float, float]


class ResponseBase(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    schema_version: str = Field(default="1", serialization_alias="schema")


class AffineMapModel(BaseModel):
    """Gamma(z) = linear @ z + shift, row-major complex entries."""

    linear: list[list[Complex2]]
    shift: list[Complex2]


class PolyTermModel(BaseModel):
    exponents: list[int]
    coef: Complex2


class SymbolModel(BaseModel):
    """Tagged multiplier: zero, constant, alpha*K_center, or a polynomial."""

    kind: Literal["zero", "constant", "kernel", "poly"]
    value: Optional[Complex2] = None
    alpha: Optional[Complex2] = None
    center: Optional[list[Complex2]] = None
    terms: Optional[list[PolyTermModel]] = None


class MomentsRequest(BaseModel):
    weight: str = "linear"
    coeffs: Optional[list[float]] = None
    rmax: int = Field(default=64, ge=0)
    tol: float = Field(default=1e-12, gt=0)


class MomentsResponse(ResponseBase):
    weight: str
    r_max: int
    c: list[float]
    err: list[float]


class KernelRequest(BaseModel):
    weight: str = "linear"
    coeffs: Optional[list[float]] = None
    n: int = Field(default=1, ge=1)
    p: list[Complex2]
    z: list[Complex2]
    rmax: int = Field(default=64, ge=0)
    tol: float = Field(default=1e-12, gt=0)
    tail_tol: float = Field(default=1e-12, gt=0)
    max_terms: int = Field(default=48, ge=1)


class KernelResponse(ResponseBase):
    value: Complex2
    tail_bound: float


class MatrixRequest(BaseModel):
    weight: str = "linear"
    coeffs: Optional[list[float]] = None
    n: int = Field(default=1, ge=1)
    N: int = Field(default=8, ge=0)
    gamma: AffineMapModel
    u: Optional[SymbolModel] = None
    rmax: Optional[int] = Field(default=None, ge=0)
    tol: float = Field(default=1e-12, gt=0)


class MatrixResponse(ResponseBase):
    n: int
    N: int
    guard: int
    index: list[list[int]]
    matrix: list[list[Complex2]]


class ConditionModel(BaseModel):
    name: str
    passed: bool
    residual: float
    tolerance: float
    required: bool


class VerdictModel(ResponseBase):
    theorem: str
    satisfied: bool
    necessary_only: bool
    conditions_pass: bool
    conditions: list[ConditionModel]
    seed: Optional[int] = None


class CheckRequest(BaseModel):
    theorem: Literal["adjoint-pair", "self-adjoint", "coisometry"]
    weight: str = "linear"
    coeffs: Optional[list[float]] = None
    n: int = Field(default=1, ge=1)
    gamma: AffineMapModel
    u: Optional[SymbolModel] = None
    gamma2: Optional[AffineMapModel] = None
    u2: Optional[SymbolModel] = None
    tol: Optional[float] = Field(default=None, gt=0)
    samples: int = Field(default=64, ge=1)
    seed: int = 0
    N: int = Field(default=8, ge=0)
    rmax: int = Field(default=64, ge=0)
    max_terms: int = Field(default=48, ge=1)


class VerifyRequest(BaseModel):
    suite: Literal["default", "kernel", "operators"] = "default"
    trials: int = Field(default=200, ge=1)
    seed: int = 20240


class ReportModel(BaseModel):
    name: str
    max_residual: float
    points_tested: int
    seed: int
    threshold: float
    passed: bool
    error: Optional[str] = None


class VerifyResponse(ResponseBase):
    suite: str
    passed: bool
    reports: list[ReportModel]


class NonHermitianReport(BaseModel):
    c_inv_d: list[Complex2]
    c_adj_inv_d: list[Complex2]
    ip_c_inv: Complex2
    ip_c_adj_inv: Complex2
    norm_c_sq: float
    series_residual: float
    verdict: VerdictModel
    passed: bool


class ProjectionReport(BaseModel):
    verdict: VerdictModel
    linear_norm: float
    self_adjoint_defect: float
    passed: bool


class DemoResponse(ResponseBase):
    passed: bool
    projection: ProjectionReport
    nonhermitian: NonHermitianReport


class HealthResponse(ResponseBase):
    status: str = "ok"


class WeightsResponse(ResponseBase):
    weights: list[str]
