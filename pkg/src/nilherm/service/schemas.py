"""Request/response models for the HTTP service (shared by the CLI)."""

from __future__ import annotations

from pydantic import BaseModel, Field


class SignatureModel(BaseModel):
    w1: float
    w2: float
    w3: float
    w4: float
    vanishing: list[bool]
    label: str
    indeterminate: list[int] = Field(default_factory=list)


class PointModel(BaseModel):
    """A resolved moduli point: homogeneous coordinates and 2-form.

    ``cp3`` holds four [re, im] pairs; ``omega`` the 15 degree-2
    coefficients in ascending-bitmask order.
    """

    cp3: list[list[float]]
    omega: list[float]


class ClassifyRequest(BaseModel):
    algebra: str = "iwasawa"
    algebra_spec: dict | None = None
    point: str
    tol: float = 1e-9
    nonvanish_floor: float = 1e-6
    seed: int = 0


class ClassifyResponse(BaseModel):
    algebra: str
    point: PointModel
    signature: SignatureModel


class ScanRequest(BaseModel):
    algebra: str = "iwasawa"
    algebra_spec: dict | None = None
    locus: str = "cp3:uniform"
    n: int = Field(default=100, ge=1, le=1_000_000)
    seed: int = 0
    tol: float = 1e-9
    nonvanish_floor: float = 1e-6


class ScanRow(BaseModel):
    point_id: int
    point: PointModel
    signature: SignatureModel


class ScanResponse(BaseModel):
    algebra: str
    locus: str
    seed: int
    tol: float
    nonvanish_floor: float
    n_requested: int
    rows: list[ScanRow]
    min_norms: dict[str, float]


class VerifyRequest(BaseModel):
    suite: str
    seed: int = 0
    tol: float = 1e-9
    nonvanish_floor: float = 1e-6
    counts: dict[str, int] | None = None


class AssertionModel(BaseModel):
    claim: str
    ref: str = ""
    n_samples: int = 0
    passed: bool = Field(alias="pass")
    witnesses: list[dict] = Field(default_factory=list)
    min_norms: dict[str, float] = Field(default_factory=dict)
    indeterminate: int = 0

    model_config = {"populate_by_name": True}


class VerifyResponse(BaseModel):
    suite: str
    seed: int
    tolerances: dict[str, float]
    passed: bool = Field(alias="pass")
    n_samples: int
    indeterminate: int
    assertions: list[AssertionModel]
    info: list[str] = Field(default_factory=list)
    summary: str = ""

    model_config = {"populate_by_name": True}


class CohomologyRequest(BaseModel):
    algebra: str = "iwasawa"
    algebra_spec: dict | None = None


class CohomologyResponse(BaseModel):
    algebra: str
    betti: list[int]
    step: int | None
    nilpotent: bool
    kernel_basis: list[list[float]]
    image_basis: list[list[float]]


class CosymplecticRequest(BaseModel):
    algebra: str = "iwasawa"
    algebra_spec: dict | None = None
    random_gram: bool = False
    seed: int = 0


class CosymplecticResponse(BaseModel):
    algebra: str
    omega: list[float]
    omega_original_frame: list[float]
    w4: float
    gram: list[list[float]] | None


class ErrorModel(BaseModel):
    error: str
    code: str
