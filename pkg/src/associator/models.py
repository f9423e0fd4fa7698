from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from src.relations.generators import RELATION_VERSION


class LinearSpaceRecord(BaseModel):
    """An affine solution set written out with exact rationals as strings."""

    unknowns: list[str] = Field(default_factory=list)
    equations: int = 0
    rank: int = 0
    consistent: bool = True
    dimension: int = 0
    particular: list[str] = Field(default_factory=list)
    kernel: list[list[str]] = Field(default_factory=list)
    constraints: list[str] = Field(default_factory=list)


class ResidualReport(BaseModel):
    version: str = RELATION_VERSION
    equation: str
    max_degree: int
    terms: list[str] = Field(default_factory=list, description="'coef | diagram' lines grouped by degree")
    vanishes: bool = True


class Degree2Report(BaseModel):
    version: str = RELATION_VERSION
    r: str = "exp(t12/2)"

    degree1: LinearSpaceRecord = Field(default_factory=LinearSpaceRecord)
    degree1_admits_zero: bool = False

    basis_labels: list[str] = Field(default_factory=list, description="A(up_3) degree-2 basis, in unknown order")
    degree2: LinearSpaceRecord = Field(default_factory=LinearSpaceRecord)

    family_parameters: list[str] = Field(default_factory=list)
    family_base: list[str] = Field(default_factory=list)
    family_directions: dict[str, list[str]] = Field(default_factory=dict)
    displayed_basis: dict[str, str] = Field(default_factory=dict)
    displayed_constraints: list[str] = Field(default_factory=list)

    matches_displayed_constraint: bool = False
    directions_in_kernel: bool = False
    phi_star_in_family: bool = False
    family_residual_vanishes: bool = False

    status: Literal["PASS", "FAIL"] = "FAIL"


class PropertyResult(BaseModel):
    name: str
    statement: str
    status: Literal["holds", "holds_on_subfamily", "fails"] = "fails"
    constraints: list[str] = Field(default_factory=list)
    residual: list[str] = Field(default_factory=list)


class PropertiesReport(BaseModel):
    version: str = RELATION_VERSION
    max_degree: int = 2
    parameters: list[str] = Field(default_factory=list)
    results: list[PropertyResult] = Field(default_factory=list)
    status: Literal["PASS", "FAIL"] = "FAIL"


class IdempotentStep(BaseModel):
    degree: int
    unknowns: int
    forced: list[str] = Field(default_factory=list)
    forced_zero: bool = True


class IdempotentReport(BaseModel):
    version: str = RELATION_VERSION
    strands: int = 1
    max_degree: int = 0
    hypothesis_holds: bool = True
    failure_degree: int | None = None
    steps: list[IdempotentStep] = Field(default_factory=list)
    is_one: bool = False


class CertificateReport(BaseModel):
    version: str = RELATION_VERSION
    skeleton: str = "associator_tetrahedron"
    steps: list[str] = Field(default_factory=list)

    constant: list[str] = Field(default_factory=list)
    parameters: list[str] = Field(default_factory=list)
    images: dict[str, list[str]] = Field(default_factory=dict)
    display_constant: list[str] = Field(default_factory=list)
    display_images: dict[str, list[str]] = Field(default_factory=dict)
    x: list[str] = Field(default_factory=list, description="the diagram combination fixed by the constant term")
    matches_display: dict[str, bool] = Field(default_factory=dict)
    basis_change: dict[str, str] = Field(default_factory=dict, description="displayed terms read in another basis, with the combination they stand for")

    constant_nonzero: bool = False
    meets_zero: bool = True
    system: LinearSpaceRecord = Field(default_factory=LinearSpaceRecord)

    dumbbell_dim: int | None = None
    dumbbell_meets_zero: bool | None = None

    status: Literal["PASS", "FAIL"] = "FAIL"
