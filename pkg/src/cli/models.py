from __future__ import annotations

from pydantic import BaseModel, Field

from src.relations.generators import RELATION_VERSION


class DimsRow(BaseModel):
    degree: int
    diagrams: int
    relations: int
    dimension: int
    randomized_dimension: int | None = None


class DimsReport(BaseModel):
    version: str = RELATION_VERSION
    skeleton: str
    rows: list[DimsRow] = Field(default_factory=list)
    consistent: bool = True


class EnumerateReport(BaseModel):
    version: str = RELATION_VERSION
    skeleton: str
    degree: int
    count: int = 0
    diagrams: list[str] = Field(default_factory=list)
