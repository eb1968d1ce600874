"""Request/response models of the compute service.

Inputs arrive as raw file contents (the CLI reads files client-side and
ships text); grades in responses are numbers when they have exact numeric
values, otherwise strings, and a null death encodes an infinite interval.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

GradeValue = int | float | str


class ErrorDetail(BaseModel):
    message: str
    line: int | None = None


class BettiRequest(BaseModel):
    content: str
    kind: Literal["auto", "complex", "graph"] = "auto"
    characteristic: int = Field(default=2, ge=2)
    max_dim: int | None = Field(default=None, ge=0)


class BettiResponse(BaseModel):
    kind: Literal["complex", "graph"]
    betti: list[int]


class IntervalModel(BaseModel):
    dim: int
    birth: GradeValue
    death: GradeValue | None = None


class BarcodeRequest(BaseModel):
    edge_list: str | None = None
    weighted_graph: str | None = None
    poset: str | None = None
    direction: Literal["ascending", "descending"] = "ascending"
    characteristic: int = Field(default=2, ge=2)
    max_dim: int = Field(default=1, ge=0)
    include_zero_length: bool = False
    include_svg: bool = False


class BarcodeResponse(BaseModel):
    intervals: list[IntervalModel]
    grades: list[GradeValue]
    svg: str | None = None


class RankInvariantRequest(BaseModel):
    weighted_graph: str
    poset: str | None = None
    direction: Literal["ascending", "descending"] = "ascending"
    characteristic: int = Field(default=2, ge=2)
    max_dim: int = Field(default=1, ge=0)
    pairs: list[tuple[str, str]] | None = None


class RankEntryModel(BaseModel):
    dim: int
    source: str
    target: str
    rank: int


class RankInvariantResponse(BaseModel):
    entries: list[RankEntryModel]


class CompareRequest(BaseModel):
    edge_list: str
    epsilons: list[str] | None = None
    thresholds: list[str] | None = None
    characteristic: int = Field(default=2, ge=2)
    max_dim: int = Field(default=1, ge=0)


class CompareResponse(BaseModel):
    weight_intervals: list[IntervalModel]
    metric_intervals: list[IntervalModel]
    stats: dict
    warnings: list[str]
    weight_svg: str
    metric_svg: str


class VerifyRequest(BaseModel):
    suites: list[str] = Field(default_factory=lambda: ["all"])
    trials: int = Field(default=50, ge=0)
    seed: int = 0
    poset: str | None = None  # named spec, e.g. "chain3" or "diamond"
    poset_text: str | None = None  # poset file content
    complex_spec: str | None = None  # named spec, e.g. "triangle" or "empty"
    complex_text: str | None = None  # complex file content


class SuiteResultModel(BaseModel):
    name: str
    trials: int
    passes: int
    ok: bool
    failures: list[str]


class VerifyResponse(BaseModel):
    ok: bool
    suites: list[SuiteResultModel]
