"""Request and response models for the HTTP service."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field, model_validator

from ..experiments import ExperimentSpec  # noqa: F401  (re-exported for clients)


class SpacePayload(BaseModel):
    """A finite metric space: either an explicit symmetric matrix or a
    weighted edge list whose shortest-path metric is taken."""

    labels: list[str] | None = None
    matrix: list[list[float]] | None = None
    edges: list[tuple[int, int, float]] | None = None

    @model_validator(mode="after")
    def _one_of(self):
        if (self.matrix is None) == (self.edges is None):
            raise ValueError("provide exactly one of matrix or edges")
        return self


class OrderedSpacePayload(BaseModel):
    space: SpacePayload
    order: list[str] | None = None  # labels in increasing order; None = label order


class ValidateResponse(BaseModel):
    valid: bool
    violations: list[dict]


class SpaceResponse(BaseModel):
    labels: list[str]
    matrix: list[list[float]]
    order: list[str] | None = None


class TourRequest(BaseModel):
    space: SpacePayload
    points: list[str]
    cyclic: bool = False


class TourResponse(BaseModel):
    length: float
    sequence: list[str]


class ORRequest(BaseModel):
    space: SpacePayload
    order: list[str] | None = None
    k: int = Field(ge=1)
    mode: str = "exact"
    cyclic: bool = False
    profile: bool = False  # return every k' <= k
    budget: int | None = None
    samples: int | None = None
    seed: int = 0


class ORResponse(BaseModel):
    reports: list[dict]


class BestOrderRequest(BaseModel):
    space: SpacePayload
    k: int = Field(ge=1)
    seed: int = 0


class BestOrderResponse(BaseModel):
    value: float
    mode: str
    orders: list[list[str]]


class BreakpointRequest(BaseModel):
    space: SpacePayload
    order: list[str] | None = None
    max_s: int | None = None


class SnakeMetricsRequest(BaseModel):
    space: SpacePayload
    order: list[str] | None = None
    points: list[str]


class SnakeFindRequest(BaseModel):
    space: SpacePayload
    order: list[str] | None = None
    s: int = Field(ge=2)
    seed: int = 0


class SnakeBoundRequest(BaseModel):
    s: int = Field(ge=2)
    a: float
    b: float


class GenRequest(BaseModel):
    kind: str
    seed: int = 0
    params: dict[str, Any] = Field(default_factory=dict)


class WindowRequest(BaseModel):
    d: int = 1
    levels: int = 5
    span: int = 16
    dot: bool = False


class WindowResponse(BaseModel):
    d: int
    tiles: list[list]
    n: int
    order: list[str]
    dot: str | None = None


class AuditRequest(BaseModel):
    d: int = 1
    levels: int = 5
    span: int = 16
    samples: int = 100
    size: int = 10
    seed: int = 0


class TilePayload(BaseModel):
    k: int
    a: list[int]


class TilePathRequest(BaseModel):
    t1: TilePayload
    t2: TilePayload


class ExperimentRunRequest(BaseModel):
    spec: ExperimentSpec
    out_dir: str


class ReproduceRequest(BaseModel):
    seed: int = 0
