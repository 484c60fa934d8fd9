"""Pydantic request models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class CodeRequest(BaseModel):
    code: str = Field(..., description="comma-separated O<k><s>/U<k><s> tokens",
                      examples=["O1+,U2+,O3+,U1+,O2+,U3+"])


class BuildRequest(BaseModel):
    family: str = Field(..., description="torus | pretzel | chain")
    p: int | None = None
    n: int = 1
    q: list[int] | None = None
    weights: list[int] | None = None


class ColorableRequest(CodeRequest):
    k: int = Field(..., ge=1)


class WeldedSearchRequest(CodeRequest):
    budget: int = Field(..., ge=0)
    cap: int = Field(..., ge=0, description="crossing cap during the search")


class PresentationModel(BaseModel):
    generators: list[str]
    relators: list[list]
    twist: int | None = None
    amalgam: list[list[str]] | None = None


class TwistSpinRequest(BaseModel):
    presentation: PresentationModel
    m: int
    axis: str | None = None


class ConnectRequest(BaseModel):
    presentations: list[PresentationModel] = Field(..., min_length=1)
    amalgam: list[list[str]] | None = None


class GraphModel(BaseModel):
    vertices: list[str]
    edges: list[list] = Field(..., description="[u, v, weight] triples")


class VerifyRequest(BaseModel):
    presentation: PresentationModel
    target: str = Field(..., description="coxeter | alternating")
    images: dict[str, str]
    graph: GraphModel | None = None
    degree: int | None = None


class VerifyCoxeterRequest(CodeRequest):
    graph: GraphModel
    labels: dict[str, str] = Field(..., description="strand id -> space-separated word")
    require_surjective: bool = True


class VerifyAlternatingRequest(CodeRequest):
    labels: dict[str, str] = Field(..., description="strand id -> cycle notation")
    p: int = Field(..., ge=2)
    degree: int | None = None


class NakanishiRequest(CodeRequest):
    p: int = 2
    twist: int | None = None
    copies: int = Field(1, ge=1)


class TrisectRequest(BaseModel):
    b: int
    c1: int
    c2: int
    c3: int
    euler: int


class BoundsRequest(CodeRequest):
    rank: int | None = None
    euler: int = 0


class VolumeRequest(BaseModel):
    tw: int = Field(..., ge=1)
    genus: int
    assert_hypotheses: bool = False


class BatchRequest(BaseModel):
    codes: list[str]
