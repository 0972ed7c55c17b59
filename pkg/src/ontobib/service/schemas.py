"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class NodeOut(BaseModel):
    id: str
    label: str
    kind: str
    depth: int
    ring: int


class ArcOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    source: str = Field(alias="from")
    target: str = Field(alias="to")
    kind: str
    provenance: str


class MetaQueryOut(BaseModel):
    provider: str
    url: str
    keywords: list[str]


class ArticleSummary(BaseModel):
    id: str
    title: str
    year: int | None = None
    context: str = ""
    authors: list[str] = []


class ContextBlockOut(BaseModel):
    node: str
    labels: dict[str, str]
    cluster: list[str]
    metaqueries: list[MetaQueryOut]
    internal_hits: list[ArticleSummary]
    related: list[str]


class NavigateResponse(BaseModel):
    focus: str
    radius: int
    language: str
    nodes: list[NodeOut]
    arcs: list[ArcOut]
    context: ContextBlockOut


class SearchNodeHit(BaseModel):
    node: str
    labels: dict[str, str]
    kind: str
    internal_hit_count: int
    top_hits: list[ArticleSummary]


class SearchResponse(BaseModel):
    query: str
    language: str
    found: bool
    message: str | None = None
    results: list[SearchNodeHit] = []


class AccessOut(BaseModel):
    kind: str  # "direct" or "scholar"
    uri: str | None = None
    metaquery: MetaQueryOut | None = None


class ArticlePage(BaseModel):
    id: str
    title: str
    year: int | None = None
    context: str = ""
    authors: list[str] = []
    uri: str | None = None
    assignments: list[list[str]] = []
    metadata: list[list[str]]  # Dublin Core (key, value) pairs
    bibtex_url: str
    access: AccessOut


class ProposalIn(BaseModel):
    node: str
    language: str = "fr"
    text: str
    submitter: str


class ProposalOut(BaseModel):
    id: str
    node: str
    language: str
    text: str
    submitter: str
    state: str
    validations: list[str]


class ValidateIn(BaseModel):
    member: str
    verdict: str = "approve"


class EntryIn(BaseModel):
    node: str
    language: str = "fr"
    text: str


class EntryOut(BaseModel):
    node: str
    language: str
    text: str
    lemmas: list[str]


class ErrorBody(BaseModel):
    error: str
    detail: str
