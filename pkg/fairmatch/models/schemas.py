from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from fairmatch.core.errors import GraphValidationError
from fairmatch.models.graph import BipartiteGraph


# ---- graph file format ----

class AgentEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    group: int = Field(..., description="1-based group index")


class GraphDocument(BaseModel):
    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "k": 2,
                "jobs": ["u1", "u2"],
                "agents": [
                    {"id": "a1", "group": 1},
                    {"id": "a2", "group": 1},
                    {"id": "b1", "group": 2},
                ],
                "edges": [["u1", "a1"], ["u2", "a2"], ["u2", "b1"]],
            }
        },
    )

    k: int = Field(..., ge=1, description="Number of groups, empty groups included")
    jobs: list[str]
    agents: list[AgentEntry]
    edges: list[tuple[str, str]]

    def to_graph(self) -> BipartiteGraph:
        for a in self.agents:
            if not 1 <= a.group <= self.k:
                raise GraphValidationError(
                    f"group out of range: agent {a.id!r} has group {a.group}, k={self.k}"
                )
        return BipartiteGraph(
            jobs=tuple(self.jobs),
            agents=tuple(a.id for a in self.agents),
            edges=tuple((u, v) for u, v in self.edges),
            groups=tuple(a.group - 1 for a in self.agents),
            k=self.k,
        )

    @classmethod
    def from_graph(cls, graph: BipartiteGraph) -> "GraphDocument":
        return cls(
            k=graph.k,
            jobs=list(graph.jobs),
            agents=[AgentEntry(id=v, group=g + 1) for v, g in zip(graph.agents, graph.groups)],
            edges=[(u, v) for u, v in graph.edges],
        )


def parse_graph(text: str | bytes) -> BipartiteGraph:
    try:
        doc = GraphDocument.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ()))
        raise GraphValidationError(f"malformed document: {where}: {first.get('msg')}") from e
    return doc.to_graph()


def serialize_graph(graph: BipartiteGraph) -> str:
    return GraphDocument.from_graph(graph).model_dump_json()


# ---- reports (rationals as "p/q" strings) ----

class MatchingEntry(BaseModel):
    job: str
    agent: str
    weight: str


class SolveReportModel(BaseModel):
    rule: str
    point: list[str]
    point_text: str
    size: str
    notion: Optional[str] = None
    weights: Optional[list[str]] = None
    sigma: Optional[list[int]] = None
    c_star: Optional[str] = None
    tight_set: Optional[list[int]] = None
    mode: Optional[str] = None
    seed: Optional[int] = None
    samples: Optional[int] = None
    matching: Optional[list[MatchingEntry]] = None


class PofReportModel(BaseModel):
    notion: str
    w: list[str]
    opt: int
    fair_size: str
    pof: str  # "p/q" or "inf"
    c_star: str
    argmin: list[int]
    rho: Optional[str] = None
    additive_gap: str
    integral: bool = False
    bounds: dict[str, Optional[str]] = Field(default_factory=dict)
    decreasing: Optional[dict] = None


# ---- API requests ----

Rule = Literal["lexmax", "leximin", "shapley", "fair-optimum"]
Notion = Literal["egalitarian", "demographic", "opportunity", "shapley", "custom"]


class SolveRequest(BaseModel):
    graph: GraphDocument
    rule: Rule
    sigma: Optional[list[int]] = Field(default=None, description="1-based priority order for lexmax")
    notion: Optional[Notion] = Field(default=None, description="defaults to egalitarian, or custom when weights are given")
    weights: Optional[list[str]] = Field(default=None, description="custom weights as rationals")
    mode: Literal["exact", "sampled"] = "exact"
    samples: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    emit_matching: bool = False

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "graph": GraphDocument.model_config["json_schema_extra"]["example"],
                "rule": "fair-optimum",
                "notion": "opportunity",
            }
        }
    )


class PofRequest(BaseModel):
    graph: GraphDocument
    notion: Notion = "opportunity"
    weights: Optional[list[str]] = None
    bounds: bool = False
    integral: bool = False
    max_k: Optional[int] = Field(default=None, ge=1)


class GenerateRequest(BaseModel):
    family: Literal["toblerone", "tight-halves", "rho-tight", "prime", "complete", "er", "paired"]
    params: dict[str, str | int | list[int]] = Field(default_factory=dict)
    seed: Optional[int] = None


class HealthResponse(BaseModel):
    status: str
    version: str
