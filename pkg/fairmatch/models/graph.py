"""
Graph and matching data model.

BipartiteGraph is immutable once built; every operation downstream takes
it as read-only input. Groups are 0-based here; the file format and the
CLI speak 1-based group indices.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from fairmatch.core.errors import GraphValidationError, InvalidParameterError
from fairmatch.core.rational import GroupVector, checked, zeros

Edge = tuple[str, str]  # (job, agent)


@dataclass(frozen=True)
class BipartiteGraph:
    jobs: tuple[str, ...]
    agents: tuple[str, ...]
    edges: tuple[Edge, ...]
    groups: tuple[int, ...]  # group of agents[j], 0-based
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise GraphValidationError("k must be at least 1")
        if len(self.groups) != len(self.agents):
            raise GraphValidationError("group assignment must cover every agent")
        _unique(self.jobs, "job")
        _unique(self.agents, "agent")
        overlap = set(self.jobs) & set(self.agents)
        if overlap:
            raise GraphValidationError(f"duplicate identifier across sides: {sorted(overlap)[0]}")
        for agent, g in zip(self.agents, self.groups):
            if not 0 <= g < self.k:
                raise GraphValidationError(f"group out of range: agent {agent} has group {g + 1}, k={self.k}")
        jobs, agents = set(self.jobs), set(self.agents)
        seen: set[Edge] = set()
        for job, agent in self.edges:
            if job not in jobs:
                raise GraphValidationError(f"dangling endpoint: unknown job {job!r}")
            if agent not in agents:
                raise GraphValidationError(f"dangling endpoint: unknown agent {agent!r}")
            if (job, agent) in seen:
                raise GraphValidationError(f"duplicate edge: ({job}, {agent})")
            seen.add((job, agent))

    # ---- derived indexes (cached; the dataclass is frozen) ----

    @cached_property
    def job_index(self) -> dict[str, int]:
        return {u: i for i, u in enumerate(self.jobs)}

    @cached_property
    def agent_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.agents)}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def group_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.k
        for g in self.groups:
            sizes[g] += 1
        return tuple(sizes)

    @cached_property
    def empty_groups(self) -> tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.group_sizes) if n == 0)

    @cached_property
    def agent_neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Job indices adjacent to each agent, in edge order."""
        adj: list[list[int]] = [[] for _ in self.agents]
        for job, agent in self.edges:
            adj[self.agent_index[agent]].append(self.job_index[job])
        return tuple(tuple(a) for a in adj)

    def group_of(self, agent: str) -> int:
        return self.groups[self.agent_index[agent]]


@dataclass(frozen=True)
class FractionalMatching:
    weights: Mapping[Edge, Fraction] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.weights)

    def is_integral(self) -> bool:
        return all(w.denominator == 1 for w in self.weights.values())

    def support(self) -> frozenset[Edge]:
        return frozenset(e for e, w in self.weights.items() if w)


def matching_from_edges(edges) -> FractionalMatching:
    return FractionalMatching({(u, v): Fraction(1) for u, v in edges})


def validate_matching(graph: BipartiteGraph, mu: FractionalMatching) -> None:
    job_mass: dict[str, Fraction] = {}
    agent_mass: dict[str, Fraction] = {}
    for (job, agent), w in mu.weights.items():
        if (job, agent) not in graph.edge_set:
            raise InvalidParameterError(f"matching uses a non-edge ({job}, {agent})")
        if not 0 <= w <= 1:
            raise InvalidParameterError(f"matching weight {w} on ({job}, {agent}) outside [0,1]")
        job_mass[job] = job_mass.get(job, Fraction(0)) + w
        agent_mass[agent] = agent_mass.get(agent, Fraction(0)) + w
    for node, mass in (*job_mass.items(), *agent_mass.items()):
        if mass > 1:
            raise InvalidParameterError(f"matching mass {mass} at {node} exceeds 1")


def group_point_of(graph: BipartiteGraph, mu: FractionalMatching) -> GroupVector:
    validate_matching(graph, mu)
    point = list(zeros(graph.k))
    for (_, agent), w in mu.weights.items():
        g = graph.group_of(agent)
        point[g] = checked(point[g] + w)
    return tuple(point)


def _unique(ids: tuple[str, ...], kind: str) -> None:
    seen: set[str] = set()
    for x in ids:
        if x in seen:
            raise GraphValidationError(f"duplicate identifier: {kind} {x!r}")
        seen.add(x)
