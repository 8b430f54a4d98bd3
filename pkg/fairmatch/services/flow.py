"""
Integer max-flow kernel.

Network layout for a graph with K groups:

    source -> group i      cap quota_i * D
    group i -> agent v     cap D          (v in V_i)
    agent v -> job u       cap D          ((u, v) in E)
    job u -> sink          cap D

D is the common denominator of the quotas, so every capacity is an
integer and a max flow divided by D is an exact fractional solution.

Arcs are stored in flat arrays; arc e and arc e ^ 1 are each other's
residual twin. Adjacency order follows graph order, so cuts and
extracted matchings are reproducible.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from fairmatch.core.errors import InvalidParameterError
from fairmatch.core.logging import get_logger
from fairmatch.core.rational import GroupVector, common_denominator
from fairmatch.core.results import MinCut
from fairmatch.models.graph import BipartiteGraph, Edge, FractionalMatching

logger = get_logger(__name__)

SOURCE = 0
SINK = 1


@dataclass
class FlowNetwork:
    n_nodes: int
    head: list[int]
    capacity: list[int]
    adjacency: list[list[int]]
    scale: int                     # D
    group_arcs: tuple[int, ...]    # source -> group i
    edge_arcs: dict[int, Edge]     # agent -> job arc id -> (job, agent)
    k: int

    def add_arc(self, u: int, v: int, cap: int) -> int:
        e = len(self.head)
        self.head.extend((v, u))
        self.capacity.extend((cap, 0))
        self.adjacency[u].append(e)
        self.adjacency[v].append(e + 1)
        return e

    @property
    def n_arcs(self) -> int:
        return len(self.head)


@dataclass(frozen=True)
class FlowSolution:
    value: int
    cut: MinCut
    arc_flow: tuple[int, ...]      # flow on every arc, twins carry the negation

    def group_flow(self, network: FlowNetwork) -> GroupVector:
        return tuple(Fraction(self.arc_flow[e], network.scale) for e in network.group_arcs)

    def cut_groups(self, network: FlowNetwork) -> int:
        """Bitmask of the groups whose node sits on the source side."""
        mask = 0
        for i in range(network.k):
            if 2 + i in self.cut.source_side:
                mask |= 1 << i
        return mask


def build_network(graph: BipartiteGraph, quotas: Sequence[Fraction]) -> FlowNetwork:
    if len(quotas) != graph.k:
        raise InvalidParameterError(f"expected {graph.k} group quotas, got {len(quotas)}")
    if any(q < 0 for q in quotas):
        raise InvalidParameterError("group quotas must be non-negative")

    scale = common_denominator(quotas)
    k, n_agents = graph.k, len(graph.agents)
    agent_base = 2 + k
    job_base = agent_base + n_agents
    n_nodes = job_base + len(graph.jobs)

    net = FlowNetwork(
        n_nodes=n_nodes,
        head=[],
        capacity=[],
        adjacency=[[] for _ in range(n_nodes)],
        scale=scale,
        group_arcs=(),
        edge_arcs={},
        k=k,
    )
    net.group_arcs = tuple(
        net.add_arc(SOURCE, 2 + i, int(q * scale)) for i, q in enumerate(quotas)
    )
    for j, g in enumerate(graph.groups):
        net.add_arc(2 + g, agent_base + j, scale)
    for j, neighbors in enumerate(graph.agent_neighbors):
        agent = graph.agents[j]
        for u in neighbors:
            e = net.add_arc(agent_base + j, job_base + u, scale)
            net.edge_arcs[e] = (graph.jobs[u], agent)
    for u in range(len(graph.jobs)):
        net.add_arc(job_base + u, SINK, scale)
    return net


def max_flow(network: FlowNetwork) -> FlowSolution:
    """
    Edmonds-Karp. All source-group-agent-job-sink paths are saturated
    greedily first; they are exactly the length-4 augmenting paths the
    first BFS phase would find. The network itself is left untouched.
    """
    residual = list(network.capacity)
    head, adj = network.head, network.adjacency
    value = _saturate_short_paths(network, residual)

    parent = [-1] * network.n_nodes
    while True:
        for i in range(network.n_nodes):
            parent[i] = -1
        parent[SOURCE] = -2
        queue = deque([SOURCE])
        while queue and parent[SINK] == -1:
            u = queue.popleft()
            for e in adj[u]:
                v = head[e]
                if residual[e] > 0 and parent[v] == -1:
                    parent[v] = e
                    if v == SINK:
                        break
                    queue.append(v)
        if parent[SINK] == -1:
            break

        bottleneck = None
        v = SINK
        while v != SOURCE:
            e = parent[v]
            bottleneck = residual[e] if bottleneck is None else min(bottleneck, residual[e])
            v = head[e ^ 1]
        v = SINK
        while v != SOURCE:
            e = parent[v]
            residual[e] -= bottleneck
            residual[e ^ 1] += bottleneck
            v = head[e ^ 1]
        value += bottleneck

    source_side = _reachable(network, residual)
    capacity = sum(
        network.capacity[e]
        for e in range(0, network.n_arcs, 2)
        if head[e ^ 1] in source_side and head[e] not in source_side
    )
    arc_flow = tuple(network.capacity[e] - residual[e] for e in range(network.n_arcs))
    logger.debug(
        "max flow solved",
        extra={"value": value, "nodes": network.n_nodes, "arcs": network.n_arcs // 2},
    )
    return FlowSolution(value=value, cut=MinCut(frozenset(source_side), capacity), arc_flow=arc_flow)


def extract_matching(network: FlowNetwork, solution: FlowSolution) -> FractionalMatching:
    weights = {
        edge: Fraction(solution.arc_flow[e], network.scale)
        for e, edge in network.edge_arcs.items()
        if solution.arc_flow[e] > 0
    }
    return FractionalMatching(weights)


def solve_quotas(graph: BipartiteGraph, quotas: Sequence[Fraction]) -> tuple[FlowNetwork, FlowSolution]:
    network = build_network(graph, quotas)
    return network, max_flow(network)


def _saturate_short_paths(network: FlowNetwork, residual: list[int]) -> int:
    head, adj = network.head, network.adjacency
    pushed = 0
    for ga in network.group_arcs:
        if residual[ga] == 0:
            continue
        group = head[ga]
        for a_arc in adj[group]:
            if a_arc & 1 or residual[a_arc] == 0:
                continue
            agent = head[a_arc]
            for j_arc in adj[agent]:
                if j_arc & 1 or residual[j_arc] == 0:
                    continue
                job = head[j_arc]
                t_arc = next(e for e in adj[job] if not e & 1)
                amount = min(residual[ga], residual[a_arc], residual[j_arc], residual[t_arc])
                if amount == 0:
                    continue
                for e in (ga, a_arc, j_arc, t_arc):
                    residual[e] -= amount
                    residual[e ^ 1] += amount
                pushed += amount
                if residual[ga] == 0 or residual[a_arc] == 0:
                    break
            if residual[ga] == 0:
                break
    return pushed


def _reachable(network: FlowNetwork, residual: list[int]) -> set[int]:
    seen = {SOURCE}
    queue = deque([SOURCE])
    while queue:
        u = queue.popleft()
        for e in network.adjacency[u]:
            v = network.head[e]
            if residual[e] > 0 and v not in seen:
                seen.add(v)
                queue.append(v)
    return seen
