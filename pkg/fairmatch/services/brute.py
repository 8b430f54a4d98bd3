"""
Ground truth for tiny graphs: every matching, every realizable point.

Nothing here uses flows. Tests compare the flow-based services against
these enumerations, and the `oracle` CLI command prints them.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from fairmatch.core.config import settings
from fairmatch.core.errors import GuardExceededError, InfeasibleRequestError, InvalidParameterError
from fairmatch.core.rational import GroupVector
from fairmatch.models.graph import BipartiteGraph, Edge, FractionalMatching, group_point_of, matching_from_edges

IntPoint = tuple[int, ...]


@dataclass(frozen=True)
class PointSet:
    points: frozenset[IntPoint]
    pareto: frozenset[IntPoint]   # points of maximum l1 norm

    def opt(self, mask: int) -> int:
        return opt_from_points(self.points, mask)


def enumerate_matchings(graph: BipartiteGraph, max_edges: Optional[int] = None) -> list[tuple[Edge, ...]]:
    """All matchings, by include/exclude recursion over edges in graph order."""
    limit = max_edges or settings.ENUMERATION_MAX_EDGES
    if len(graph.edges) > limit:
        raise GuardExceededError(f"{len(graph.edges)} edges exceed the enumeration limit {limit}")
    edges = graph.edges
    out: list[tuple[Edge, ...]] = []
    used_jobs: set[str] = set()
    used_agents: set[str] = set()
    chosen: list[Edge] = []

    def walk(idx: int) -> None:
        if idx == len(edges):
            out.append(tuple(chosen))
            return
        walk(idx + 1)
        job, agent = edges[idx]
        if job in used_jobs or agent in used_agents:
            return
        used_jobs.add(job)
        used_agents.add(agent)
        chosen.append(edges[idx])
        walk(idx + 1)
        chosen.pop()
        used_jobs.discard(job)
        used_agents.discard(agent)

    walk(0)
    return out


def _int_point(graph: BipartiteGraph, matching: Iterable[Edge]) -> IntPoint:
    point = [0] * graph.k
    for _, agent in matching:
        point[graph.group_of(agent)] += 1
    return tuple(point)


def enumerate_points(graph: BipartiteGraph, max_edges: Optional[int] = None) -> PointSet:
    points = frozenset(_int_point(graph, m) for m in enumerate_matchings(graph, max_edges))
    best = max(sum(p) for p in points)
    return PointSet(points=points, pareto=frozenset(p for p in points if sum(p) == best))


def opt_from_points(points: Iterable[IntPoint], mask: int) -> int:
    return max(
        (sum(c for i, c in enumerate(p) if mask >> i & 1) for p in points),
        default=0,
    )


def hull_contains(points: Iterable[IntPoint], x: Sequence[Fraction]) -> bool:
    """x in the convex hull, via sum_{Lambda} x <= OPT(Lambda) for every Lambda."""
    points = list(points)
    if any(c < 0 for c in x):
        return False
    k = len(x)
    for mask in range(1, 1 << k):
        lhs = sum((x[i] for i in range(k) if mask >> i & 1), Fraction(0))
        if lhs > opt_from_points(points, mask):
            return False
    return True


def check_discrete_polymatroid(points: Iterable[Sequence[int]]) -> bool:
    pts = {tuple(int(c) for c in p) for p in points}
    if not pts:
        return False
    k = len(next(iter(pts)))
    if (0,) * k not in pts:
        return False

    def bump(p: IntPoint, i: int, d: int) -> IntPoint:
        return p[:i] + (p[i] + d,) + p[i + 1:]

    for y in pts:
        for i in range(k):
            if y[i] > 0 and bump(y, i, -1) not in pts:
                return False
    for x in pts:
        for y in pts:
            if sum(x) >= sum(y):
                continue
            if not any(x[i] < y[i] and bump(x, i, 1) in pts for i in range(k)):
                return False
    return True


# ---- exchange-graph augmentation ----

def _as_edges(graph: BipartiteGraph, mu, name: str) -> set[Edge]:
    if isinstance(mu, FractionalMatching):
        group_point_of(graph, mu)
        if not mu.is_integral():
            raise InvalidParameterError(f"{name} must be a 0/1 matching")
        edges = mu.support()
    else:
        edges = {tuple(e) for e in mu}
        group_point_of(graph, matching_from_edges(edges))
    return set(edges)


def _paths(delta: set[Edge]) -> list[list[tuple[str, str]]]:
    """Split a symmetric difference into its paths; cycles are dropped."""
    adj: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for job, agent in sorted(delta):
        a, b = ("u", job), ("v", agent)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen: set[tuple[str, str]] = set()
    paths = []
    for start in sorted(adj):
        if start in seen or len(adj[start]) != 1:
            continue
        path, prev, node = [start], None, start
        seen.add(start)
        while True:
            nxt = [n for n in adj[node] if n != prev and n not in seen]
            if not nxt:
                break
            prev, node = node, nxt[0]
            seen.add(node)
            path.append(node)
        paths.append(path)
    return paths


def _edge(a: tuple[str, str], b: tuple[str, str]) -> Edge:
    return (a[1], b[1]) if a[0] == "u" else (b[1], a[1])


def augment_with_witness(graph: BipartiteGraph, mu, nu) -> tuple[int, frozenset[Edge]]:
    """
    Group i with X(mu)_i < X(nu)_i together with a matching realizing
    X(mu) + e_i. Each path of mu xor nu is an arc of the exchange graph on
    {0} + groups; a greedy walk from 0 stops at a group with more in-arcs
    than out-arcs, and swapping the walked paths adds one agent of it.
    """
    m_edges = _as_edges(graph, mu, "mu")
    n_edges = _as_edges(graph, nu, "nu")
    if len(m_edges) >= len(n_edges):
        raise InfeasibleRequestError("augment precondition: |X(mu)| must be below |X(nu)|")

    delta = m_edges ^ n_edges
    arcs: dict[int, list[tuple[int, int]]] = {}   # tail -> [(head, path id)]
    paths = _paths(delta)
    for pid, path in enumerate(paths):
        ends = [p for p in (path[0], path[-1]) if p[0] == "v"]
        first_in_mu = _edge(path[0], path[1]) in m_edges
        last_in_mu = _edge(path[-2], path[-1]) in m_edges
        if len(ends) == 2:
            lose, gain = (path[0], path[-1]) if first_in_mu else (path[-1], path[0])
            tail, head = graph.group_of(lose[1]) + 1, graph.group_of(gain[1]) + 1
        elif len(ends) == 1:
            in_mu = first_in_mu if path[0][0] == "v" else last_in_mu
            g = graph.group_of(ends[0][1]) + 1
            tail, head = (g, 0) if in_mu else (0, g)
        else:
            continue
        arcs.setdefault(tail, []).append((head, pid))

    node, walked = 0, []
    cursor = {t: 0 for t in arcs}
    while cursor.get(node, 0) < len(arcs.get(node, [])):
        head, pid = arcs[node][cursor[node]]
        cursor[node] += 1
        walked.append(pid)
        node = head
    if node == 0:
        raise InfeasibleRequestError("exchange walk ended at the root")

    swapped = set(m_edges)
    for pid in walked:
        path = paths[pid]
        for a, b in zip(path, path[1:]):
            swapped ^= {_edge(a, b)}
    return node - 1, frozenset(swapped)


def augment(graph: BipartiteGraph, mu, nu) -> int:
    return augment_with_witness(graph, mu, nu)[0]


def point_of_edges(graph: BipartiteGraph, edges: Iterable[Edge]) -> GroupVector:
    return tuple(Fraction(c) for c in _int_point(graph, edges))
