import json
from fractions import Fraction as F

import numpy as np
import pytest

from fairmatch.models.graph import BipartiteGraph
from fairmatch.models.schemas import parse_graph
from fairmatch.services import generators

G_A_DOCUMENT = {
    "k": 2,
    "jobs": ["u1", "u2"],
    "agents": [
        {"id": "a1", "group": 1},
        {"id": "a2", "group": 1},
        {"id": "b1", "group": 2},
    ],
    "edges": [["u1", "a1"], ["u2", "a2"], ["u2", "b1"]],
}


@pytest.fixture
def g_a_document() -> dict:
    return json.loads(json.dumps(G_A_DOCUMENT))


@pytest.fixture
def g_a() -> BipartiteGraph:
    return parse_graph(json.dumps(G_A_DOCUMENT))


@pytest.fixture
def tob() -> BipartiteGraph:
    return generators.toblerone(3, 98, 1)


def disjoint_graph(sizes) -> BipartiteGraph:
    """Group i owns sizes[i] agents, each paired with a private job."""
    jobs, agents, groups, edges = [], [], [], []
    for i, s in enumerate(sizes):
        for j in range(s):
            jobs.append(f"u{i}_{j}")
            agents.append(f"a{i}_{j}")
            groups.append(i)
            edges.append((f"u{i}_{j}", f"a{i}_{j}"))
    return BipartiteGraph(tuple(jobs), tuple(agents), tuple(edges), tuple(groups), len(sizes))


def random_small_graph(rng: np.random.Generator, max_jobs=6, max_agents=6, max_k=3, p=0.35) -> BipartiteGraph:
    n_jobs = int(rng.integers(1, max_jobs + 1))
    n_agents = int(rng.integers(1, max_agents + 1))
    k = int(rng.integers(1, max_k + 1))
    groups = tuple(int(g) for g in rng.integers(0, k, size=n_agents))
    edges = tuple(
        (f"u{u}", f"a{v}")
        for v in range(n_agents)
        for u in range(n_jobs)
        if rng.random() < p
    )
    return BipartiteGraph(
        jobs=tuple(f"u{u}" for u in range(n_jobs)),
        agents=tuple(f"a{v}" for v in range(n_agents)),
        edges=edges,
        groups=groups,
        k=k,
    )


def random_graphs(n: int, seed: int = 2024, **kw) -> list[BipartiteGraph]:
    rng = np.random.Generator(np.random.PCG64(seed))
    return [random_small_graph(rng, **kw) for _ in range(n)]


@pytest.fixture
def small_graphs() -> list[BipartiteGraph]:
    return random_graphs(120)


@pytest.fixture(scope="session")
def many_graphs() -> list[BipartiteGraph]:
    """500 graphs with at most 6 jobs, 6 agents and 3 groups."""
    return random_graphs(500, seed=2025)


def vec(*xs) -> tuple:
    return tuple(F(x) for x in xs)
