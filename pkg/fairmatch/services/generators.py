"""
Instance families.

Private blocks are perfect pairings (agent j <-> job j); shared blocks are
complete bipartite. Agent counts equal the intended M_i. Job ids are
"u<n>" and agent ids "a<n>", numbered in creation order.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from fairmatch.core.errors import InvalidParameterError
from fairmatch.core.logging import get_logger
from fairmatch.core.rational import GroupVector, vector
from fairmatch.models.graph import BipartiteGraph

logger = get_logger(__name__)


class _Builder:
    def __init__(self, k: int):
        self.k = k
        self.jobs: list[str] = []
        self.agents: list[str] = []
        self.groups: list[int] = []
        self.edges: list[tuple[str, str]] = []

    def new_jobs(self, n: int) -> list[str]:
        ids = [f"u{len(self.jobs) + j + 1}" for j in range(n)]
        self.jobs.extend(ids)
        return ids

    def new_agents(self, group: int, n: int) -> list[str]:
        ids = [f"a{len(self.agents) + j + 1}" for j in range(n)]
        self.agents.extend(ids)
        self.groups.extend([group] * n)
        return ids

    def pair(self, group: int, n: int) -> None:
        for u, v in zip(self.new_jobs(n), self.new_agents(group, n)):
            self.edges.append((u, v))

    def connect_all(self, jobs: Sequence[str], agents: Sequence[str]) -> None:
        self.edges.extend((u, v) for v in agents for u in jobs)

    def build(self) -> BipartiteGraph:
        return BipartiteGraph(
            jobs=tuple(self.jobs),
            agents=tuple(self.agents),
            edges=tuple(self.edges),
            groups=tuple(self.groups),
            k=self.k,
        )


def _positive(**values: int) -> None:
    for name, v in values.items():
        if not isinstance(v, int) or v < 1:
            raise InvalidParameterError(f"{name} must be a positive integer, got {v!r}")


def toblerone(k: int, m: int, n: int) -> BipartiteGraph:
    """One independent group of M paired agents, K-1 groups of N competing for N shared jobs."""
    _positive(m=m, n=n)
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError("toblerone needs K >= 2")
    b = _Builder(k)
    b.pair(0, m)
    shared = b.new_jobs(n)
    for i in range(1, k):
        b.connect_all(shared, b.new_agents(i, n))
    return b.build()


def tight_halves(k: int, m: int) -> BipartiteGraph:
    """ceil(K/2) groups complete to M shared jobs, then floor(K/2) private pairings."""
    _positive(m=m)
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError("tight_halves needs K >= 2")
    b = _Builder(k)
    shared = b.new_jobs(m)
    competing = (k + 1) // 2
    for i in range(competing):
        b.connect_all(shared, b.new_agents(i, m))
    for i in range(competing, k):
        b.pair(i, m)
    return b.build()


def rho_tight(k: int, m: int, rho) -> BipartiteGraph:
    """
    r = floor(K*rho) and f = K*rho - r: r-1 private groups, one group
    with f*M private agents and (1-f)*M agents on the shared block, and
    the remaining K-r groups on the shared M jobs. Every M_i = M and
    OPT([K]) = K*rho*M.
    """
    _positive(m=m)
    rho = Fraction(rho)
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError("rho_tight needs K >= 2")
    if not Fraction(1, k - 1) <= rho <= 1:
        raise InvalidParameterError(f"rho={rho} outside [1/(K-1), 1]")
    r = math.floor(k * rho)
    f = k * rho - r
    private = f * m
    if private.denominator != 1:
        raise InvalidParameterError(f"non-integral capacities: (K*rho - floor(K*rho))*M = {private}")

    b = _Builder(k)
    shared = b.new_jobs(m)
    for i in range(r - 1):
        b.pair(i, m)
    b.pair(r - 1, int(private))
    b.connect_all(shared, b.new_agents(r - 1, m - int(private)))
    for i in range(r, k):
        b.connect_all(shared, b.new_agents(i, m))
    return b.build()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_counterexample(m1: int, m2: int) -> BipartiteGraph:
    """M1-1 jobs for V1, M2-1 jobs for V2, one job for everybody."""
    if not (_is_prime(m1) and _is_prime(m2)) or m1 == m2:
        raise InvalidParameterError(f"expected two distinct primes, got {m1} and {m2}")
    b = _Builder(2)
    v1 = b.new_agents(0, m1)
    v2 = b.new_agents(1, m2)
    b.connect_all(b.new_jobs(m1 - 1), v1)
    b.connect_all(b.new_jobs(m2 - 1), v2)
    b.connect_all(b.new_jobs(1), v1 + v2)
    return b.build()


def complete(k: int, sizes: Sequence[int], jobs: int) -> BipartiteGraph:
    sizes = list(sizes)
    if len(sizes) != k:
        raise InvalidParameterError(f"expected {k} group sizes, got {len(sizes)}")
    _positive(jobs=jobs, **{f"size{i + 1}": s for i, s in enumerate(sizes)})
    b = _Builder(k)
    all_jobs = b.new_jobs(jobs)
    for i, s in enumerate(sizes):
        b.connect_all(all_jobs, b.new_agents(i, s))
    return b.build()


def paired_singletons(pairs: int = 2) -> BipartiteGraph:
    """2*pairs singleton groups; groups 2j and 2j+1 share job j."""
    _positive(pairs=pairs)
    b = _Builder(2 * pairs)
    for j in range(pairs):
        job = b.new_jobs(1)
        b.connect_all(job, b.new_agents(2 * j, 1) + b.new_agents(2 * j + 1, 1))
    return b.build()


# ---- random graphs ----

@dataclass(frozen=True)
class ErConfig:
    n: int
    beta: Fraction
    alpha: GroupVector
    p: GroupVector
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidParameterError("n must be a positive integer")
        if not 0 < self.beta < 1:
            raise InvalidParameterError(f"beta={self.beta} outside (0, 1)")
        if len(self.alpha) != len(self.p) or not self.alpha:
            raise InvalidParameterError("alpha and p need one entry per group")
        if sum(self.alpha) != 1 or any(a < 0 for a in self.alpha):
            raise InvalidParameterError("alpha must be a probability vector")
        if any(not 0 < q < 1 for q in self.p):
            raise InvalidParameterError("invalid probabilities: every p_i must lie in (0, 1)")

    @property
    def k(self) -> int:
        return len(self.alpha)

    @property
    def n_jobs(self) -> int:
        return math.floor(self.beta * self.n)


def resolve_probability(text: str, n: int) -> Fraction:
    """auto-dense = log(n)^2/n, auto-sparse = 1/(4 n^1.5), otherwise a rational literal."""
    if text == "auto-dense":
        value = math.log(n) ** 2 / n
    elif text == "auto-sparse":
        value = 1 / (4 * n**1.5)
    else:
        return vector([text])[0]
    return Fraction(value).limit_denominator(10**9)


def erdos_renyi(config: ErConfig) -> BipartiteGraph:
    """
    Agents draw their group from alpha, then each (agent, job) edge is kept
    independently with the agent's group probability. numpy's PCG64 drives
    both draws, so a seed pins the edge set on every platform.
    """
    rng = np.random.Generator(np.random.PCG64(config.seed))
    n, m = config.n, config.n_jobs
    groups = rng.choice(config.k, size=n, p=[float(a) for a in config.alpha])
    draws = rng.random((n, m))
    p = np.array([float(q) for q in config.p])
    keep = draws < p[groups][:, None]

    jobs = tuple(f"u{j + 1}" for j in range(m))
    agents = tuple(f"a{j + 1}" for j in range(n))
    edges = tuple((jobs[u], agents[v]) for v, u in zip(*np.nonzero(keep)))
    logger.debug("er sample", extra={"n": n, "jobs": m, "edges": len(edges), "seed": config.seed})
    return BipartiteGraph(
        jobs=jobs,
        agents=agents,
        edges=edges,
        groups=tuple(int(g) for g in groups),
        k=config.k,
    )


# ---- dispatch by family name (CLI `gen` and POST /generate) ----

FAMILIES = ("toblerone", "tight-halves", "rho-tight", "prime", "complete", "er", "paired")


def _int(params: dict, name: str, default=None) -> int:
    value = params.get(name, default)
    if value is None:
        raise InvalidParameterError(f"missing parameter {name!r}")
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise InvalidParameterError(f"parameter {name!r} must be an integer, got {value!r}") from e


def _ints(value) -> list[int]:
    if isinstance(value, str):
        value = [p for p in value.split(",") if p.strip()]
    try:
        return [int(v) for v in value]
    except (TypeError, ValueError) as e:
        raise InvalidParameterError(f"expected a list of integers, got {value!r}") from e


def generate(family: str, params: dict, seed: int = 0) -> BipartiteGraph:
    if family == "toblerone":
        return toblerone(_int(params, "k"), _int(params, "m"), _int(params, "n"))
    if family == "tight-halves":
        return tight_halves(_int(params, "k"), _int(params, "m"))
    if family == "rho-tight":
        return rho_tight(_int(params, "k"), _int(params, "m"), vector([str(params.get("rho", ""))])[0])
    if family == "prime":
        return prime_counterexample(_int(params, "m1"), _int(params, "m2"))
    if family == "complete":
        sizes = _ints(params.get("sizes", ""))
        return complete(_int(params, "k", len(sizes)), sizes, _int(params, "jobs"))
    if family == "paired":
        return paired_singletons(_int(params, "pairs", 2))
    if family == "er":
        n = _int(params, "n")
        alpha = params.get("alpha")
        if alpha is None:
            k = _int(params, "k", 2)
            alpha_v = (Fraction(1, k),) * k
        else:
            alpha_v = vector(str(alpha).split(","))
        p = resolve_probability(str(params.get("p", "auto-dense")), n)
        config = ErConfig(
            n=n,
            beta=vector([str(params.get("beta", "1/2"))])[0],
            alpha=alpha_v,
            p=(p,) * len(alpha_v),
            seed=seed,
        )
        return erdos_renyi(config)
    raise InvalidParameterError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
