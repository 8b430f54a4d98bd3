"""
Solution concepts over co(M).

lexmax       serial dictatorship for a priority order sigma
shapley      average marginal contribution in the game Lambda -> OPT(Lambda)
leximin      weighted waterfilling, repeated advance + freeze
fair_optimum largest point on the ray spanned by w

Priority orders are 0-based tuples here: sigma[j] is the group served
j-th.
"""

import itertools
import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from fairmatch.core.config import settings
from fairmatch.core.errors import GuardExceededError, InfeasibleRequestError, InvalidParameterError
from fairmatch.core.logging import get_logger
from fairmatch.core.rational import GroupVector, add, checked, l1, scale, unit, vector, zeros
from fairmatch.core.results import FairSolution, ProjectionCertificate, Rule
from fairmatch.models.graph import BipartiteGraph
from fairmatch.services.oracle import OptOracle, oracle_for
from fairmatch.services.polytope import advance, headroom, membership, realize, tight_set

logger = get_logger(__name__)


def validate_sigma(graph: BipartiteGraph, sigma: Sequence[int]) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(graph.k)):
        raise InvalidParameterError(f"sigma must be a permutation of the {graph.k} groups")
    return sigma


def lexmax_point(graph: BipartiteGraph, sigma: Sequence[int], oracle: Optional[OptOracle] = None) -> GroupVector:
    """Psi_sigma from prefix differences of OPT."""
    sigma = validate_sigma(graph, sigma)
    prefix = oracle_for(graph, oracle).prefix_values(sigma)
    point = [Fraction(0)] * graph.k
    for j, i in enumerate(sigma):
        point[i] = Fraction(prefix[j + 1] - prefix[j])
    return tuple(point)


def serial_dictatorship(
    graph: BipartiteGraph,
    sigma: Sequence[int],
    oracle: Optional[OptOracle] = None,
    with_matching: bool = True,
) -> FairSolution:
    sigma = validate_sigma(graph, sigma)
    oracle = oracle_for(graph, oracle)

    # each group in turn takes all the headroom left to it
    x = zeros(graph.k)
    for i in sigma:
        t = headroom(graph, x, i, checked_member=True)
        x = add(x, scale(t, unit(graph.k, i)))

    expected = lexmax_point(graph, sigma, oracle)
    if x != expected:
        raise InfeasibleRequestError(
            f"serial dictatorship diverged from prefix optimum: {x} != {expected}"
        )
    return FairSolution(
        rule=Rule.LEXMAX,
        point=x,
        matching=realize(graph, x) if with_matching else None,
        sigma=sigma,
    )


def lexmax_vertices(graph: BipartiteGraph, oracle: Optional[OptOracle] = None, max_k: Optional[int] = None) -> list[GroupVector]:
    """Distinct Psi_sigma over every sigma, in first-seen order."""
    limit = max_k or settings.DECREASING_MAX_K
    if graph.k > limit:
        raise GuardExceededError(f"K={graph.k} exceeds the permutation limit {limit}")
    oracle = oracle_for(graph, oracle)
    seen: dict[GroupVector, None] = {}
    for sigma in itertools.permutations(range(graph.k)):
        seen.setdefault(lexmax_point(graph, sigma, oracle), None)
    return list(seen)


def shapley(
    graph: BipartiteGraph,
    mode: str = "exact",
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    oracle: Optional[OptOracle] = None,
) -> GroupVector:
    oracle = oracle_for(graph, oracle)
    k = graph.k
    if mode == "exact":
        if k > settings.SHAPLEY_EXACT_MAX_K:
            raise GuardExceededError(
                f"exact Shapley limited to K <= {settings.SHAPLEY_EXACT_MAX_K}, got K={k}; use sampled mode"
            )
        values = oracle.table()
        coef = [Fraction(math.factorial(s) * math.factorial(k - s - 1), math.factorial(k)) for s in range(k)]
        phi = []
        for i in range(k):
            bit = 1 << i
            total = Fraction(0)
            for mask in range(oracle.full + 1):
                if mask & bit:
                    continue
                total += coef[mask.bit_count()] * (values[mask | bit] - values[mask])
            phi.append(checked(total))
        return tuple(phi)

    if mode == "sampled":
        n = n_samples or settings.SHAPLEY_DEFAULT_SAMPLES
        if n < 1:
            raise InvalidParameterError("n_samples must be positive")
        rng = np.random.Generator(np.random.PCG64(settings.DEFAULT_SEED if seed is None else seed))
        sums = [0] * k
        for _ in range(n):
            sigma = [int(i) for i in rng.permutation(k)]
            prefix = oracle.prefix_values(sigma)
            for j, i in enumerate(sigma):
                sums[i] += prefix[j + 1] - prefix[j]
        return tuple(Fraction(s, n) for s in sums)

    raise InvalidParameterError(f"unknown Shapley mode {mode!r}")


def shapley_solution(
    graph: BipartiteGraph,
    mode: str = "exact",
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    oracle: Optional[OptOracle] = None,
    with_matching: bool = True,
) -> FairSolution:
    point = shapley(graph, mode, n_samples, seed, oracle)
    detail = {"mode": mode}
    if mode == "sampled":
        detail.update(samples=n_samples or settings.SHAPLEY_DEFAULT_SAMPLES,
                      seed=settings.DEFAULT_SEED if seed is None else seed)
    # a sampled estimate can fall outside co(M); only exact points are realized
    matching = realize(graph, point) if with_matching and mode == "exact" else None
    return FairSolution(rule=Rule.SHAPLEY, point=point, matching=matching, detail=detail)


def _weights(graph: BipartiteGraph, w: Sequence) -> GroupVector:
    w = vector(w)
    if len(w) != graph.k:
        raise InvalidParameterError(f"expected {graph.k} weights, got {len(w)}")
    if any(c < 0 for c in w):
        raise InvalidParameterError("weights must be non-negative")
    return w


def leximin(
    graph: BipartiteGraph,
    w: Sequence,
    oracle: Optional[OptOracle] = None,
    with_matching: bool = True,
) -> FairSolution:
    w = _weights(graph, w)
    if len(graph.empty_groups) == graph.k:
        raise InfeasibleRequestError("all groups empty")
    active = {i for i in range(graph.k) if w[i] > 0 and graph.group_sizes[i] > 0}
    if not active:
        raise InvalidParameterError("zero weight vector on the non-empty groups")

    oracle = oracle_for(graph, oracle)
    x = zeros(graph.k)
    rounds = 0
    while active:
        rates = tuple(w[i] if i in active else Fraction(0) for i in range(graph.k))
        step = advance(graph, x, rates, active, oracle)
        x = tuple(checked(x[i] + step.t_star * rates[i]) for i in range(graph.k))
        if not step.tight_groups:
            raise InfeasibleRequestError("waterfilling round froze no group")
        active -= step.tight_groups
        rounds += 1
        logger.debug("waterfilling round", extra={"round": rounds, "t": str(step.t_star),
                                                  "frozen": sorted(step.tight_groups)})

    return FairSolution(
        rule=Rule.LEXIMIN,
        point=x,
        matching=realize(graph, x) if with_matching else None,
        weights=w,
        tight_set=tight_set(graph, x),
        detail={"rounds": rounds},
    )


def fair_optimum(
    graph: BipartiteGraph,
    w: Sequence,
    oracle: Optional[OptOracle] = None,
    with_matching: bool = True,
) -> FairSolution:
    w = _weights(graph, w)
    if not any(w):
        raise InvalidParameterError("zero weight vector")
    support = [i for i in range(graph.k) if w[i] > 0]
    step = advance(graph, zeros(graph.k), w, support, oracle)
    point = scale(step.t_star, w)
    return FairSolution(
        rule=Rule.FAIR_OPTIMUM,
        point=point,
        matching=realize(graph, point) if with_matching else None,
        weights=w,
        c_star=step.t_star,
        tight_set=tight_set(graph, point),
        detail={"newton_iterations": step.iterations},
    )


def projection_pair(
    graph: BipartiteGraph,
    w: Sequence,
    oracle: Optional[OptOracle] = None,
) -> tuple[GroupVector, GroupVector, ProjectionCertificate]:
    """
    Leximin and fair-optimum points for w > 0 plus the exact identities
    tying them together. Coordinates are rescaled by 1/w so the weighted
    case reads like the unweighted one.
    """
    w = _weights(graph, w)
    if any(c == 0 for c in w):
        raise InvalidParameterError("projection requires strictly positive weights")
    oracle = oracle_for(graph, oracle)
    lex = leximin(graph, w, oracle, with_matching=False).point
    fair = fair_optimum(graph, w, oracle, with_matching=False)
    t_star = fair.c_star

    # independent bracket of t*: on the boundary, and one step past it is out
    delta = Fraction(1, t_star.denominator + 1)
    bracketed = membership(graph, scale(t_star, w)) and not membership(graph, scale(t_star + delta, w))

    k = graph.k
    scaled = tuple(x / c for x, c in zip(lex, w))
    if all(c == 1 for c in w):
        center = (Fraction(oracle.total, k),) * k
    else:
        center = (l1(scaled) / k,) * k
    inner = sum(
        ((s - h) * (h - t_star) for s, h in zip(scaled, center)),
        Fraction(0),
    )
    cert = ProjectionCertificate(
        leximin=lex,
        fair_optimum=fair.point,
        t_star=t_star,
        bracketed=bracketed,
        center=center,
        inner_product=inner,
    )
    return lex, fair.point, cert


def weighted_maximal_vertices(
    graph: BipartiteGraph,
    w: Sequence,
    oracle: Optional[OptOracle] = None,
    max_k: Optional[int] = None,
) -> list[GroupVector]:
    """
    Distinct Psi_sigma over the orders that serve smaller weights first,
    ties broken every possible way. Each maximizes <1/w, x> over co(M).
    """
    w = _weights(graph, w)
    if any(c == 0 for c in w):
        raise InvalidParameterError("weighted vertices require strictly positive weights")
    limit = max_k or settings.DECREASING_MAX_K
    blocks: list[list[int]] = []
    for i in sorted(range(graph.k), key=lambda i: (w[i], i)):
        if blocks and w[blocks[-1][0]] == w[i]:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    count = math.prod(math.factorial(len(b)) for b in blocks)
    if count > math.factorial(limit):
        raise GuardExceededError(f"{count} weighted orders exceed the permutation limit")

    oracle = oracle_for(graph, oracle)
    seen: dict[GroupVector, None] = {}
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        sigma = tuple(i for part in parts for i in part)
        seen.setdefault(lexmax_point(graph, sigma, oracle), None)
    return list(seen)


def prefix_weighted_objective(point: Sequence[Fraction], sigma: Sequence[int], lambdas: Sequence) -> Fraction:
    """sum_j lambda_j * point[sigma[j]]."""
    lambdas = vector(lambdas)
    if len(lambdas) != len(sigma):
        raise InvalidParameterError("one multiplier per position is required")
    return sum((lam * point[i] for lam, i in zip(lambdas, sigma)), Fraction(0))
