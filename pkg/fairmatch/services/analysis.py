"""
Price of Fairness and the closed-form bounds that frame it.
"""

import itertools
import math
from fractions import Fraction
from typing import Optional, Sequence

from fairmatch.core.config import settings
from fairmatch.core.errors import (
    BoundNotApplicableError,
    GuardExceededError,
    InvalidParameterError,
)
from fairmatch.core.logging import get_logger
from fairmatch.core.rational import GroupVector, checked, l1, scale, vector, zeros
from fairmatch.core.results import DecreasingCheck, PofReport, RhoBound
from fairmatch.models.graph import BipartiteGraph
from fairmatch.services.fairness import fair_optimum
from fairmatch.services.oracle import OptOracle, oracle_for
from fairmatch.services.polytope import membership

logger = get_logger(__name__)


def opportunity_weights(graph: BipartiteGraph, oracle: Optional[OptOracle] = None) -> GroupVector:
    return tuple(Fraction(m) for m in oracle_for(graph, oracle).opportunity)


def _weights(graph: BipartiteGraph, w: Sequence) -> GroupVector:
    w = vector(w)
    if len(w) != graph.k:
        raise InvalidParameterError(f"expected {graph.k} weights, got {len(w)}")
    if any(c < 0 for c in w):
        raise InvalidParameterError("weights must be non-negative")
    return w


def _fair(graph: BipartiteGraph, w: GroupVector, oracle: OptOracle) -> tuple[Fraction, frozenset[int]]:
    """(c*, maximal tight set at c*w); a zero w pins the fair segment at 0."""
    if not any(w):
        return Fraction(0), frozenset()
    solution = fair_optimum(graph, w, oracle, with_matching=False)
    return solution.c_star, solution.tight_set


def pof(
    graph: BipartiteGraph,
    w: Sequence,
    notion: str = "custom",
    integral: bool = False,
    oracle: Optional[OptOracle] = None,
) -> PofReport:
    w = _weights(graph, w)
    oracle = oracle_for(graph, oracle)
    opt = oracle.total
    c_star, argmin = _fair(graph, w, oracle)
    fair_size = checked(c_star * l1(w))

    if integral:
        points = integral_fair_points(graph, _integer_ray(w), oracle=oracle)
        fair_size = l1(points[-1])
        c_star = fair_size / l1(w) if any(w) else Fraction(0)

    if fair_size > 0:
        ratio: Optional[Fraction] = Fraction(opt) / fair_size
    elif opt == 0:
        ratio = Fraction(1)
    else:
        ratio = None

    report = PofReport(
        notion=notion,
        w=w,
        opt=opt,
        fair_size=fair_size,
        pof=ratio,
        c_star=c_star,
        argmin=argmin,
        additive_gap=Fraction(opt) - fair_size,
        rho=rho(graph, oracle) if any(oracle.opportunity) else None,
        integral=integral,
    )
    logger.debug("pof computed", extra={"notion": notion, "opt": opt, "fair_size": str(fair_size)})
    return report


BOUND_NAMES = ("worst_case", "maxmin", "rho", "rho_relaxed")


def bounds_apply(w: GroupVector, m: Sequence[int]) -> bool:
    """The closed-form bounds speak about opportunity weights: w = c*M, c > 0."""
    if not any(m):
        return not any(w)
    i = next(j for j, mj in enumerate(m) if mj > 0)
    c = w[i] / m[i]
    return c > 0 and all(wj == c * mj for wj, mj in zip(w, m))


def pof_with_bounds(
    graph: BipartiteGraph,
    w: Sequence,
    notion: str = "custom",
    integral: bool = False,
    max_k: Optional[int] = None,
    oracle: Optional[OptOracle] = None,
) -> PofReport:
    """
    pof() plus the bounds that hold for it. Every bound is None unless w is
    proportional to the opportunity vector and the ratio is fractional; the
    rho bound additionally needs all M_i equal.
    """
    oracle = oracle_for(graph, oracle)
    report = pof(graph, w, notion, integral, oracle)
    report.bounds = dict.fromkeys(BOUND_NAMES)
    m = oracle.opportunity
    if integral or not bounds_apply(report.w, m):
        logger.info("bounds not applicable", extra={"notion": notion, "integral": integral})
        return report
    report.bounds["worst_case"] = Fraction(bound_worst_case(graph.k))
    try:
        report.bounds["maxmin"] = bound_maxmin(graph, oracle)
    except BoundNotApplicableError:
        pass
    if report.rho is not None and len(set(m)) == 1:
        try:
            rb = bound_rho(graph.k, report.rho)
            report.bounds["rho"], report.bounds["rho_relaxed"] = rb.tight, rb.relaxed
        except BoundNotApplicableError:
            pass
    report.decreasing = check_decreasing(graph, max_k=max_k, oracle=oracle)
    return report


def additive_gap(graph: BipartiteGraph, w: Sequence, oracle: Optional[OptOracle] = None) -> Fraction:
    return pof(graph, w, oracle=oracle).additive_gap


def rho(graph: BipartiteGraph, oracle: Optional[OptOracle] = None) -> Fraction:
    oracle = oracle_for(graph, oracle)
    utopia = sum(oracle.opportunity)
    if utopia == 0:
        raise BoundNotApplicableError("rho undefined: every group has M_i = 0")
    return Fraction(oracle.total, utopia)


def bound_worst_case(k: int) -> int:
    if k < 1:
        raise InvalidParameterError("K must be at least 1")
    return 1 if k == 1 else k - 1


def maxmin_formula(k: int, m_hat: Fraction) -> Fraction:
    """m/2 + K m^2/4 + [K odd]/(4K)"""
    m_hat = Fraction(m_hat)
    return m_hat / 2 + k * m_hat**2 / 4 + Fraction(k % 2, 4 * k)


def bound_maxmin(graph: BipartiteGraph, oracle: Optional[OptOracle] = None) -> Fraction:
    m = oracle_for(graph, oracle).opportunity
    if min(m) == 0:
        raise BoundNotApplicableError("maxmin bound needs every M_i > 0")
    return maxmin_formula(graph.k, Fraction(max(m), min(m)))


def rho_bound_formula(k: int, rho_value: Fraction) -> Fraction:
    r = math.floor(k * rho_value)
    return rho_value * max(Fraction(k - r + 1) / (k * rho_value - r + 1), Fraction(k - r))


def bound_rho(k: int, rho_value) -> RhoBound:
    rho_value = Fraction(rho_value)
    if k < 1:
        raise InvalidParameterError("K must be at least 1")
    if not Fraction(1, k) <= rho_value <= 1:
        raise BoundNotApplicableError(f"rho={rho_value} outside [1/{k}, 1]")
    relaxed = rho_value * ((1 - rho_value) * k + 1)
    if k <= 2 or rho_value <= Fraction(1, k - 1):
        return RhoBound(tight=Fraction(1), relaxed=relaxed)
    return RhoBound(tight=rho_bound_formula(k, rho_value), relaxed=relaxed)


def check_decreasing(
    graph: BipartiteGraph,
    max_k: Optional[int] = None,
    oracle: Optional[OptOracle] = None,
) -> DecreasingCheck:
    """
    Whether every order sigma has non-increasing marginal rates
    (OPT(sigma[:l+1]) - OPT(sigma[:l])) / M_sigma(l). Groups with M = 0
    contribute rate 0. Orders are scanned lexicographically; the first
    violation found is returned.
    """
    limit = max_k or settings.DECREASING_MAX_K
    if graph.k > limit:
        raise GuardExceededError(f"K={graph.k} exceeds the decreasing-check limit {limit}")
    oracle = oracle_for(graph, oracle)
    m = oracle.opportunity
    for sigma in itertools.permutations(range(graph.k)):
        prefix = oracle.prefix_values(sigma)
        rates = tuple(
            Fraction(prefix[j + 1] - prefix[j], m[i]) if m[i] else Fraction(0)
            for j, i in enumerate(sigma)
        )
        for j in range(len(rates) - 1):
            if rates[j] < rates[j + 1]:
                return DecreasingCheck(holds=False, sigma=sigma, index=j, rates=rates)
    return DecreasingCheck(holds=True)


def _integer_ray(w: GroupVector) -> GroupVector:
    d = math.lcm(1, *(c.denominator for c in w))
    return tuple(c * d for c in w)


def integral_fair_points(
    graph: BipartiteGraph,
    w: Sequence,
    max_points: Optional[int] = None,
    oracle: Optional[OptOracle] = None,
) -> list[GroupVector]:
    """
    Integer points on the ray spanned by w that an integral matching
    realizes, from 0 upward. Downward closure makes the feasible ones a
    prefix of the multiples of w / gcd(w).
    """
    w = _weights(graph, w)
    if any(c.denominator != 1 for c in w):
        raise InvalidParameterError("integral fair points need integer weights")
    limit = max_points or settings.INTEGRAL_MAX_POINTS
    points = [zeros(graph.k)]
    g = math.gcd(*(int(c) for c in w))
    if g == 0:
        return points
    step = scale(Fraction(1, g), w)
    opt = oracle_for(graph, oracle).total
    n = 1
    while True:
        x = scale(Fraction(n), step)
        # integer quotas keep the flow integral, so membership is integral realizability
        if l1(x) > opt or not membership(graph, x):
            break
        if len(points) >= limit:
            raise GuardExceededError(f"more than {limit} integral fair points")
        points.append(x)
        n += 1
    return points
