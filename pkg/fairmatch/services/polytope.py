"""
Exact geometry of co(M), the convex hull of realizable group points.

Every question reduces to one scaled max-flow with per-group quotas:
x is a member iff the flow saturates every source arc, and the min cut
of an unsaturated flow names a violated constraint sum_{Lambda} x <= OPT(Lambda).
"""

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from fairmatch.core.errors import InfeasibleRequestError, InvalidParameterError, NotRealizableError
from fairmatch.core.logging import get_logger
from fairmatch.core.rational import GroupVector, axpy, checked, l1, vector, zeros
from fairmatch.core.results import AdvanceResult
from fairmatch.models.graph import BipartiteGraph, FractionalMatching
from fairmatch.services.flow import FlowNetwork, FlowSolution, extract_matching, solve_quotas
from fairmatch.services.oracle import OptOracle, groups_of, oracle_for

logger = get_logger(__name__)


def _point(graph: BipartiteGraph, x: Sequence, name: str = "point") -> GroupVector:
    x = vector(x)
    if len(x) != graph.k:
        raise InvalidParameterError(f"{name} has {len(x)} coordinates, expected {graph.k}")
    if any(c < 0 for c in x):
        raise InvalidParameterError(f"{name} has a negative coordinate")
    return x


def _solve(graph: BipartiteGraph, x: GroupVector) -> tuple[FlowNetwork, FlowSolution, bool]:
    network, solution = solve_quotas(graph, x)
    return network, solution, solution.value == l1(x) * network.scale


def membership(graph: BipartiteGraph, x: Sequence) -> bool:
    x = _point(graph, x)
    return _solve(graph, x)[2]


def realize(graph: BipartiteGraph, x: Sequence) -> FractionalMatching:
    x = _point(graph, x)
    network, solution, ok = _solve(graph, x)
    if not ok:
        raise NotRealizableError(f"point ({','.join(map(str, x))}) is not in co(M)")
    return extract_matching(network, solution)


def _require_member(graph: BipartiteGraph, x: GroupVector) -> None:
    if not _solve(graph, x)[2]:
        raise InfeasibleRequestError(f"point ({','.join(map(str, x))}) is not in co(M)")


def headroom(graph: BipartiteGraph, x: Sequence, i: int, *, checked_member: bool = False) -> Fraction:
    """max{t >= 0 | x + t*e_i in co(M)}."""
    x = _point(graph, x)
    if not 0 <= i < graph.k:
        raise InvalidParameterError(f"group {i + 1} out of range, K={graph.k}")
    if not checked_member:
        _require_member(graph, x)
    # lifting coordinate i to |V_i| leaves it unconstrained
    quotas = list(x)
    quotas[i] = Fraction(graph.group_sizes[i])
    network, solution = solve_quotas(graph, quotas)
    return checked(Fraction(solution.value, network.scale) - l1(x))


def frozen(graph: BipartiteGraph, x: Sequence, i: int) -> bool:
    return headroom(graph, x, i) == 0


def tight_set(graph: BipartiteGraph, x: Sequence, among: Optional[Iterable[int]] = None) -> frozenset[int]:
    """Maximal tight set at x, optionally intersected with `among`."""
    x = _point(graph, x)
    _require_member(graph, x)
    candidates = range(graph.k) if among is None else sorted(set(among))
    return frozenset(i for i in candidates if headroom(graph, x, i, checked_member=True) == 0)


def advance(
    graph: BipartiteGraph,
    x: Sequence,
    rates: Sequence,
    active: Optional[Iterable[int]] = None,
    oracle: Optional[OptOracle] = None,
) -> AdvanceResult:
    """
    Largest t with x + t*rates in co(M), by Newton iteration on min cuts.

    Start above the answer, solve the flow at x + t*rates and, while the
    flow is short, jump to the root of the constraint its cut names. Each
    jump strictly lowers t and lands on a distinct cut.
    """
    x = _point(graph, x)
    rates = _point(graph, rates, "rate vector")
    active_set = frozenset(range(graph.k) if active is None else active)
    if any(not 0 <= i < graph.k for i in active_set):
        raise InvalidParameterError(f"active set mentions a group outside [1, {graph.k}]")
    if any(r > 0 and i not in active_set for i, r in enumerate(rates)):
        raise InvalidParameterError("rates must vanish outside the active set")
    positive = [r for r in rates if r > 0]
    if not positive:
        raise InvalidParameterError("all-zero rates")
    _require_member(graph, x)

    oracle = oracle_for(graph, oracle)
    t = Fraction(oracle.total) / min(positive)
    iterations = 0
    while True:
        iterations += 1
        y = axpy(x, t, rates)
        network, solution, ok = _solve(graph, y)
        if ok:
            break
        cut = solution.cut_groups(network)
        members = groups_of(cut)
        slack = oracle.opt(cut) - sum((x[i] for i in members), Fraction(0))
        rate = sum((rates[i] for i in members), Fraction(0))
        if rate <= 0:
            raise InfeasibleRequestError("min cut carries no rate; starting point left co(M)")
        t_next = checked(slack / rate)
        logger.debug("newton step", extra={"t": str(t), "next": str(t_next), "cut": cut})
        if t_next >= t:
            raise InfeasibleRequestError("newton iteration failed to decrease")
        t = t_next

    point = axpy(x, t, rates)
    tight = frozenset(
        i for i in sorted(active_set)
        if headroom(graph, point, i, checked_member=True) == 0
    )
    return AdvanceResult(t_star=t, tight_groups=tight, iterations=iterations)


def max_scalar(graph: BipartiteGraph, direction: Sequence, oracle: Optional[OptOracle] = None) -> Fraction:
    """max{t | t*direction in co(M)}."""
    direction = _point(graph, direction, "direction")
    return advance(graph, zeros(graph.k), direction, oracle=oracle).t_star
