"""
Memoized OPT(Lambda).

Lambda is a bitmask over 0-based groups. Values are computed by one
integer max-flow with quota |V_i| for i in Lambda and 0 elsewhere, and
never change for a given graph, so the memo has no expiry. Reads are
lock-free; insertion takes the lock so concurrent workers sharing one
oracle never race on the dict.
"""

import threading
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

from fairmatch.core.errors import InvalidParameterError
from fairmatch.core.logging import get_logger
from fairmatch.models.graph import BipartiteGraph
from fairmatch.services.flow import solve_quotas

logger = get_logger(__name__)


def mask_of(groups: Iterable[int]) -> int:
    mask = 0
    for i in groups:
        mask |= 1 << i
    return mask


def groups_of(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


class OptOracle:
    def __init__(self, graph: BipartiteGraph):
        self.graph = graph
        self.full = (1 << graph.k) - 1
        self._store: dict[int, int] = {0: 0}
        self._lock = threading.Lock()

    def opt(self, mask: int) -> int:
        if not 0 <= mask <= self.full:
            raise InvalidParameterError(f"group subset {mask:#b} outside [K], K={self.graph.k}")
        value = self._store.get(mask)
        if value is not None:
            return value
        value = self._solve(mask)
        with self._lock:
            self._store.setdefault(mask, value)
        return value

    def prefix_values(self, sigma: Iterable[int]) -> list[int]:
        """OPT(sigma([0..i])) for every prefix, the empty one included."""
        values, mask = [0], 0
        for i in sigma:
            mask |= 1 << i
            values.append(self.opt(mask))
        return values

    def table(self) -> list[int]:
        return [self.opt(m) for m in range(self.full + 1)]

    @property
    def total(self) -> int:
        return self.opt(self.full)

    @cached_property
    def opportunity(self) -> tuple[int, ...]:
        return tuple(self.opt(1 << i) for i in range(self.graph.k))

    def _solve(self, mask: int) -> int:
        sizes = self.graph.group_sizes
        quotas = [Fraction(sizes[i]) if mask >> i & 1 else Fraction(0) for i in range(self.graph.k)]
        _, solution = solve_quotas(self.graph, quotas)
        logger.debug("oracle miss", extra={"subset": mask, "opt": solution.value})
        return solution.value


def oracle_for(graph: BipartiteGraph, oracle: Optional[OptOracle] = None) -> OptOracle:
    if oracle is not None and oracle.graph is not graph and oracle.graph != graph:
        raise InvalidParameterError("oracle was built for a different graph")
    return oracle or OptOracle(graph)
