from fractions import Fraction as F

import pytest

from conftest import vec
from fairmatch.core.errors import InvalidParameterError
from fairmatch.models.graph import BipartiteGraph, group_point_of
from fairmatch.services.brute import enumerate_points
from fairmatch.services.flow import build_network, extract_matching, max_flow, solve_quotas
from fairmatch.services.oracle import OptOracle, groups_of, mask_of


def test_opt_on_g_a(g_a):
    oracle = OptOracle(g_a)
    assert oracle.opt(0) == 0
    assert oracle.opt(0b01) == 2
    assert oracle.opt(0b10) == 1
    assert oracle.opt(0b11) == 2
    assert oracle.opportunity == (2, 1)
    assert oracle.total == 2


def test_opt_rejects_subsets_outside_k(g_a):
    with pytest.raises(InvalidParameterError):
        OptOracle(g_a).opt(0b100)


def test_mask_helpers():
    assert mask_of([0, 2]) == 0b101
    assert groups_of(0b101) == (0, 2)
    assert groups_of(0) == ()


def test_max_flow_g_a(g_a):
    network, solution = solve_quotas(g_a, vec(2, 1))
    assert solution.value == 2
    assert solution.cut.capacity == 2
    matching = extract_matching(network, solution)
    assert {job for job, _ in matching.weights} == {"u1", "u2"}
    assert matching.is_integral()


def test_zero_capacities(g_a):
    network, solution = solve_quotas(g_a, vec(0, 0))
    assert solution.value == 0
    assert len(extract_matching(network, solution)) == 0


def test_single_edge():
    g = BipartiteGraph(("u",), ("v",), (("u", "v"),), (0,), 1)
    assert max_flow(build_network(g, vec(1))).value == 1


def test_scaled_network(g_a):
    network, solution = solve_quotas(g_a, vec(F(4, 3), F(2, 3)))
    assert network.scale == 3
    assert solution.value == 6
    matching = extract_matching(network, solution)
    assert all((w * 3).denominator == 1 for w in matching.weights.values())
    assert group_point_of(g_a, matching) == (F(4, 3), F(2, 3))
    assert solution.group_flow(network) == (F(4, 3), F(2, 3))


def test_network_is_not_mutated(g_a):
    network = build_network(g_a, vec(2, 1))
    before = list(network.capacity)
    first = max_flow(network)
    assert network.capacity == before
    assert max_flow(network) == first


def test_negative_quota_rejected(g_a):
    with pytest.raises(InvalidParameterError):
        build_network(g_a, vec(-1, 1))


def test_flow_value_equals_cut_capacity(small_graphs):
    for g in small_graphs:
        quotas = tuple(F(n, 2) for n in g.group_sizes)
        _, solution = solve_quotas(g, quotas)
        assert solution.value == solution.cut.capacity


def test_opt_matches_enumeration(small_graphs):
    for g in small_graphs:
        oracle = OptOracle(g)
        points = enumerate_points(g, max_edges=36)
        for mask in range(1 << g.k):
            assert oracle.opt(mask) == points.opt(mask)


def test_opt_is_monotone_and_submodular():
    from conftest import random_graphs

    for g in random_graphs(40, seed=7, max_k=5, p=0.4):
        oracle = OptOracle(g)
        full = oracle.full
        for a in range(full + 1):
            for i in range(g.k):
                bit = 1 << i
                if a & bit:
                    continue
                assert oracle.opt(a) <= oracle.opt(a | bit)
                for b in range(full + 1):
                    # a subset of b, i outside b
                    if a & ~b or b & bit:
                        continue
                    assert oracle.opt(a | bit) - oracle.opt(a) >= oracle.opt(b | bit) - oracle.opt(b)


@pytest.mark.slow
def test_opt_matches_enumeration_on_many_graphs(many_graphs):
    for g in many_graphs:
        oracle = OptOracle(g)
        points = enumerate_points(g, max_edges=36)
        assert oracle.table() == [points.opt(mask) for mask in range(1 << g.k)]
