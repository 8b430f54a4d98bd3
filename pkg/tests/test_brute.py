import numpy as np
import pytest

from conftest import random_graphs
from fairmatch.core.errors import GuardExceededError, InfeasibleRequestError, InvalidParameterError
from fairmatch.models.graph import FractionalMatching
from fairmatch.services import generators
from fairmatch.services.brute import (
    augment,
    augment_with_witness,
    check_discrete_polymatroid,
    enumerate_matchings,
    enumerate_points,
    hull_contains,
    point_of_edges,
)
from fairmatch.services.oracle import OptOracle


def test_enumerate_g_a(g_a):
    matchings = enumerate_matchings(g_a)
    assert len(matchings) == 6
    point_set = enumerate_points(g_a)
    assert point_set.points == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)}
    assert point_set.pareto == {(2, 0), (1, 1)}


def test_enumeration_guard():
    g = generators.complete(1, (7,), 3)
    assert len(g.edges) == 21
    with pytest.raises(GuardExceededError):
        enumerate_matchings(g)
    assert enumerate_points(g, max_edges=21).pareto == {(3,)}


def test_hull_contains(g_a):
    points = enumerate_points(g_a).points
    assert hull_contains(points, (1, 1))
    assert not hull_contains(points, (2, 1))
    assert not hull_contains(points, (-1, 0))


def test_matching_points_form_a_discrete_polymatroid(small_graphs):
    for g in small_graphs:
        assert check_discrete_polymatroid(enumerate_points(g, max_edges=36).points)


def test_discrete_polymatroid_counterexamples():
    assert not check_discrete_polymatroid([(1, 1)])
    assert not check_discrete_polymatroid([(0, 0), (2, 0)])
    assert check_discrete_polymatroid([(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)])
    assert not check_discrete_polymatroid([])


def test_augment_g_a(g_a):
    mu = [("u2", "b1")]
    nu = [("u1", "a1"), ("u2", "a2")]
    i, witness = augment_with_witness(g_a, mu, nu)
    assert i == 0
    assert point_of_edges(g_a, witness) == (1, 1)
    assert augment(g_a, FractionalMatching({("u2", "b1"): 1}), nu) == 0


def test_augment_preconditions(g_a):
    with pytest.raises(InfeasibleRequestError):
        augment(g_a, [("u1", "a1")], [("u2", "b1")])
    with pytest.raises(InvalidParameterError):
        augment(g_a, [("u1", "b1")], [("u1", "a1"), ("u2", "a2")])


def test_augment_on_random_pairs():
    rng = np.random.Generator(np.random.PCG64(13))
    for g in random_graphs(60, seed=4):
        matchings = enumerate_matchings(g, max_edges=36)
        for _ in range(6):
            mu = matchings[int(rng.integers(len(matchings)))]
            nu = matchings[int(rng.integers(len(matchings)))]
            if len(mu) >= len(nu):
                continue
            i, witness = augment_with_witness(g, mu, nu)
            x_mu, x_nu = point_of_edges(g, mu), point_of_edges(g, nu)
            assert x_mu[i] < x_nu[i]
            expected = tuple(c + (1 if j == i else 0) for j, c in enumerate(x_mu))
            assert point_of_edges(g, witness) == expected
            assert sum(expected) <= OptOracle(g).total


@pytest.mark.slow
def test_many_graphs_form_discrete_polymatroids(many_graphs):
    for g in many_graphs:
        assert check_discrete_polymatroid(enumerate_points(g, max_edges=36).points)


@pytest.mark.slow
def test_augment_on_a_thousand_pairs(many_graphs):
    rng = np.random.Generator(np.random.PCG64(29))
    pairs = 0
    for g in many_graphs:
        matchings = enumerate_matchings(g, max_edges=36)
        total = OptOracle(g).total
        for _ in range(8):
            mu = matchings[int(rng.integers(len(matchings)))]
            nu = matchings[int(rng.integers(len(matchings)))]
            if len(mu) == len(nu):
                continue
            if len(mu) > len(nu):
                mu, nu = nu, mu
            i, witness = augment_with_witness(g, mu, nu)
            x_mu = point_of_edges(g, mu)
            assert x_mu[i] < point_of_edges(g, nu)[i]
            assert point_of_edges(g, witness) == tuple(c + (j == i) for j, c in enumerate(x_mu))
            assert len(witness) <= total
            pairs += 1
    assert pairs >= 1000
