from fractions import Fraction as F

import pytest

from fairmatch.core.errors import InvalidParameterError
from fairmatch.services import generators
from fairmatch.services.analysis import integral_fair_points, opportunity_weights, pof
from fairmatch.services.generators import ErConfig, erdos_renyi, generate, resolve_probability
from fairmatch.services.oracle import OptOracle


def test_toblerone_shape(tob):
    assert len(tob.jobs) == 99
    assert tob.group_sizes == (98, 1, 1)
    assert tob.jobs[0] == "u1" and tob.agents[-1] == "a100"
    assert OptOracle(tob).total == 99


def test_toblerone_two_groups_is_fair():
    for m, n in [(1, 1), (5, 2), (30, 7)]:
        g = generators.toblerone(2, m, n)
        assert pof(g, opportunity_weights(g)).pof == 1


@pytest.mark.slow
@pytest.mark.parametrize("k", [3, 4, 5])
def test_toblerone_large_m(k):
    g = generators.toblerone(k, 1000, 1)
    assert pof(g, opportunity_weights(g)).pof == F(1001) / (F(1000, k - 1) + 1)


def test_tight_halves_shape():
    g = generators.tight_halves(4, 3)
    assert g.group_sizes == (3, 3, 3, 3)
    assert opportunity_weights(g) == (3, 3, 3, 3)
    assert OptOracle(g).total == 9


def test_rho_tight_disjoint_at_one():
    g = generators.rho_tight(4, 2, 1)
    assert OptOracle(g).total == 8
    assert pof(g, opportunity_weights(g)).pof == 1


def test_rho_tight_validation():
    with pytest.raises(InvalidParameterError, match="non-integral capacities"):
        generators.rho_tight(10, 3, F(11, 20))
    with pytest.raises(InvalidParameterError):
        generators.rho_tight(10, 10, F(1, 10))


@pytest.mark.parametrize("m1, m2, opt", [(2, 3, 4), (3, 5, 7)])
def test_prime_counterexample(m1, m2, opt):
    g = generators.prime_counterexample(m1, m2)
    assert OptOracle(g).total == opt
    assert integral_fair_points(g, opportunity_weights(g)) == [(0, 0)]


def test_prime_counterexample_validation():
    with pytest.raises(InvalidParameterError):
        generators.prime_counterexample(2, 2)
    with pytest.raises(InvalidParameterError):
        generators.prime_counterexample(4, 3)


def test_complete():
    g = generators.complete(3, (2, 2, 2), 4)
    assert len(g.edges) == 24
    assert pof(g, opportunity_weights(g)).pof == 1
    assert opportunity_weights(generators.complete(1, (5,), 3)) == (3,)
    with pytest.raises(InvalidParameterError):
        generators.complete(2, (1,), 1)


def test_paired_singletons():
    g = generators.paired_singletons(2)
    assert g.k == 4
    assert g.group_sizes == (1, 1, 1, 1)
    assert len(g.jobs) == 2


@pytest.mark.parametrize("family, kwargs", [
    ("toblerone", {"k": 1, "m": 1, "n": 1}),
    ("toblerone", {"k": 3, "m": 0, "n": 1}),
    ("tight_halves", {"k": 3, "m": -1}),
])
def test_invalid_sizes(family, kwargs):
    with pytest.raises(InvalidParameterError):
        getattr(generators, family)(**kwargs)


def _config(**kw):
    base = dict(n=30, beta=F(1, 2), alpha=(F(1, 2), F(1, 2)), p=(F(1, 5), F(1, 5)), seed=9)
    base.update(kw)
    return ErConfig(**base)


def test_er_is_deterministic():
    assert erdos_renyi(_config()) == erdos_renyi(_config())
    assert erdos_renyi(_config()) != erdos_renyi(_config(seed=10))


def test_er_shape():
    g = erdos_renyi(_config(n=40, beta=F(3, 4)))
    assert len(g.agents) == 40
    assert len(g.jobs) == 30
    assert g.k == 2


@pytest.mark.parametrize("kw", [
    {"n": 0},
    {"beta": F(1)},
    {"alpha": (F(1, 2), F(1, 3))},
    {"p": (F(0), F(1, 2))},
    {"p": (F(1, 2),)},
])
def test_er_config_validation(kw):
    with pytest.raises(InvalidParameterError):
        _config(**kw)


def test_resolve_probability():
    assert resolve_probability("1/10", 100) == F(1, 10)
    assert abs(float(resolve_probability("auto-dense", 100)) - 0.2120) < 1e-3
    assert resolve_probability("auto-sparse", 100) == F(1, 4000)


def _fair_share(n, p, seeds=range(50)):
    fair = 0
    for seed in seeds:
        g = erdos_renyi(_config(n=n, p=(p, p), seed=seed))
        fair += pof(g, opportunity_weights(g)).pof == 1
    return fair / len(seeds)


@pytest.mark.slow
def test_dense_er_is_fair():
    assert _fair_share(200, resolve_probability("auto-dense", 200)) >= 0.95


@pytest.mark.slow
def test_sparse_er_is_fair():
    assert _fair_share(400, resolve_probability("auto-sparse", 400)) >= 0.95


def test_generate_dispatch():
    assert generate("toblerone", {"k": "3", "m": "98", "n": "1"}) == generators.toblerone(3, 98, 1)
    assert generate("rho-tight", {"k": 4, "m": 4, "rho": "3/4"}) == generators.rho_tight(4, 4, F(3, 4))
    assert generate("complete", {"sizes": "2,2", "jobs": 3}) == generators.complete(2, (2, 2), 3)
    assert generate("paired", {}) == generators.paired_singletons(2)
    assert generate("er", {"n": 20, "k": 3, "p": "1/4"}, seed=5) == generate("er", {"n": 20, "k": 3, "p": "1/4"}, seed=5)


def test_generate_errors():
    with pytest.raises(InvalidParameterError, match="unknown family"):
        generate("lattice", {})
    with pytest.raises(InvalidParameterError, match="missing parameter"):
        generate("toblerone", {"k": 3})
    with pytest.raises(InvalidParameterError):
        generate("toblerone", {"k": "three", "m": 1, "n": 1})
