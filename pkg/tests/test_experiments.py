import argparse
from fractions import Fraction as F

import pytest

from fairmatch.core.errors import InvalidParameterError
from fairmatch.experiments.base import (
    CSV_HEADER,
    Instance,
    parse_range,
    render_csv,
    run_experiment,
    run_instance,
    spawn_seeds,
)
from fairmatch.experiments.registry import build_experiments


def _args(name, argv=()):
    experiment = build_experiments()[name]
    parser = argparse.ArgumentParser()
    experiment.add_arguments(parser)
    return experiment, parser.parse_args(list(argv))


def test_registry_names():
    assert set(build_experiments()) == {
        "k2-always-fair", "toblerone-sweep", "rho-sweep", "er-dense", "er-sparse", "integral-gap",
    }


def test_parse_range():
    assert parse_range("7") == [7]
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("1,5,9") == [1, 5, 9]
    with pytest.raises(InvalidParameterError):
        parse_range("a..b")


def test_spawn_seeds_are_reproducible():
    seeds = spawn_seeds(1, 5)
    assert seeds == spawn_seeds(1, 5)
    assert len(set(seeds)) == 5
    assert seeds[:3] == spawn_seeds(1, 3)
    assert seeds != spawn_seeds(2, 5)


def test_run_instance_toblerone():
    row = run_instance(Instance(family="toblerone", params=(("k", 3), ("m", 98), ("n", 1))))
    cells = row.cells()
    assert cells[:9] == ["toblerone", "k=3;m=98;n=1", "", "3", "99", "50/1", "99/50", "99/100", "worst_case:2/1"]
    assert cells[9] == "1.980000"


def test_render_csv_header():
    text = render_csv([])
    assert text == ",".join(CSV_HEADER) + "\n"


def test_rho_sweep_meets_the_bound():
    experiment, args = _args("rho-sweep", ["--k", "4", "--m", "4", "--resolution", "1"])
    rows = run_experiment(experiment, args, workers=1)
    assert [r.params for r in rows] == ["k=4;m=4;rho=1/2", "k=4;m=4;rho=3/4", "k=4;m=4;rho=1"]
    for row in rows:
        assert row.bound_name == "rho"
        assert row.pof == row.bound
    assert [r.pof for r in rows] == [F(3, 2), F(3, 2), F(1)]


def test_rho_sweep_validation():
    experiment, args = _args("rho-sweep", ["--k", "2"])
    with pytest.raises(InvalidParameterError):
        experiment.instances(args)


def test_integral_gap_rows():
    experiment, args = _args("integral-gap", ["--pairs", "2:3"])
    rows = run_experiment(experiment, args, workers=1)
    assert [r.cells()[6] for r in rows] == ["1/1", "inf"]


def test_k2_experiment_is_always_fair():
    experiment, args = _args("k2-always-fair", ["--trials", "20", "--n", "12"])
    rows = run_experiment(experiment, args, workers=1)
    assert len(rows) == 20
    assert all(r.pof == 1 for r in rows)
    assert len({r.seed for r in rows}) == 20


def test_toblerone_sweep_is_increasing():
    experiment, args = _args("toblerone-sweep", ["--k", "4", "--m", "1..20"])
    values = [r.pof for r in run_experiment(experiment, args, workers=1)]
    assert values == sorted(values)
    assert all(v < 3 for v in values)


@pytest.mark.slow
def test_parallel_run_matches_serial():
    experiment, args = _args("er-dense", ["--trials", "4", "--n", "40", "--k", "3"])
    serial = [r.cells() for r in run_experiment(experiment, args, workers=1)]
    parallel = [r.cells() for r in run_experiment(experiment, args, workers=2)]
    assert serial == parallel
