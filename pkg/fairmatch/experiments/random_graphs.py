"""
Random-graph experiments. Each trial gets its own seed spawned from the
master seed, so trials are independent and any single row can be
regenerated with `gen er --seed <seed>`.
"""

import argparse
from fractions import Fraction

from fairmatch.core.rational import parse_rational, parse_vector
from fairmatch.experiments.base import Experiment, Instance, spawn_seeds
from fairmatch.services.generators import resolve_probability


class _ErExperiment(Experiment):
    default_trials = 50
    default_n = 200
    default_k = 2
    default_p = "auto-dense"
    default_seed = 0
    bound = "maxmin"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--trials", type=int, default=self.default_trials)
        parser.add_argument("--n", type=int, default=self.default_n)
        parser.add_argument("--k", type=int, default=self.default_k, help="groups, uniform alpha")
        parser.add_argument("--beta", default="1/2")
        parser.add_argument("--alpha", default=None, help="comma-separated; overrides --k")
        parser.add_argument("--p", default=self.default_p,
                            help="rational, auto-dense (log^2 n / n) or auto-sparse (1/(4 n^1.5))")
        parser.add_argument("--seed", type=int, default=self.default_seed)

    def instances(self, args: argparse.Namespace) -> list[Instance]:
        alpha = parse_vector(args.alpha) if args.alpha else (Fraction(1, args.k),) * args.k
        p = resolve_probability(args.p, args.n)
        beta = parse_rational(args.beta)
        seeds = spawn_seeds(args.seed, args.trials)
        return [
            Instance(
                family="er",
                params=(("trial", t), ("n", args.n), ("k", len(alpha)), ("beta", beta), ("p", p)),
                seed=seed,
                bound=self.bound,
                extra=(("alpha", alpha), ("p", (p,) * len(alpha))),
            )
            for t, seed in enumerate(seeds)
        ]


class K2AlwaysFair(_ErExperiment):
    name = "k2-always-fair"
    description = "K=2 random graphs; opportunity PoF is exactly 1 on every instance"
    default_trials = 100
    default_n = 20
    default_seed = 1
    bound = "worst_case"


class ErDense(_ErExperiment):
    name = "er-dense"
    description = "dense regime p = log^2(n)/n"


class ErSparse(_ErExperiment):
    name = "er-sparse"
    description = "sparse regime p = 1/(4 n^1.5)"
    default_n = 400
    default_p = "auto-sparse"
