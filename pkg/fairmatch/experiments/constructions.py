"""
Sweeps over the deterministic worst-case constructions.
"""

import argparse
import math
from fractions import Fraction

from fairmatch.core.errors import InvalidParameterError
from fairmatch.experiments.base import Experiment, Instance, parse_range


class TobleroneSweep(Experiment):
    name = "toblerone-sweep"
    description = "one independent group against K-1 competing ones; PoF climbs toward K-1"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--k", default="3", help='e.g. "3" or "3..5"')
        parser.add_argument("--n", default="1")
        parser.add_argument("--m", default="1..100")

    def instances(self, args: argparse.Namespace) -> list[Instance]:
        return [
            Instance(family="toblerone", params=(("k", k), ("m", m), ("n", n)))
            for k in parse_range(args.k)
            for n in parse_range(args.n)
            for m in parse_range(args.m)
        ]


class RhoSweep(Experiment):
    name = "rho-sweep"
    description = "rho-tight graphs on a grid of rho; PoF against the rho bound"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--k", type=int, default=10)
        parser.add_argument("--m", type=int, default=40)
        parser.add_argument("--resolution", type=int, default=4,
                            help="grid step for rho is 1/(K*resolution)")

    def instances(self, args: argparse.Namespace) -> list[Instance]:
        k, m, res = args.k, args.m, args.resolution
        if k < 3 or m < 1 or res < 1:
            raise InvalidParameterError("rho-sweep needs K >= 3, M >= 1 and resolution >= 1")
        out = []
        lo = Fraction(1, k - 1)
        for j in range(1, k * res + 1):
            rho = Fraction(j, k * res)
            if rho < lo:
                continue
            private = (k * rho - math.floor(k * rho)) * m
            if private.denominator != 1:
                continue
            out.append(Instance(family="rho-tight", params=(("k", k), ("m", m), ("rho", rho)), bound="rho"))
        return out


class IntegralGap(Experiment):
    name = "integral-gap"
    description = "prime pairs: fractional fair size > 0 while only 0 is integral-fair"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--pairs", default="2:3,3:5,5:7", help="comma-separated M1:M2 prime pairs")

    def instances(self, args: argparse.Namespace) -> list[Instance]:
        out = []
        for pair in args.pairs.split(","):
            try:
                m1, m2 = (int(p) for p in pair.split(":"))
            except ValueError as e:
                raise InvalidParameterError(f"not a prime pair: {pair!r}") from e
            for integral in (0, 1):
                out.append(Instance(
                    family="prime",
                    params=(("m1", m1), ("m2", m2), ("integral", integral)),
                    integral=bool(integral),
                ))
        return out
