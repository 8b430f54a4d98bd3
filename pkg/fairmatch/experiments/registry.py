"""
Registro de experimentos.

Agregar un experimento nuevo = escribir la clase y sumarla aqui. Nada mas cambia.
"""

from fairmatch.experiments.base import Experiment
from fairmatch.experiments.constructions import IntegralGap, RhoSweep, TobleroneSweep
from fairmatch.experiments.random_graphs import ErDense, ErSparse, K2AlwaysFair


def build_experiments() -> dict[str, Experiment]:
    experiments: list[Experiment] = [
        K2AlwaysFair(),
        TobleroneSweep(),
        RhoSweep(),
        ErDense(),
        ErSparse(),
        IntegralGap(),
    ]
    return {e.name: e for e in experiments}
