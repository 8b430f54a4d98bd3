"""
Interfaz base de los experimentos.

Un experimento solo lista sus instancias. Armar el grafo, resolverlo y
formatear la fila CSV es comun, asi todos emiten las mismas columnas. Las
instancias son datos planos para que crucen entre procesos.
"""

import argparse
import csv
import io
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from fairmatch.core.config import settings
from fairmatch.core.errors import BoundNotApplicableError, InvalidParameterError
from fairmatch.core.logging import get_logger
from fairmatch.core.rational import format_rational, parse_rational
from fairmatch.models.graph import BipartiteGraph
from fairmatch.services import analysis, generators
from fairmatch.services.oracle import OptOracle

logger = get_logger(__name__)

CSV_HEADER = ("family", "params", "seed", "k", "opt", "fair_size", "pof", "rho", "bound_used", "pof_decimal")


@dataclass(frozen=True)
class Instance:
    family: str                                 # nombre del generador
    params: tuple[tuple[str, Any], ...]         # ordenado, define la clave de orden
    seed: Optional[int] = None
    bound: str = "worst_case"                   # worst_case | maxmin | rho
    integral: bool = False
    extra: tuple[tuple[str, Any], ...] = ()     # argumentos solo del generador, no se imprimen

    def kwargs(self) -> dict[str, Any]:
        return {**dict(self.params), **dict(self.extra)}

    def sort_key(self) -> tuple:
        return (self.family, tuple(v for _, v in self.params), self.seed if self.seed is not None else -1)


@dataclass
class Row:
    family: str
    params: str
    seed: Optional[int]
    k: int
    opt: int
    fair_size: Fraction
    pof: Optional[Fraction]
    rho: Optional[Fraction]
    bound_name: str
    bound: Optional[Fraction]
    sort_key: tuple = field(default=(), repr=False)

    def cells(self) -> list[str]:
        return [
            self.family,
            self.params,
            "" if self.seed is None else str(self.seed),
            str(self.k),
            str(self.opt),
            format_rational(self.fair_size),
            "inf" if self.pof is None else format_rational(self.pof),
            "" if self.rho is None else format_rational(self.rho),
            f"{self.bound_name}:{'n/a' if self.bound is None else format_rational(self.bound)}",
            "inf" if self.pof is None else f"{float(self.pof):.6f}",
        ]


class Experiment(ABC):
    name: str = "base"
    description: str = ""

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        ...

    @abstractmethod
    def instances(self, args: argparse.Namespace) -> list[Instance]:
        ...


# ---- shared helpers ----

def parse_range(text: str) -> list[int]:
    """"7", "1..10" or "1,5,9" -> list of ints."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as e:
        raise InvalidParameterError(f"not an integer range: {text!r}") from e


def spawn_seeds(seed: int, n: int) -> list[int]:
    """Independent per-instance seeds from one master seed."""
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in np.random.SeedSequence(seed).spawn(n)]


def format_params(params: tuple[tuple[str, Any], ...]) -> str:
    def cell(v: Any) -> str:
        return format_rational(v) if isinstance(v, Fraction) and v.denominator != 1 else str(v)

    return ";".join(f"{k}={cell(v)}" for k, v in params)


def build_graph(instance: Instance) -> BipartiteGraph:
    kw = instance.kwargs()
    family = instance.family
    if family == "er":
        config = generators.ErConfig(
            n=kw["n"],
            beta=parse_rational(str(kw["beta"])),
            alpha=tuple(kw["alpha"]),
            p=tuple(kw["p"]),
            seed=instance.seed or 0,
        )
        return generators.erdos_renyi(config)
    if family == "toblerone":
        return generators.toblerone(kw["k"], kw["m"], kw["n"])
    if family == "tight-halves":
        return generators.tight_halves(kw["k"], kw["m"])
    if family == "rho-tight":
        return generators.rho_tight(kw["k"], kw["m"], kw["rho"])
    if family == "prime":
        return generators.prime_counterexample(kw["m1"], kw["m2"])
    raise InvalidParameterError(f"unknown instance family {family!r}")


def _bound(instance: Instance, graph: BipartiteGraph, oracle: OptOracle, rho) -> tuple[str, Optional[Fraction]]:
    name = instance.bound
    # todas las cotas hablan del cociente fraccional
    if instance.integral:
        return name, None
    try:
        if name == "maxmin":
            return name, analysis.bound_maxmin(graph, oracle)
        if name == "rho":
            if rho is None or len(set(oracle.opportunity)) != 1:
                raise BoundNotApplicableError("rho bound needs all M_i equal")
            return name, analysis.bound_rho(graph.k, rho).tight
    except BoundNotApplicableError:
        return name, None
    return "worst_case", Fraction(analysis.bound_worst_case(graph.k))


def run_instance(instance: Instance) -> Row:
    graph = build_graph(instance)
    oracle = OptOracle(graph)
    w = analysis.opportunity_weights(graph, oracle)
    report = analysis.pof(graph, w, "opportunity", instance.integral, oracle)
    bound_name, bound = _bound(instance, graph, oracle, report.rho)
    return Row(
        family=instance.family,
        params=format_params(instance.params),
        seed=instance.seed,
        k=graph.k,
        opt=report.opt,
        fair_size=report.fair_size,
        pof=report.pof,
        rho=report.rho,
        bound_name=bound_name,
        bound=bound,
        sort_key=instance.sort_key(),
    )


def run_experiment(experiment: Experiment, args: argparse.Namespace, workers: Optional[int] = None) -> list[Row]:
    instances = experiment.instances(args)
    workers = workers or settings.EXPERIMENT_WORKERS
    logger.info("experiment started", extra={"experiment": experiment.name, "instances": len(instances),
                                             "workers": workers})
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_instance, instances))
    else:
        rows = [run_instance(i) for i in instances]
    rows.sort(key=lambda r: r.sort_key)
    logger.info("experiment finished", extra={"experiment": experiment.name, "rows": len(rows)})
    return rows


def render_csv(rows: list[Row]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.cells())
    return buf.getvalue()
