"""
Orquestador: un punto de entrada por reporte.

No sabe COMO se calcula una regla; solo resuelve los pesos via la
politica, elige el servicio y comparte un OptOracle entre todas las
llamadas sobre el mismo grafo. Incluye to_response() y pof_to_response()
que mapean los resultados al contrato JSON. El CLI y las rutas HTTP pasan
todos por aca.
"""

import time
from typing import Any, Optional, Sequence

from fairmatch.core.errors import InvalidParameterError
from fairmatch.core.logging import get_logger
from fairmatch.core.policy import Policy, policy
from fairmatch.core.rational import format_rational, format_vector
from fairmatch.core.results import FairSolution, PofReport, Rule
from fairmatch.models.graph import BipartiteGraph
from fairmatch.services import analysis, fairness
from fairmatch.services.oracle import OptOracle

logger = get_logger(__name__)


class Orchestrator:
    def __init__(self, pol: Optional[Policy] = None):
        self.policy = pol or policy

    def solve(
        self,
        graph: BipartiteGraph,
        rule: str,
        sigma: Optional[Sequence[int]] = None,
        notion: Optional[str] = None,
        weights: Optional[Sequence] = None,
        mode: str = "exact",
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        emit_matching: bool = False,
    ) -> FairSolution:
        """sigma is 1-based here, as users write it."""
        start = time.time()
        try:
            rule = Rule(rule)
        except ValueError:
            raise InvalidParameterError(f"unknown rule {rule!r}") from None
        oracle = OptOracle(graph)

        if rule is Rule.LEXMAX:
            if sigma is None:
                sigma = range(1, graph.k + 1)
            order = tuple(int(s) - 1 for s in sigma)
            solution = fairness.serial_dictatorship(graph, order, oracle, with_matching=emit_matching)
        elif rule is Rule.SHAPLEY:
            solution = fairness.shapley_solution(
                graph, mode, samples, seed, oracle, with_matching=emit_matching
            )
        else:
            if notion is None:
                notion = "custom" if weights is not None else self.policy.RULE_DEFAULT_NOTION[rule.value]
            w = self.policy.weights(notion, graph, oracle, custom=weights, seed=seed)
            if rule is Rule.LEXIMIN:
                solution = fairness.leximin(graph, w, oracle, with_matching=emit_matching)
            else:
                solution = fairness.fair_optimum(graph, w, oracle, with_matching=emit_matching)
            solution.detail["notion"] = notion

        logger.info(
            "rule solved",
            extra={"rule": rule.value, "k": graph.k, "elapsed_ms": round((time.time() - start) * 1000, 2)},
        )
        return solution

    def pof(
        self,
        graph: BipartiteGraph,
        notion: str = "opportunity",
        weights: Optional[Sequence] = None,
        bounds: bool = False,
        integral: bool = False,
        max_k: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> PofReport:
        oracle = OptOracle(graph)
        w = self.policy.weights(notion, graph, oracle, custom=weights, seed=seed)
        if bounds:
            return analysis.pof_with_bounds(graph, w, notion, integral, max_k, oracle)
        return analysis.pof(graph, w, notion, integral, oracle)


def _group_list(groups) -> Optional[list[int]]:
    return None if groups is None else sorted(i + 1 for i in groups)


def to_response(s: FairSolution) -> dict[str, Any]:
    """FairSolution -> SolveReportModel payload; rationals as "p/q"."""
    payload: dict[str, Any] = {
        "rule": s.rule.value,
        "point": [format_rational(c) for c in s.point],
        "point_text": format_vector(s.point),
        "size": format_rational(s.size),
        "notion": s.detail.get("notion"),
        "weights": [format_rational(c) for c in s.weights] if s.weights is not None else None,
        "sigma": [i + 1 for i in s.sigma] if s.sigma is not None else None,
        "c_star": format_rational(s.c_star) if s.c_star is not None else None,
        "tight_set": _group_list(s.tight_set),
        "mode": s.detail.get("mode"),
        "seed": s.detail.get("seed"),
        "samples": s.detail.get("samples"),
        "matching": None,
    }
    if s.matching is not None:
        payload["matching"] = [
            {"job": job, "agent": agent, "weight": format_rational(w)}
            for (job, agent), w in sorted(s.matching.weights.items())
        ]
    return payload


def pof_to_response(r: PofReport) -> dict[str, Any]:
    """PofReport -> PofReportModel payload; an infinite pof prints as "inf"."""
    payload: dict[str, Any] = {
        "notion": r.notion,
        "w": [format_rational(c) for c in r.w],
        "opt": r.opt,
        "fair_size": format_rational(r.fair_size),
        "pof": "inf" if r.infinite else format_rational(r.pof),
        "c_star": format_rational(r.c_star),
        "argmin": _group_list(r.argmin),
        "rho": format_rational(r.rho) if r.rho is not None else None,
        "additive_gap": format_rational(r.additive_gap),
        "integral": r.integral,
        "bounds": {
            name: (format_rational(v) if v is not None else None) for name, v in r.bounds.items()
        },
        "decreasing": None,
    }
    if r.decreasing is not None:
        d = r.decreasing
        payload["decreasing"] = {
            "holds": d.holds,
            "sigma": [i + 1 for i in d.sigma] if d.sigma is not None else None,
            "index": d.index + 1 if d.index is not None else None,
            "rates": [format_rational(c) for c in d.rates] if d.rates is not None else None,
        }
    return payload


# Singleton
orchestrator = Orchestrator()
