"""
Command-line surface: python -m fairmatch <command>.

stdout carries the JSON report (or CSV for experiments); logs and errors
go to stderr. Exit codes: 0 ok, 1 bad input, 2 infeasible, 3 guard hit.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from fairmatch.core.config import settings
from fairmatch.core.errors import FairMatchError, InvalidParameterError
from fairmatch.core.logging import configure_logging, get_logger
from fairmatch.core.policy import policy
from fairmatch.experiments.base import render_csv, run_experiment
from fairmatch.experiments.registry import build_experiments
from fairmatch.models.graph import BipartiteGraph
from fairmatch.models.schemas import PofReportModel, SolveReportModel, parse_graph, serialize_graph
from fairmatch.services import brute, generators
from fairmatch.services.orchestrator import orchestrator, pof_to_response, to_response

logger = get_logger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InvalidParameterError(message)


def _read_graph(path: str) -> BipartiteGraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidParameterError(f"cannot read graph file {path!r}: {e.strerror}") from e
    return parse_graph(text)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text + ("" if text.endswith("\n") else "\n"), encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _int_list(text: Optional[str]) -> Optional[list[int]]:
    if text is None:
        return None
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as e:
        raise InvalidParameterError(f"not an integer list: {text!r}") from e


def _str_list(text: Optional[str]) -> Optional[list[str]]:
    return None if text is None else [p.strip() for p in text.split(",") if p.strip()]


# ---- commands ----

def cmd_solve(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    solution = orchestrator.solve(
        graph,
        args.rule,
        sigma=_int_list(args.sigma),
        notion=args.notion,
        weights=_str_list(args.weights),
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
        emit_matching=args.emit_matching,
    )
    report = SolveReportModel(**to_response(solution))
    _emit(report.model_dump_json(indent=2, exclude_none=True), args.out)
    return 0


def cmd_pof(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    report = orchestrator.pof(
        graph,
        notion=args.notion,
        weights=_str_list(args.weights),
        bounds=args.bounds,
        integral=args.integral,
        max_k=args.max_k,
        seed=args.seed,
    )
    _emit(PofReportModel(**pof_to_response(report)).model_dump_json(indent=2), args.out)
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    params = {
        k: v for k, v in vars(args).items()
        if k not in {"command", "family", "seed", "out", "handler", "log_level"} and v is not None
    }
    graph = generators.generate(args.family, params, seed=args.seed)
    logger.info("graph generated", extra={"family": args.family, "jobs": len(graph.jobs),
                                          "agents": len(graph.agents), "edges": len(graph.edges)})
    _emit(serialize_graph(graph), args.out)
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    experiment = build_experiments()[args.name]
    rows = run_experiment(experiment, args, workers=args.workers)
    _emit(render_csv(rows), args.out)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    points = brute.enumerate_points(graph, max_edges=args.max_edges)
    payload = {
        "points": sorted(list(p) for p in points.points),
        "pareto": sorted(list(p) for p in points.pareto),
        "opt": {
            ",".join(str(i + 1) for i in range(graph.k) if mask >> i & 1) or "-": points.opt(mask)
            for mask in range(1 << graph.k)
        } if graph.k <= settings.SHAPLEY_EXACT_MAX_K else None,
        "discrete_polymatroid": brute.check_discrete_polymatroid(points.points),
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


# ---- parser ----

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fairmatch", description="Fair bipartite matching toolkit")
    parser.add_argument("--log-level", default=None, help="overrides LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute a fair point")
    p.add_argument("graph", help="graph file, - for stdin")
    p.add_argument("--rule", required=True, choices=["lexmax", "leximin", "shapley", "fair-optimum"])
    p.add_argument("--sigma", help="1-based priority order, e.g. 2,1")
    p.add_argument("--notion", choices=policy.NOTIONS)
    p.add_argument("--weights", help="custom weights, e.g. 2,1/2")
    p.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--emit-matching", action="store_true")
    p.add_argument("-o", "--out")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("pof", help="price of fairness report")
    p.add_argument("graph")
    p.add_argument("--notion", choices=policy.NOTIONS, default="opportunity")
    p.add_argument("--weights")
    p.add_argument("--bounds", action="store_true")
    p.add_argument("--integral", action="store_true")
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(handler=cmd_pof)

    p = sub.add_parser("gen", help="generate an instance")
    fam = p.add_subparsers(dest="family", required=True)
    for name, flags in (
        ("toblerone", ("k", "m", "n")),
        ("tight-halves", ("k", "m")),
        ("rho-tight", ("k", "m", "rho")),
        ("prime", ("m1", "m2")),
        ("complete", ("k", "sizes", "jobs")),
        ("er", ("n", "k", "beta", "alpha", "p")),
        ("paired", ("pairs",)),
    ):
        f = fam.add_parser(name)
        for flag in flags:
            f.add_argument(f"--{flag}")
        f.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
        f.add_argument("-o", "--out")
        f.set_defaults(handler=cmd_gen)

    p = sub.add_parser("experiment", help="run a named experiment, CSV out")
    names = p.add_subparsers(dest="name", required=True)
    for name, experiment in build_experiments().items():
        e = names.add_parser(name, help=experiment.description)
        experiment.add_arguments(e)
        e.add_argument("--workers", type=int, default=None)
        e.add_argument("--out")
        e.set_defaults(handler=cmd_experiment)

    p = sub.add_parser("oracle", help="brute-force enumeration of a tiny graph")
    p.add_argument("graph")
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("-o", "--out")
    p.set_defaults(handler=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        configure_logging(level=args.log_level)
        logger.info("command started", extra={"command": args.command})
        code = args.handler(args)
        logger.info("command finished", extra={"command": args.command})
        return code
    except FairMatchError as e:
        sys.stderr.write(json.dumps({"error": type(e).__name__, "detail": e.detail}) + "\n")
        return e.exit_code


