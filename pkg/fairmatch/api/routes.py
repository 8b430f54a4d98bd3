from fastapi import APIRouter, HTTPException

from fairmatch.core.config import settings
from fairmatch.core.errors import FairMatchError
from fairmatch.core.logging import get_logger
from fairmatch.models.schemas import (
    GenerateRequest,
    GraphDocument,
    HealthResponse,
    PofReportModel,
    PofRequest,
    SolveReportModel,
    SolveRequest,
)
from fairmatch.services.generators import generate
from fairmatch.services.orchestrator import orchestrator, pof_to_response, to_response

logger = get_logger(__name__)

router = APIRouter()


def _http_error(e: FairMatchError) -> HTTPException:
    logger.info("request rejected", extra={"error": type(e).__name__, "detail": e.detail})
    return HTTPException(status_code=e.http_status, detail={"error": type(e).__name__, "detail": e.detail})


@router.get("/health", response_model=HealthResponse)
async def health_check():
    """
    Health check endpoint
    """
    return HealthResponse(status="healthy", version=settings.APP_VERSION)


@router.post("/solve", response_model=SolveReportModel, response_model_exclude_none=True)
def solve(request: SolveRequest):
    """
    Compute a fair point for one rule.

    - **lexmax**: serial dictatorship for `sigma` (1-based, default 1..K)
    - **leximin**: weighted waterfilling for the chosen notion
    - **shapley**: exact or sampled Shapley point
    - **fair-optimum**: largest w-proportional point, with c*

    Rationals are returned as "p/q" strings.
    """
    try:
        graph = request.graph.to_graph()
        solution = orchestrator.solve(
            graph,
            request.rule,
            sigma=request.sigma,
            notion=request.notion,
            weights=request.weights,
            mode=request.mode,
            samples=request.samples,
            seed=request.seed,
            emit_matching=request.emit_matching,
        )
        return SolveReportModel(**to_response(solution))
    except FairMatchError as e:
        raise _http_error(e)


@router.post("/pof", response_model=PofReportModel)
def price_of_fairness(request: PofRequest):
    """
    Price of Fairness report; `bounds` adds the closed-form bounds and the
    decreasing-rates check (guarded by `max_k`).
    """
    try:
        report = orchestrator.pof(
            request.graph.to_graph(),
            notion="custom" if request.weights is not None else request.notion,
            weights=request.weights,
            bounds=request.bounds,
            integral=request.integral,
            max_k=request.max_k,
        )
        return PofReportModel(**pof_to_response(report))
    except FairMatchError as e:
        raise _http_error(e)


@router.post("/generate", response_model=GraphDocument)
def generate_graph(request: GenerateRequest):
    """
    Build an instance family; the response is a graph document that can be
    posted straight back to /solve or /pof.
    """
    try:
        graph = generate(request.family, request.params, seed=request.seed or settings.DEFAULT_SEED)
        return GraphDocument.from_graph(graph)
    except FairMatchError as e:
        raise _http_error(e)
