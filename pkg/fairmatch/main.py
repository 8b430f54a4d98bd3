from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from fairmatch.api.routes import router
from fairmatch.core.config import settings
from fairmatch.core.logging import configure_logging, get_logger

logger = get_logger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    configure_logging()
    logger.info("starting", extra={"app": settings.APP_NAME, "version": settings.APP_VERSION,
                                   "docs": "/docs", "health": f"{settings.API_V1_PREFIX}/health"})
    yield
    logger.info("shutting down", extra={"app": settings.APP_NAME})


# Create FastAPI app
app = FastAPI(
    title=settings.APP_NAME,
    version=settings.APP_VERSION,
    description="""
    ## Fair Matching Toolkit

    Exact group-fair bipartite matchings:

    * **Lexicographic maxima** - serial dictatorship for a group priority order
    * **Leximin** - weighted waterfilling over the group polytope
    * **Shapley matching** - average marginal contribution of each group
    * **Fair optimum** - largest point proportional to a weight notion
    * **Price of Fairness** - with the closed-form worst-case, maxmin and rho bounds

    All numbers are exact rationals, serialized as "p/q".
    """,
    docs_url="/docs",
    redoc_url="/redoc",
    openapi_url="/openapi.json",
    lifespan=lifespan,
)

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.ALLOWED_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include API routes
app.include_router(router, prefix=settings.API_V1_PREFIX, tags=["Fair Matching"])


@app.get("/")
async def root():
    """
    Root endpoint with API information
    """
    return {
        "name": settings.APP_NAME,
        "version": settings.APP_VERSION,
        "docs": "/docs",
        "health": f"{settings.API_V1_PREFIX}/health",
        "endpoints": {
            "solve": f"{settings.API_V1_PREFIX}/solve",
            "pof": f"{settings.API_V1_PREFIX}/pof",
            "generate": f"{settings.API_V1_PREFIX}/generate",
        },
    }
