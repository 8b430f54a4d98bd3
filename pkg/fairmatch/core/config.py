from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # App
    APP_NAME: str = "Fair Matching Toolkit"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    # API
    API_V1_PREFIX: str = "/api/v1"

    # CORS
    ALLOWED_ORIGINS: list[str] = ["*"]

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "json"  # json | text

    # Exact arithmetic: max bits of numerator/denominator
    RATIONAL_BITS: int = 128

    # Guards
    SHAPLEY_EXACT_MAX_K: int = 10
    SHAPLEY_DEFAULT_SAMPLES: int = 1000
    DECREASING_MAX_K: int = 8
    ENUMERATION_MAX_EDGES: int = 20
    INTEGRAL_MAX_POINTS: int = 10000

    # Experiments
    EXPERIMENT_WORKERS: int = 1
    DEFAULT_SEED: int = 0

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()
