from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Library and CLI settings, overridable through POLYFLOW_* environment variables"""

    # Logging
    LOG: str = "WARNING"

    # Reproducibility
    SEED: int = 20240517

    # Roots
    SEPARATION_RTOL: float = 1e-7
    MAX_DEGREE: int = 16

    # Coefficient evolution
    EVENT_TOL: float = 1e-12
    DRIFT_TOL: float = 1e-9
    STEPS_PER_UNIT: int = 256
    MAX_STEPS: int = 200_000
    MAX_HALVINGS: int = 12

    # Oracle
    ORACLE_TOL: float = 1e-12
    ORACLE_MAX_ITER: int = 5000

    # Dynamics
    DYNAMICS_STEP: float = 1e-3
    COULOMB_CUTOFF: float = 0.05

    # Batch processing
    WORKERS: int = 1

    model_config = SettingsConfigDict(env_prefix="POLYFLOW_", env_file=".env", extra="ignore")


@lru_cache
def get_settings() -> Settings:
    """Get settings"""
    return Settings()


settings = get_settings()
