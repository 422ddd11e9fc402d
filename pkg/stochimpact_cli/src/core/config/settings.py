import logging
from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from stochimpact_cli.cli.constants import DEFAULT_OUTPUT_DIR


logger = logging.getLogger("stochimpact.settings")

_LOG_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


class Settings(BaseSettings):
    """
    Process-level settings read from the environment (prefix ``STOCHIMPACT_``) and ``.env``.

    Attributes:
        LOG_LEVEL (str): Default logging level when neither --verbose nor --quiet is given.
        WORKERS (int): Number of Monte Carlo worker processes. 1 runs in-process.
        BATCH_SIZE (int): Paths simulated together in one vectorized batch.
        OUTPUT_DIR (str): Default directory for run artifacts.
    """

    LOG_LEVEL: str = "INFO"
    WORKERS: int = 1
    BATCH_SIZE: int = 500
    OUTPUT_DIR: str = DEFAULT_OUTPUT_DIR

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_level(cls, v: str | None) -> str:
        """Normalize LOG_LEVEL to an upper-case level name."""
        level = (v or "INFO").upper()
        if level not in _LOG_LEVELS:
            logger.warning("Unknown LOG_LEVEL %r, falling back to INFO", v)
            return "INFO"
        return level

    @field_validator("WORKERS", "BATCH_SIZE")
    @classmethod
    def at_least_one(cls, v: int) -> int:
        """Clamp worker and batch counts to at least one."""
        if v < 1:
            logger.warning("Non-positive worker/batch setting %s replaced by 1", v)
            return 1
        return v

    model_config = SettingsConfigDict(env_prefix="STOCHIMPACT_", env_file=".env", extra="ignore")


@lru_cache
def get_settings() -> Settings:
    """
    Retrieve and return the process settings.

    Returns:
        Settings: Cached settings instance built from environment variables and .env.
    """
    logger.debug("Loading settings from environment variables and .env if present")
    return Settings()
