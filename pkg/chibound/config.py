"""
Configuration management using pydantic-settings.

Search budgets, campaign sizing and logging are read from environment variables
(prefix ``CHIBOUND_``) or a ``.env`` file and validated at startup.
"""

from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables or .env file.

    Environment variables take precedence over .env file values.

    Attributes:
        node_budget: Default node budget of every exact search (clique, colouring)
        cover_node_budget: Node budget of the exact multipartite-cover search; past it
            the greedy, uncertified cover is used
        oracle_verify_max_n: Largest graph on which campaigns run the chromatic oracle
        campaign_window: Number of graphs a campaign holds in memory at once
        jobs: Default number of campaign worker processes
        log_level: loguru level name
        log_file: Optional log file path
    """

    node_budget: int = Field(
        default=100_000_000,
        description="Default node budget for exact searches",
    )

    cover_node_budget: int = Field(
        default=200_000,
        description="Node budget for the exact multipartite cover search",
    )

    oracle_verify_max_n: int = Field(
        default=40,
        description="Largest vertex count verified against the chromatic oracle in campaigns",
    )

    campaign_window: int = Field(
        default=256,
        description="Graphs processed (and sorted) per campaign window",
    )

    jobs: int = Field(default=1, description="Default number of campaign worker processes")

    log_level: str = Field(default="INFO", description="loguru log level")

    log_file: str | None = Field(default=None, description="Optional log file path")

    model_config = SettingsConfigDict(
        env_prefix="CHIBOUND_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("node_budget", "cover_node_budget", "campaign_window", "jobs")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Budgets, window and job count must be positive."""
        if v <= 0:
            msg = "value must be a positive integer"
            raise ValueError(msg)
        return v

    @field_validator("oracle_verify_max_n")
    @classmethod
    def validate_non_negative(cls, v: int) -> int:
        """Zero disables oracle verification."""
        if v < 0:
            msg = "oracle_verify_max_n cannot be negative"
            raise ValueError(msg)
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Normalise the level name and reject names loguru does not know."""
        level = v.strip().upper()
        if level not in LOG_LEVELS:
            msg = f"log_level must be one of {LOG_LEVELS}"
            raise ValueError(msg)
        return level


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Get application settings singleton.

    Returns:
        Settings: The application settings instance

    Raises:
        ValidationError: If a setting is invalid

    Example:
        >>> settings = get_settings()
        >>> budget = settings.node_budget
    """
    return Settings()
