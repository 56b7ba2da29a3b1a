"""
Process-level configuration for semiq using Pydantic settings.
"""

from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic import field_validator
from pydantic_settings import BaseSettings
from pydantic_settings import SettingsConfigDict

from .exceptions import ConfigurationError


class Settings(BaseSettings):
    """Settings loaded from SEMIQ_* environment variables and an optional .env file."""

    model_config = SettingsConfigDict(
        env_prefix="SEMIQ_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: str = Field("INFO", description="Application log level")
    environment: str = Field("development", description="Runtime environment")
    debug_mode: bool = Field(False, description="Enable debug features")
    workers: int = Field(1, description="Default worker pool size for regime sweeps")
    output_dir: Path = Field(Path("."), description="Directory relative output paths resolve to")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is supported."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        v_upper = v.upper()
        if v_upper not in valid_levels:
            from pydantic_core import PydanticCustomError

            raise PydanticCustomError(
                "value_error",
                f"Log level must be one of: {', '.join(sorted(valid_levels))}",
                {"reason": f"Log level must be one of: {', '.join(sorted(valid_levels))}"},
            )
        return v_upper

    @field_validator("workers")
    @classmethod
    def validate_workers(cls, v: int) -> int:
        """Validate the pool size is at least one."""
        if v < 1:
            from pydantic_core import PydanticCustomError

            raise PydanticCustomError(
                "value_error",
                "Worker count must be at least 1",
                {"reason": "Worker count must be at least 1"},
            )
        return v

    @property
    def is_development(self) -> bool:
        """Check if running in development mode."""
        return self.environment.lower() == "development"


@lru_cache
def get_settings() -> Settings:
    """Get cached process settings."""
    try:
        return Settings()
    except Exception as e:
        raise ConfigurationError(f"Failed to load settings: {str(e)}") from e
