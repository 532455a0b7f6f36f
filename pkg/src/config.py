"""
Configuration management for the skew cyclic code toolkit.
"""
import logging
from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.utils.errors import ConfigurationError

OUTPUT_FORMATS = ("json", "text")


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_prefix="SKEWCODE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="WARNING")
    log_json: bool = Field(default=False)

    # Enumeration guards
    enumeration_guard: int = Field(default=2**24, description="Max codewords enumerated")
    factor_search_guard: int = Field(default=2_000_000, description="Max factor candidates tried")
    syndrome_pattern_guard: int = Field(default=1_000_000, description="Max error patterns tabulated")
    enumeration_block: int = Field(default=2**16, description="Codewords per vectorized block")

    # Execution
    workers: int = Field(default=1, description="Process pool size for factor searches")

    # Output
    output_format: str = Field(default="json")
    fixtures_dir: Optional[Path] = Field(default=None)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown log level: {v}")
        return level

    @field_validator("output_format")
    @classmethod
    def validate_output_format(cls, v: str) -> str:
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"output format must be one of {', '.join(OUTPUT_FORMATS)}")
        return v

    @field_validator(
        "enumeration_guard", "factor_search_guard", "syndrome_pattern_guard", "enumeration_block", "workers"
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be >= 1")
        return v


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def get_fixtures_dir() -> Path:
    """Directory holding the golden fixtures."""
    configured = get_settings().fixtures_dir
    if configured is not None:
        if not Path(configured).is_dir():
            raise ConfigurationError(f"fixtures directory not found: {configured}", config_key="fixtures_dir")
        return Path(configured)
    return Path(__file__).parent / "fixtures"
