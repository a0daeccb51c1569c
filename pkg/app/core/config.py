"""Library and command-line configuration management."""

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from WITT_RESIDUE_* environment variables."""

    # Reproducibility
    seed: int = Field(default=0, description="Default seed for random sections")
    trials: int = Field(default=50, ge=1)
    sample_box: int = Field(
        default=3,
        ge=1,
        le=100,
        description="Random coefficients are drawn from [-box, box]",
    )

    # Truncation orders
    torder: int = Field(default=8, ge=1, le=256, description="t-truncation order N")
    sorder: int = Field(default=6, ge=1, le=64, description="s-truncation order M")
    mmax: int = Field(default=4, ge=1, le=12, description="Deepest Witt level checked")

    # Polynomial algebra
    monomial_order: Literal["wdeg", "grlex", "grevlex"] = "wdeg"

    # Output
    report_format: Literal["json", "text"] = "json"
    log_level: str = "WARNING"

    model_config = SettingsConfigDict(
        env_prefix="WITT_RESIDUE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


settings = Settings()
