"""Configuration settings for the devpatch command line."""

from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from DEVPATCH_* environment variables and .env; flags override them."""

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", env_prefix="DEVPATCH_")

    # Sampling
    samples: int = 257
    refine_levels: int = 4
    refine_step: float = 0.05

    # Patch grid (t samples x v samples)
    grid_nt: int = 65
    grid_nv: int = 9

    # Tolerances (residual and curvature normalised, isometry relative)
    tol_residual: float = 1e-8
    tol_curvature: float = 1e-8
    tol_isometry: float = 1e-6
    tol_planarity: float = 1e-9

    # Thread pool size; None uses the executor default
    workers: Optional[int] = None

    # Where solve writes branch files when --out is not given
    output_dir: Path = Path("devpatch-out")

    # Logging
    log_level: str = "WARNING"
    log_format: str = "console"

    @property
    def grid(self) -> tuple[int, int]:
        return self.grid_nt, self.grid_nv


# Global settings instance
settings: Optional[Settings] = None


def load_settings() -> Settings:
    """Load settings from environment variables and .env file."""
    global settings
    settings = Settings()
    return settings


def get_settings() -> Settings:
    """Get the global settings instance, loading if necessary."""
    global settings
    if settings is None:
        settings = load_settings()
    return settings
