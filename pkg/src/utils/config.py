"""Configuration management."""

import os

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings from environment variables (prefix SLICEPLACER_)."""

    model_config = SettingsConfigDict(
        env_prefix='SLICEPLACER_',
        env_file='.env',
        env_file_encoding='utf-8',
        case_sensitive=False,
        extra='ignore'
    )

    log_level: str = "INFO"

    # Model construction
    pair_mode: str = "direct"
    pin_endpoints: bool = False
    max_variables: int = 2_000_000

    # Search limits
    time_limit_s: float = 10.0
    node_budget: int = 5_000_000
    tie_break_node_budget: int = 50_000

    # Experiment harness
    workers: int = min(8, os.cpu_count() or 1)
    repetitions: int = 100
    master_seed: int = 2019


settings = Settings()
