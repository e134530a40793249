"""Core configuration management for the birth process simulation lab"""

from pathlib import Path

from pydantic import field_validator, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Main settings class for the application, loaded from the environment and an optional .env file.
    """
    APP_NAME: str = "Spatial Birth Process Growth Lab"
    log_level: str = Field(
        "INFO",
        validation_alias="LOG_LEVEL",
        description="Logging level for the application"
    )
    log_file_path: str = Field(
        "logs/birth_process.log.json",
        validation_alias="BIRTH_LOG_FILE",
        description="JSON log file; an empty string disables file logging"
    )
    output_dir: Path = Field(
        Path("output"),
        validation_alias="BIRTH_OUTPUT_DIR",
        description="Default directory for event logs, CSV bundles and reports"
    )
    max_events: int = Field(
        100_000_000,
        validation_alias="BIRTH_MAX_EVENTS",
        ge=1,
        description="Explosion guard: hard cap on events per simulation run"
    )
    n_jobs: int = Field(
        1,
        validation_alias="BIRTH_N_JOBS",
        description="Worker processes for replica fan-out (joblib semantics, -1 = all cores)"
    )

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )

    @field_validator('log_level')
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        allowed_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if v.upper() not in allowed_levels:
            raise ValueError(f'Log level must be one of {allowed_levels}')
        return v.upper()

    @field_validator('n_jobs')
    @classmethod
    def validate_n_jobs(cls, v: int) -> int:
        if v == 0 or v < -1:
            raise ValueError('n_jobs must be a positive integer or -1')
        return v


settings = Settings()
