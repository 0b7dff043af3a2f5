# fourierlcu/libs/settings.py
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class LibsSettings(BaseSettings):
    """Environment settings. Only the default output directory is read from the environment."""

    output_dir: Path = Field(default=Path("fourierlcu-output"))

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        env_prefix="FOURIERLCU_",
    )


libs_settings = LibsSettings()
