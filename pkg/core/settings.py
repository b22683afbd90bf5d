from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    log_level: str = Field(default="WARNING", alias="QP_LOG_LEVEL")
    enumeration_budget: int = Field(default=100_000, ge=1, alias="QP_ENUMERATION_BUDGET")
    jobs: int = Field(default=1, ge=1, alias="QP_JOBS")
    journal_db_file: Optional[str] = Field(default=None, alias="QP_JOURNAL_DB")

    # .env is read when the singleton is built, before any module consults it
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        frozen=True,
        extra="ignore",
        populate_by_name=True,
    )


settings = Settings()
