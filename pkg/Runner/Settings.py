from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict

TOOL_VERSION = "1.0.0"


class RunnerSettings(BaseSettings):
    """the output directory is the only thing read from the environment"""

    OUTPUT_DIR: Optional[str] = None

    model_config = SettingsConfigDict(env_prefix="ILLUSION_")
