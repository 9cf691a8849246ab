"""
Configuration manager for engine settings.
Reads config/engine.yml and applies environment overrides.
"""
import logging
import os
from pathlib import Path
from typing import Any, Dict

import yaml

from .schemas import EngineSettings

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_DIR = "config"


class ConfigManager:
    """Loads and validates engine settings."""

    def __init__(self, config_dir: str = DEFAULT_CONFIG_DIR):
        """
        Initialize config manager.

        Args:
            config_dir: Path to configuration directory
        """
        self.config_dir = Path(os.getenv("MULTICOVER_CONFIG_DIR", config_dir))
        self.engine_file = self.config_dir / "engine.yml"

    def load_raw(self) -> Dict[str, Any]:
        """Raw YAML data, empty when the file is missing."""
        if not self.engine_file.exists():
            logger.debug(f"No {self.engine_file}, using defaults")
            return {}

        with open(self.engine_file, 'r') as f:
            data = yaml.safe_load(f)

        return data if data else {}

    def load_settings(self) -> EngineSettings:
        """
        Load and validate engine settings.

        Returns:
            EngineSettings: Validated settings with environment overrides applied

        Raises:
            ValueError: If the configuration is invalid
        """
        data = self.load_raw()
        self._apply_env_overrides(data)
        try:
            return EngineSettings(**data)
        except Exception as e:
            raise ValueError(f"Invalid engine configuration: {e}")

    @staticmethod
    def _apply_env_overrides(data: Dict[str, Any]) -> None:
        if os.getenv("MULTICOVER_LOG_LEVEL"):
            data.setdefault("logging", {})["level"] = os.getenv("MULTICOVER_LOG_LEVEL")
        if os.getenv("MULTICOVER_STATE_LIMIT"):
            data.setdefault("solver", {})["state_limit"] = int(os.getenv("MULTICOVER_STATE_LIMIT"))
