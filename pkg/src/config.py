"""Configuration management for the contextuality workbench.

Loads numeric defaults from a qcw.toml file and environment variables.
"""

import os
import sys
from pathlib import Path
from typing import Dict, Any, Optional
import toml
from dataclasses import dataclass


@dataclass
class ToleranceConfig:
    """Tolerances for physics assertions and construction algebra."""
    physics: float = 1e-9
    algebra: float = 1e-12


@dataclass
class OptimizerConfig:
    """Power-iteration settings for the eigen-optimum search."""
    restarts: int = 8
    iters: int = 20000
    tol: float = 1e-13


@dataclass
class SimulationConfig:
    """Monte Carlo measurement simulator settings."""
    shots: int = 100_000
    noise: float = 0.0
    seed: int = 0
    probability_floor: float = 1e-15


@dataclass
class MajoranaConfig:
    """Root finder and constellation settings."""
    root_tol: float = 1e-10
    merge_tol: float = 1e-6
    max_iter: int = 500


@dataclass
class OutputConfig:
    """Serialization and figure settings."""
    json_digits: int = 15
    svg_digits: int = 9
    columns: int = 3


@dataclass
class LoggingConfig:
    """Log file configuration."""
    log_dir: str = "/tmp/qcw/logs"
    enable_file_logging: bool = False
    max_log_size_mb: int = 10
    backup_count: int = 5
    level: str = "INFO"


class Config:
    """Main configuration class."""

    def __init__(self):
        self.tolerance = ToleranceConfig()
        self.optimizer = OptimizerConfig()
        self.simulation = SimulationConfig()
        self.majorana = MajoranaConfig()
        self.output = OutputConfig()
        self.logging = LoggingConfig()
        self.source: Optional[Path] = None
        self._load_config()

    def _find_config_file(self) -> Optional[Path]:
        """Find the qcw.toml file."""
        search_paths = [
            Path("qcw.toml"),
            Path.home() / ".config" / "qcw" / "qcw.toml",
            Path("/etc/qcw/qcw.toml"),
        ]

        if env_path := os.environ.get("QCW_CONFIG"):
            search_paths.insert(0, Path(env_path))

        for path in search_paths:
            if path.exists():
                return path

        return None

    def _load_config(self):
        """Load configuration from file, then let environment variables override it."""
        config_file = self._find_config_file()

        if config_file:
            try:
                config_data = toml.load(config_file)
                self._apply_config(config_data)
                self.source = config_file
            except Exception as e:
                print(f"Warning: Failed to load config from {config_file}: {e}", file=sys.stderr)

        self._load_from_env()

    def _apply_config(self, config_data: Dict[str, Any]):
        """Apply configuration from dictionary."""
        sections = {
            "tolerance": self.tolerance,
            "optimizer": self.optimizer,
            "simulation": self.simulation,
            "majorana": self.majorana,
            "output": self.output,
            "logging": self.logging,
        }
        for name, section in sections.items():
            for key, value in config_data.get(name, {}).items():
                if hasattr(section, key):
                    setattr(section, key, value)

    def _load_from_env(self):
        """Load overrides from environment variables."""
        self.simulation.seed = int(os.getenv("QCW_SEED", self.simulation.seed))
        self.simulation.shots = int(os.getenv("QCW_SHOTS", self.simulation.shots))
        self.tolerance.physics = float(os.getenv("QCW_TOL", self.tolerance.physics))
        self.logging.log_dir = os.getenv("QCW_LOG_DIR", self.logging.log_dir)
        self.logging.level = os.getenv("QCW_LOG_LEVEL", self.logging.level)


# Global configuration instance
config = Config()
