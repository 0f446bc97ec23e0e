# src/workbench/__init__.py

from dataclasses import dataclass
from typing import Optional, Callable, Any, Dict, List
import logging
import atexit
from functools import wraps
import os
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler

from rich.console import Console

from ..config import config as default_config
from ..errors import ExitCode, WorkbenchError
from ..formats import write_atomic
from .commands import (
    CommandDispatcher,
    CommandOutcome,
    OutputFormat,
    RunConfig,
    Subcommand,
)


@dataclass
class WorkbenchConfig:
    """Configuration for the workbench system"""
    log_dir: str = "/tmp/qcw/logs"
    max_log_size_mb: int = 10
    backup_count: int = 5
    enable_file_logging: bool = False
    level: str = "INFO"

    @classmethod
    def from_config(cls) -> "WorkbenchConfig":
        section = default_config.logging
        return cls(
            log_dir=section.log_dir,
            max_log_size_mb=section.max_log_size_mb,
            backup_count=section.backup_count,
            enable_file_logging=section.enable_file_logging,
            level=section.level,
        )


def ensure_initialized(func):
    """Decorator to ensure the system is initialized before method calls"""
    @wraps(func)
    def wrapper(self, *args, **kwargs):
        if not self.is_initialized:
            raise RuntimeError("Workbench must be initialized before use")
        return func(self, *args, **kwargs)
    return wrapper


class LogCallbackHandler(logging.Handler):
    """Handler that routes log messages to registered callbacks"""
    def __init__(self, workbench):
        super().__init__()
        self.workbench = workbench

    def emit(self, record):
        try:
            message = self.format(record)
            for callback in self.workbench._callbacks.get("logs", []):
                try:
                    callback(message)
                except Exception:
                    pass  # Avoid recursion in logging
        except Exception:
            pass


class Workbench:
    """
    Owns the qcw logger and runs subcommands.
    Reports and log lines are handed to callbacks registered per update type.
    """

    def __init__(self):
        self.logger: Optional[logging.Logger] = None
        self.dispatcher: Optional[CommandDispatcher] = None
        self.is_initialized: bool = False
        self.config: Optional[WorkbenchConfig] = None
        self._handlers: List[logging.Handler] = []

        self._callbacks: Dict[str, List[Callable[[Any], None]]] = {
            "logs": [],
        }

        atexit.register(self.stop)

    def _setup_log_directory(self) -> str:
        """Create and setup the log directory."""
        log_dir = os.path.abspath(os.path.expanduser(self.config.log_dir))
        os.makedirs(log_dir, exist_ok=True)
        return log_dir

    def _create_internal_logger(self) -> None:
        """Creates and configures the qcw logger with file output and callbacks."""
        self.logger = logging.getLogger("qcw")
        self.logger.setLevel(getattr(logging, str(self.config.level).upper(), logging.INFO))

        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        if self.config.enable_file_logging:
            log_dir = self._setup_log_directory()
            log_filename = f"qcw_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
            log_path = os.path.join(log_dir, log_filename)

            file_handler = RotatingFileHandler(
                log_path,
                maxBytes=self.config.max_log_size_mb * 1024 * 1024,
                backupCount=self.config.backup_count,
                encoding='utf-8'
            )
            file_handler.setFormatter(formatter)
            self._add_handler(file_handler)
            self.logger.info(f"Log file created at: {os.path.abspath(log_path)}")
        else:
            self.logger.debug("File logging disabled")

        callback_handler = LogCallbackHandler(self)
        callback_handler.setFormatter(formatter)
        self._add_handler(callback_handler)

    def _add_handler(self, handler: logging.Handler) -> None:
        self.logger.addHandler(handler)
        self._handlers.append(handler)

    def initialize(
        self,
        logger: Optional[logging.Logger] = None,
        config: Optional[WorkbenchConfig] = None,
        console: Optional[Console] = None,
    ) -> None:
        """Initialize the workbench with optional logger, config and summary console."""
        if self.is_initialized:
            return

        self.config = config or WorkbenchConfig.from_config()

        if logger:
            self.logger = logger
        else:
            self._create_internal_logger()

        self.console = console or Console(stderr=True)
        self.dispatcher = CommandDispatcher(logger=self.logger)
        self.is_initialized = True
        self.logger.debug("Workbench initialized")

    @ensure_initialized
    def register_callback(self, update_type: str, callback: Callable[[Any], None]) -> None:
        """Register a callback for a specific type of update."""
        if update_type not in self._callbacks:
            self.logger.warning(f"Unknown update type '{update_type}'")
            return

        if callback not in self._callbacks[update_type]:
            self._callbacks[update_type].append(callback)

    def _emit(self, run_config: RunConfig, outcome: CommandOutcome) -> None:
        if run_config.output_path:
            write_atomic(run_config.output_path, outcome.text)
            self.logger.info(f"Wrote {run_config.subcommand} output to {run_config.output_path}")
        else:
            sys.stdout.write(outcome.text)
            sys.stdout.flush()

    @ensure_initialized
    def run(self, run_config: RunConfig) -> ExitCode:
        """Run one subcommand: dispatch, emit its artifact, show the summary, map the exit code."""
        try:
            run_config = run_config.resolved()
            outcome = self.dispatcher.dispatch(run_config)
            self._emit(run_config, outcome)
        except WorkbenchError as e:
            self.logger.error(f"{run_config.subcommand}: {e}")
            self.console.print(f"[bold red]error:[/bold red] {e}")
            return ExitCode.USAGE_ERROR
        except OSError as e:
            self.logger.error(f"{run_config.subcommand}: I/O error: {e}")
            self.console.print(f"[bold red]I/O error:[/bold red] {e}")
            return ExitCode.USAGE_ERROR

        if not run_config.quiet and outcome.summary is not None:
            outcome.summary(self.console)

        return ExitCode.OK if outcome.passed else ExitCode.CHECK_FAILED

    def stop(self) -> None:
        """Detach the handlers this workbench installed."""
        if not self.is_initialized:
            return
        for handler in self._handlers:
            self.logger.removeHandler(handler)
            handler.close()
        self._handlers.clear()
        self.is_initialized = False


# Module-level singleton instance
_workbench_instance: Optional[Workbench] = None


def get_workbench() -> Workbench:
    """Get or create the global Workbench instance"""
    global _workbench_instance

    if _workbench_instance is None:
        _workbench_instance = Workbench()
        _workbench_instance.initialize()
    return _workbench_instance


__all__ = [
    'Workbench',
    'WorkbenchConfig',
    'get_workbench',
    'CommandOutcome',
    'OutputFormat',
    'RunConfig',
    'Subcommand',
]
