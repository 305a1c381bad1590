"""
Base command for kpull subcommands.

Commands return result dicts; errors are captured here and turned into
`success: False` results carrying the exit code of the error class.
"""

import logging
import time
from abc import ABC, abstractmethod
from typing import Any, Dict

from kpull.shared.errors import KpullError
from kpull.shared.settings import Settings

logger = logging.getLogger(__name__)


class BaseCommand(ABC):
    """A timed, error-capturing unit of work behind one subcommand."""

    name = "command"
    description = ""

    def __init__(self, settings: Settings = None):
        self.settings = settings or Settings()
        self.start_time = None
        self.execution_time = None

    def execute(self, **kwargs) -> Dict[str, Any]:
        self.start_time = time.perf_counter()
        try:
            result = self.run(**kwargs)
            result.setdefault("success", True)
        except KpullError as e:
            result = {
                "success": False,
                "error": str(e),
                "error_type": type(e).__name__,
                "exit_code": e.exit_code,
            }
        except Exception as e:
            logger.debug("unexpected error in %s", self.name, exc_info=True)
            result = {
                "success": False,
                "error": str(e) or type(e).__name__,
                "error_type": type(e).__name__,
                "exit_code": 1,
            }

        self.execution_time = time.perf_counter() - self.start_time
        result["execution_time"] = self.execution_time
        # wall time goes to the log only; stdout must not vary between runs
        logger.info("%s finished in %.3fs", self.name, self.execution_time)
        return result

    @abstractmethod
    def run(self, **kwargs) -> Dict[str, Any]:
        """Do the work; raise KpullError subclasses for user-facing failures."""
