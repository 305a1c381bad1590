"""
Logging setup.

Library modules log through logging.getLogger(__name__); only the command
line configures handlers. Output goes to stderr so stdout stays
byte-identical between runs.
"""

import logging

from rich.console import Console
from rich.logging import RichHandler

_HANDLER_NAME = "kpull-rich"


def configure_logging(level: str = "WARNING") -> logging.Logger:
    """Attach a single RichHandler to the 'kpull' logger."""
    logger = logging.getLogger("kpull")
    logger.setLevel(level)

    for handler in list(logger.handlers):
        if handler.get_name() == _HANDLER_NAME:
            logger.removeHandler(handler)

    handler = RichHandler(
        console=Console(stderr=True),
        show_time=False,
        show_path=False,
        markup=False,
        rich_tracebacks=level == "DEBUG",
    )
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.propagate = False
    return logger
