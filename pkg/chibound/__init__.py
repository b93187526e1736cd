"""chibound - certify and stress-test the 4ω/3 colouring bound for (P2∪P4, HVN)-free graphs."""

import sys

from loguru import logger

__version__ = "0.1.0"

STDERR_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"


def configure_logging(log_file: str | None = None, level: str = "INFO") -> None:
    """Replace every loguru handler with a stderr sink and, optionally, a log file.

    Args:
        log_file: Path of a rotating log file, or None for stderr only
        level: Minimum level for both sinks

    Example:
        >>> configure_logging(level="DEBUG")
        >>> configure_logging(log_file="campaign.log")
    """
    logger.remove()
    logger.add(sys.stderr, format=STDERR_FORMAT, level=level, colorize=True)
    if log_file:
        add_log_file(log_file, level)


def add_log_file(log_file: str, level: str = "INFO") -> None:
    """Add a rotating file sink next to whatever handlers are already installed."""
    logger.add(log_file, format=FILE_FORMAT, level=level, rotation="10 MB", retention="1 week")


def install_exception_hook() -> None:
    """Send uncaught exceptions to the log with their traceback.

    A crashed campaign then still leaves its traceback in the log file.
    Ctrl-C keeps the interpreter's default handling.
    """

    def log_uncaught(exc_type, exc_value, exc_traceback):
        if issubclass(exc_type, KeyboardInterrupt):
            sys.__excepthook__(exc_type, exc_value, exc_traceback)
            return
        logger.opt(exception=(exc_type, exc_value, exc_traceback)).critical("Uncaught exception")

    sys.excepthook = log_uncaught


__all__ = ["__version__", "add_log_file", "configure_logging", "install_exception_hook"]
