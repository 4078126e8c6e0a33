import logging
import sys
import os
from logging.handlers import RotatingFileHandler

# Log directory can be redirected with PAIRWISE_OT_LOG_DIR (tests point it at a tmp dir)
LOG_DIR = os.getenv(
    "PAIRWISE_OT_LOG_DIR",
    os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "logs"),
)

LOG_FILE = os.path.join(LOG_DIR, "pairwise_ot.log")

DEFAULT_LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(module)s.%(funcName)s:%(lineno)d - %(message)s"
DEFAULT_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def _env_level() -> int:
    name = os.getenv("PAIRWISE_OT_LOG_LEVEL", "INFO").upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.INFO


def _env_file_logging() -> bool:
    return os.getenv("PAIRWISE_OT_LOG_TO_FILE", "1").strip().lower() not in ("0", "false", "no")


def setup_logger(
    name: str = __name__,
    level: int = None,
    log_format: str = DEFAULT_LOG_FORMAT,
    date_format: str = DEFAULT_DATE_FORMAT,
    log_to_file: bool = None,
    log_to_console: bool = True,
    log_file_path: str = LOG_FILE,
    max_bytes: int = 10 * 1024 * 1024,  # 10 MB
    backup_count: int = 5,
):
    """
    Logger for one pairwise-ot module. Library modules share pairwise_ot.log;
    the CLI, the ratio estimator and the robust and online demos pass their own
    file (cli.log, ratio_estimator.log, robust_plans.log, online_transport.log)
    under LOG_DIR. Console output goes to stderr so CSV and JSON on stdout
    stay parseable.

    Args:
        name: Logger name, usually the module's __name__.
        level: Overrides PAIRWISE_OT_LOG_LEVEL (default INFO).
        log_format: Record format; the default carries module, function and line.
        date_format: strftime format for asctime.
        log_to_file: Overrides PAIRWISE_OT_LOG_TO_FILE; the test suite turns it off.
        log_to_console: Attach the stderr handler.
        log_file_path: Rotating log file, created with its directory on demand.
        max_bytes: Rotation size.
        backup_count: Rotated files kept.
    """
    logger = logging.getLogger(name)

    # Reconfiguring the same logger must not stack handlers
    if logger.hasHandlers():
        logger.handlers.clear()

    logger.setLevel(_env_level() if level is None else level)
    logger.propagate = False

    formatter = logging.Formatter(log_format, datefmt=date_format)

    if log_to_console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    if log_to_file is None:
        log_to_file = _env_file_logging()

    if log_to_file:
        try:
            os.makedirs(os.path.dirname(log_file_path), exist_ok=True)
            file_handler = RotatingFileHandler(
                log_file_path,
                maxBytes=max_bytes,
                backupCount=backup_count,
                encoding="utf-8",
            )
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
            logger.debug(f"Logging to file: {log_file_path}")
        except Exception as e:
            # Console logging keeps working if the file handler cannot be created
            logger.error(
                f"Failed to set up file logging to {log_file_path}: {e}", exc_info=True
            )

    return logger
