import logging
import os
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

# Output directory - defaults to a folder next to the working directory
OUTPUT_DIR = os.getenv("MODELSR_OUTPUT_DIR", "./modelsr-output")

LOG_LEVEL = os.getenv("MODELSR_LOG_LEVEL", "INFO")


def get_thread_count() -> int:
    """Worker cap for trial parallelism (MODELSR_THREADS)."""
    raw = os.getenv("MODELSR_THREADS")
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        threads = int(raw)
    except ValueError:
        logger.warning(f"Invalid MODELSR_THREADS value {raw!r}, using 1 worker")
        return 1
    if threads < 1:
        logger.warning(f"MODELSR_THREADS must be positive, got {threads}; using 1 worker")
        return 1
    return threads


def configure_logging(level: str = None):
    logging.basicConfig(
        level=(level or LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
