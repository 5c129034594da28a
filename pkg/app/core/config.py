# app/core/config.py
import os
from dotenv import load_dotenv

from app.core.errors import ConfigError

# Load environment variables from .env file
load_dotenv()

JOBS = int(os.getenv("MATROID_FORGE_JOBS", "1"))
MAX_UNKNOWNS = int(os.getenv("MATROID_FORGE_MAX_UNKNOWNS", "12"))
MAX_FIELD_ORDER = int(os.getenv("MATROID_FORGE_MAX_FIELD_ORDER", "121"))
LOG_LEVEL = os.getenv("MATROID_FORGE_LOG_LEVEL", "WARNING").upper()


def resolve_jobs(flag: int | None = None) -> int:
    """--jobs wins; otherwise MATROID_FORGE_JOBS as it is set right now."""
    if flag is not None:
        return max(1, flag)
    raw = os.getenv("MATROID_FORGE_JOBS")
    if raw is None or raw.strip() == "":
        return max(1, JOBS)
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"MATROID_FORGE_JOBS must be an integer, got {raw!r}")
