"""
Configuration
=============
Runtime settings read from the environment, with a `.env` file at the
project root loaded first through python-dotenv.

    HII_MAX_WEYL_ORDER   bound on |W| for enumeration (default 51840)
    HII_DEFAULT_Q        q used when an input omits it (default 3)
    HII_VERIFY_WORKERS   threads used by verify_suite (default 1)
    HII_RESULTS_DIR      where --save writes reports (default results)
    HII_LOG_LEVEL        logging level name (default WARNING)
"""

import os
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from dotenv import load_dotenv


PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent

DEFAULT_MAX_WEYL_ORDER = 51840  # |W(E6)|
DEFAULT_Q = Fraction(3)


@dataclass(frozen=True)
class Settings:
    """Resolved runtime settings."""
    max_weyl_order: int = DEFAULT_MAX_WEYL_ORDER
    default_q: Fraction = DEFAULT_Q
    verify_workers: int = 1
    results_dir: Path = Path("results")
    log_level: str = "WARNING"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        logging.getLogger(__name__).warning("Ignoring non-integer %s=%r", name, raw)
        return default


def get_settings(env_file: Path = None) -> Settings:
    """
    Build Settings from the environment.

    Args:
        env_file: Optional path to a .env file (defaults to PROJECT_ROOT/.env)

    Returns:
        Settings: Frozen settings object
    """
    load_dotenv(env_file or PROJECT_ROOT / ".env", override=False)

    q_raw = os.getenv("HII_DEFAULT_Q", "").strip()
    default_q = Fraction(q_raw) if q_raw else DEFAULT_Q
    if default_q <= 1:
        raise ValueError(f"HII_DEFAULT_Q must be > 1, got {q_raw}")

    return Settings(
        max_weyl_order=_env_int("HII_MAX_WEYL_ORDER", DEFAULT_MAX_WEYL_ORDER),
        default_q=default_q,
        verify_workers=max(1, _env_int("HII_VERIFY_WORKERS", 1)),
        results_dir=Path(os.getenv("HII_RESULTS_DIR", "results")),
        log_level=os.getenv("HII_LOG_LEVEL", "WARNING").upper(),
    )


def configure_logging(level: str = "WARNING") -> None:
    """Install a single stream handler tagging records with the module name."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="[%(name)s] %(levelname)s %(message)s",
    )
