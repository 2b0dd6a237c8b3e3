"""
Runtime settings for the Khovanov engine.

Environment variables:
    KHOVANOV_CUBE_LIMIT    — Largest crossing count accepted by the cube builders (default: 24)
    KHOVANOV_WORKERS       — Process pool width for block eliminations (default: 1)
    KHOVANOV_DEBUG_CHECKS  — Verify d∘d = 0 on every built complex (default: false)
    KHOVANOV_LOG_LEVEL     — Log level for the CLI (default: WARNING)
"""
import os

CUBE_LIMIT = int(os.environ.get("KHOVANOV_CUBE_LIMIT", "24"))
WORKERS = int(os.environ.get("KHOVANOV_WORKERS", "1"))
DEBUG_CHECKS = os.environ.get("KHOVANOV_DEBUG_CHECKS", "false").lower() == "true"
LOG_LEVEL = os.environ.get("KHOVANOV_LOG_LEVEL", "WARNING").upper()


def cube_limit(override=None) -> int:
    """Effective cube limit: explicit override, else environment, else 24."""
    if override is not None:
        return int(override)
    return int(os.environ.get("KHOVANOV_CUBE_LIMIT", CUBE_LIMIT))


def workers(override=None) -> int:
    if override is not None:
        return max(1, int(override))
    return max(1, int(os.environ.get("KHOVANOV_WORKERS", WORKERS)))


def debug_checks() -> bool:
    return os.environ.get("KHOVANOV_DEBUG_CHECKS", "true" if DEBUG_CHECKS else "false").lower() == "true"
