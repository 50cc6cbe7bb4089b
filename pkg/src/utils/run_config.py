"""
Optional user overrides stored in .config.json.

Recognized keys: f, seed, restarts, max_iters, tol, samples, trials, threads.
Values here override src/config.py defaults; command-line flags override both.
"""
import json
from pathlib import Path
from typing import Dict, Optional

from ..config import USER_CONFIG_FILE
from .logging_config import get_logger

logger = get_logger(__name__)

KNOWN_KEYS = {
    'f': str,
    'seed': int,
    'restarts': int,
    'max_iters': int,
    'tol': float,
    'samples': int,
    'trials': int,
    'threads': int,
}


def load_config(path=None) -> Optional[Dict]:
    """
    Load user overrides from .config.json.

    Unknown keys are ignored with a warning; values are coerced to the
    expected types.

    Returns:
        Configuration dictionary or None if the file doesn't exist or is unreadable
    """
    path = Path(path) if path is not None else Path(USER_CONFIG_FILE)
    if not path.exists():
        return None

    try:
        with open(path, 'r') as f:
            raw = json.load(f)
    except (json.JSONDecodeError, IOError) as e:
        logger.error(f"Error loading configuration from {path}: {e}")
        return None

    if not isinstance(raw, dict):
        logger.error(f"Configuration in {path} must be a JSON object")
        return None

    config = {}
    for key, value in raw.items():
        if key not in KNOWN_KEYS:
            logger.warning(f"Ignoring unknown configuration key: {key}")
            continue
        try:
            config[key] = KNOWN_KEYS[key](value)
        except (TypeError, ValueError):
            logger.warning(f"Ignoring invalid value for {key}: {value!r}")

    logger.debug(f"Loaded user configuration from {path}: {config}")
    return config


def save_config(config: Dict, path=None) -> bool:
    """
    Save user overrides to .config.json.

    Returns:
        True if successful, False otherwise
    """
    path = Path(path) if path is not None else Path(USER_CONFIG_FILE)
    unknown = sorted(set(config) - set(KNOWN_KEYS))
    if unknown:
        logger.warning(f"Not saving unknown configuration keys: {unknown}")

    try:
        with open(path, 'w') as f:
            json.dump({k: v for k, v in config.items() if k in KNOWN_KEYS}, f, indent=2, sort_keys=True)
        return True
    except IOError as e:
        logger.error(f"Error saving configuration: {e}")
        return False
