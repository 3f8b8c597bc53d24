"""
Output directory discovery.

Resolves where run artifacts go from several sources:
1. The --out flag (highest priority)
2. run.output_dir in the scenario file
3. DHC_OUT_DIR in the process environment
4. DHC_OUT_DIR in a .env file in the current directory
5. The default "dhc-output" (lowest priority)
"""

import logging
import os
from pathlib import Path
from typing import Optional, Union

from dotenv import dotenv_values

from delay_heat_control.config.defaults import DEFAULT_OUTPUT_DIR, OUTPUT_DIR_ENV_VAR

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _load_from_dotenv(directory: Optional[Path] = None) -> Optional[str]:
    dotenv_path = (directory or Path.cwd()) / ".env"
    if not dotenv_path.exists():
        return None
    value = dotenv_values(dotenv_path).get(OUTPUT_DIR_ENV_VAR)
    return value or None


def resolve_output_dir(
    explicit: Optional[PathLike] = None, configured: Optional[PathLike] = None
) -> Path:
    """
    Directory for run artifacts.

    Args:
        explicit: Value of the --out flag
        configured: run.output_dir from the scenario

    Returns:
        Resolved directory (not created)

    Example:
        >>> resolve_output_dir(explicit="results")
        PosixPath('results')
    """
    if explicit:
        source, value = "--out", str(explicit)
    elif configured:
        source, value = "scenario", str(configured)
    elif os.environ.get(OUTPUT_DIR_ENV_VAR):
        source, value = "environment", os.environ[OUTPUT_DIR_ENV_VAR]
    else:
        dotenv_value = _load_from_dotenv()
        if dotenv_value:
            source, value = ".env", dotenv_value
        else:
            source, value = "default", DEFAULT_OUTPUT_DIR
    logger.debug(f"output directory {value} (from {source})")
    return Path(value)
