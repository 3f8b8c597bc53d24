"""YAML loading and writing for scenario files."""

from pathlib import Path
from typing import Any, Dict, Union

import yaml


def load_yaml(file_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Load and parse a YAML scenario file.

    Args:
        file_path: Path to the scenario file

    Returns:
        Dictionary containing parsed YAML content (empty for an empty file)

    Raises:
        FileNotFoundError: If file doesn't exist
        yaml.YAMLError: If YAML syntax is invalid or the top level is not a mapping
    """
    file_path = Path(file_path)
    if not file_path.exists():
        raise FileNotFoundError(f"Scenario file not found: {file_path}")

    with open(file_path, "r", encoding="utf-8") as f:
        try:
            config = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise yaml.YAMLError(f"Invalid YAML syntax in {file_path}: {e}")
    if config is None:
        return {}
    if not isinstance(config, dict):
        raise yaml.YAMLError(
            f"Invalid scenario file {file_path}: expected a mapping with "
            "problem, data and run sections"
        )
    return config


def dump_yaml(data: Dict[str, Any], file_path: Union[str, Path]) -> Path:
    """Write a mapping as YAML, keeping key order."""
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", encoding="utf-8", newline="\n") as f:
        yaml.safe_dump(data, f, sort_keys=False, default_flow_style=False)
    return file_path
