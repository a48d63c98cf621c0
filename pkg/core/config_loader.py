"""YAML configuration loader utility."""

import os
from pathlib import Path
from typing import Any, Callable

import yaml


def load_config(path: str | Path) -> dict[str, Any]:
    """
    Load a YAML configuration file.

    Args:
        path: Path to the YAML file.

    Returns:
        Dictionary containing the parsed configuration.

    Raises:
        FileNotFoundError: If the config file doesn't exist.
        ValueError: If the document is not a mapping.
        yaml.YAMLError: If the file contains invalid YAML.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")

    with open(path, "r", encoding="utf-8") as f:
        config = yaml.safe_load(f)

    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ValueError(
            f"Config file {path} must contain a mapping, got {type(config).__name__}"
        )
    return config


def load_project_config(project_name: str, base_path: str | Path = "projects") -> dict[str, Any]:
    """
    Load a named run configuration (``projects/<name>/project.yaml``).

    Args:
        project_name: Name of the project folder (e.g. "acceptance", "demo").
        base_path: Base path where projects are stored.

    Returns:
        Dictionary containing the project configuration.
    """
    config_path = Path(base_path) / project_name / "project.yaml"
    return load_config(config_path)


def resolve_setting(
    key: str,
    cli_value: Any = None,
    env_var: str | None = None,
    config: dict[str, Any] | None = None,
    default: Any = None,
    cast: Callable[[Any], Any] | None = None,
) -> Any:
    """
    Resolve one setting using the layered priority rule.

    Priority order:
        1. CLI value (if not None)
        2. Environment variable ``env_var`` (if set and non-empty)
        3. ``config[key]`` from a YAML project file
        4. ``default``

    Args:
        key: Key looked up in ``config``.
        cli_value: Value from the command line, None when not given.
        env_var: Environment variable name, None to skip the layer.
        config: Parsed YAML mapping, None to skip the layer.
        default: Fallback value.
        cast: Optional converter applied to the winning value (not to None).

    Returns:
        The resolved value.

    Raises:
        ValueError: If ``cast`` rejects the winning value.
    """
    if cli_value is not None:
        value = cli_value
    elif env_var and os.getenv(env_var, "").strip():
        value = os.getenv(env_var, "").strip()
    elif config is not None and config.get(key) is not None:
        value = config[key]
    else:
        value = default

    if value is None or cast is None:
        return value

    try:
        return cast(value)
    except (TypeError, ValueError) as e:
        raise ValueError(f"Invalid value for setting '{key}': {value!r}") from e
