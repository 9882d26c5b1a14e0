"""
Shared paths, settings and schema validation.
"""

import json
import os
from functools import lru_cache
from pathlib import Path
from typing import Optional

import jsonschema
import yaml
from dotenv import load_dotenv

load_dotenv()

# Paths
BASE_DIR = Path(__file__).parent.parent
CONFIG_DIR = BASE_DIR / "config"
SETTINGS_PATH = CONFIG_DIR / "sqpbraid.yml"
DEFAULT_CATALOG_DIR = BASE_DIR / "catalog"


@lru_cache(maxsize=None)
def load_settings(settings_path: Path = SETTINGS_PATH) -> dict:
    """Load and cache the YAML settings block."""
    with open(settings_path) as f:
        return yaml.safe_load(f)["sqpbraid"]


@lru_cache(maxsize=None)
def load_schema(schema_file: str) -> dict:
    """Load and cache a JSON schema from the config directory."""
    schema_path = CONFIG_DIR / schema_file
    if not schema_path.exists():
        raise FileNotFoundError(f"Schema file not found: {schema_path}")
    return json.loads(schema_path.read_text())


def validate_document(document: dict, schema_file: str) -> tuple[bool, list[str]]:
    """Validate a JSON document against one of the bundled schemas."""
    schema = load_schema(schema_file)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path))
    if not errors:
        return True, []
    messages = []
    for error in errors:
        location = "/".join(str(part) for part in error.absolute_path)
        messages.append(f"{location}: {error.message}" if location else error.message)
    return False, messages


def catalog_dir(override: Optional[Path] = None) -> Path:
    """Resolve the catalog store directory: explicit path, env var, then default."""
    if override is not None:
        return Path(override)
    env_dir = os.getenv("SQPBRAID_CATALOG_DIR")
    if env_dir:
        return Path(env_dir)
    return DEFAULT_CATALOG_DIR


def log_level() -> str:
    """Default log level, overridable through SQPBRAID_LOG_LEVEL."""
    return os.getenv("SQPBRAID_LOG_LEVEL", "WARNING").upper()


def dumps(document) -> str:
    """Byte-stable JSON rendering used for every document the CLI emits."""
    indent = load_settings()["output"]["json_indent"]
    return json.dumps(document, indent=indent, sort_keys=True, ensure_ascii=False)
