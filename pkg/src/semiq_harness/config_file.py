"""
Line-oriented ``key = value`` configuration files with dotted section keys.
"""

import re
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from semiq_core.exceptions import ConfigParseError
from semiq_core.exceptions import ConfigurationError
from semiq_core.exceptions import ConfigValidationError
from semiq_core.logging import get_logger

from .models import Experiment
from .models import RunConfig

logger = get_logger(__name__)

KEY_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z_][A-Za-z0-9_]*)*$")

# line number 0 marks values that came from command-line flags
Entry = tuple[str, int]


def parse_lines(text: str) -> dict[str, Entry]:
    """
    Parse ``key = value`` lines.

    Blank lines and ``#`` comments are skipped; a ``#`` after a value starts a comment.

    Raises:
        ConfigParseError: malformed line, invalid key or duplicate key
    """
    entries: dict[str, Entry] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError("expected 'key = value'", number, raw.strip())
        key, value = (part.strip() for part in line.split("=", 1))
        if not KEY_PATTERN.match(key):
            raise ConfigParseError("invalid key", number, repr(key))
        if not value:
            raise ConfigParseError("missing value", number, key)
        if key in entries:
            raise ConfigParseError(
                "duplicate key", number, f"{key} first set on line {entries[key][1]}"
            )
        entries[key] = (value, number)
    return entries


def parse_overrides(args: list[str]) -> dict[str, Entry]:
    """
    Parse ``--key=value`` (or ``--key value``) flags.

    Raises:
        ConfigParseError: a flag without a value or with an invalid key
    """
    entries: dict[str, Entry] = {}
    i = 0
    while i < len(args):
        arg = args[i]
        if not arg.startswith("--"):
            raise ConfigParseError("unexpected argument", 0, repr(arg))
        body = arg[2:]
        if "=" in body:
            key, value = body.split("=", 1)
        elif i + 1 < len(args) and not args[i + 1].startswith("--"):
            key, value = body, args[i + 1]
            i += 1
        else:
            raise ConfigParseError("flag needs a value", 0, arg)
        key, value = key.strip(), value.strip()
        if not KEY_PATTERN.match(key):
            raise ConfigParseError("invalid key", 0, repr(key))
        entries[key] = (value, 0)
        i += 1
    return entries


def nest(entries: dict[str, Entry]) -> dict[str, Any]:
    """
    Turn dotted keys into nested dicts.

    Raises:
        ConfigParseError: a key is used both as a value and as a section
    """
    tree: dict[str, Any] = {}
    for key, (value, number) in entries.items():
        parts = key.split(".")
        node = tree
        for part in parts[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigParseError("key used as both value and section", number, key)
            node = child
        if isinstance(node.get(parts[-1]), dict):
            raise ConfigParseError("key used as both value and section", number, key)
        node[parts[-1]] = value
    return tree


def build_config(entries: dict[str, Entry]) -> RunConfig:
    """
    Validate parsed entries into a RunConfig.

    Raises:
        ConfigValidationError: unknown key or violated invariant, naming the field
    """
    try:
        return RunConfig.model_validate(nest(entries))
    except ValidationError as e:
        err = e.errors()[0]
        location = ".".join(str(part) for part in err["loc"]) or "config"
        raise ConfigValidationError(f"{location}: {err['msg']}", location) from e


def parse_config(
    path: Path | None,
    overrides: list[str] | None = None,
    experiment: Experiment | None = None,
) -> RunConfig:
    """
    Read a config file, apply flag overrides and validate.

    Args:
        path: config file, or None for pure defaults
        overrides: ``--key=value`` flags, which win over file values
        experiment: experiment chosen by the CLI command

    Raises:
        ConfigurationError: unreadable file
        ConfigParseError: malformed file or flags
        ConfigValidationError: unknown key or violated invariant
    """
    entries: dict[str, Entry] = {}
    if path is not None:
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise ConfigurationError("cannot read config file", f"{path}: {e}") from e
        entries.update(parse_lines(text))
    entries.update(parse_overrides(overrides or []))
    if experiment is not None:
        entries["experiment"] = (experiment.value, 0)

    config = build_config(entries)
    logger.debug("Configuration parsed", source=str(path), keys=len(entries))
    return config
