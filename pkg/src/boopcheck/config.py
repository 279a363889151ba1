"""Rule configuration: defaults, JSON overlay loading, and file discovery.

The config file is a JSON object (``boop.config.json`` by convention) whose
keys overlay the defaults field by field; ``levels`` merges per rule id.
Anything malformed is rejected as G001 so instructors notice typos instead
of silently running with defaults.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .diagnostics import Diagnostic, Severity, Span
from .document import SectionKind

#: Default severity per tunable rule.  X/F/G diagnostics are not tunable:
#: a file that cannot be lexed, read, or configured is never acceptable.
DEFAULT_LEVELS: dict[str, Severity] = {
    "P001": Severity.ERROR,
    "P002": Severity.ERROR,
    "P003": Severity.ERROR,
    "P004": Severity.ERROR,
    "P005": Severity.ERROR,
    "P006": Severity.ERROR,
    "L001": Severity.ERROR,
    "L002": Severity.WARN,
    "L003": Severity.WARN,
    "B001": Severity.ERROR,
    "B002": Severity.ERROR,
    "I001": Severity.ERROR,
    "I002": Severity.ERROR,
    "S001": Severity.WARN,
    "S002": Severity.WARN,
    "T001": Severity.ERROR,
    "C001": Severity.WARN,
    "R001": Severity.ERROR,
    "U001": Severity.WARN,
}

DEFAULT_BANNED_PREFIXES = ["List.", "Array.", "String.", "Hashtbl."]
DEFAULT_ALLOWED_IDENTIFIERS = ["failwith", "ref", "not"]

CONFIG_FILE_NAME = "boop.config.json"
CONFIG_ENV_VAR = "BOOP_CONFIG"


@dataclass
class ProofStrategy:
    name: str
    markers: list[str]


def _default_strategies() -> list[ProofStrategy]:
    return [
        ProofStrategy("induction", ["base case", "inductive hypothesis", "inductive step"]),
        ProofStrategy("invariant", ["initialization", "maintenance", "termination"]),
    ]


@dataclass
class RuleConfig:
    version: int = 1
    levels: dict[str, Severity] = field(default_factory=lambda: dict(DEFAULT_LEVELS))
    banned_identifier_prefixes: list[str] = field(
        default_factory=lambda: list(DEFAULT_BANNED_PREFIXES)
    )
    allowed_identifiers: list[str] = field(
        default_factory=lambda: list(DEFAULT_ALLOWED_IDENTIFIERS)
    )
    banned_operators: list[str] = field(default_factory=list)
    proof_strategies: list[ProofStrategy] = field(default_factory=_default_strategies)
    required_sections: list[SectionKind] = field(default_factory=lambda: list(SectionKind))
    strict_if: bool = False

    def severity_of(self, rule_id: str) -> Severity:
        """Resolved severity for ``rule_id``; non-tunable ids are errors."""
        return self.levels.get(rule_id, Severity.ERROR)


class ConfigError(Exception):
    """Raised for G001: malformed configuration input."""

    def __init__(self, message: str):
        super().__init__(message)
        self.diagnostic = Diagnostic("G001", Severity.ERROR, Span(0, 0), message)


_KNOWN_KEYS = {
    "version",
    "levels",
    "banned_identifier_prefixes",
    "allowed_identifiers",
    "banned_operators",
    "proof_strategies",
    "required_sections",
    "strict_if",
}


def _string_list(raw: object, key: str) -> list[str]:
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise ConfigError(f"'{key}' must be an array of strings")
    return list(raw)


def load_config(text: str) -> RuleConfig:
    """Build a RuleConfig from JSON ``text`` overlaid onto the defaults.

    Empty input yields the default config.  Raises :class:`ConfigError`
    (G001) on syntax errors, unknown keys, unknown rule ids, or unknown
    severity strings.
    """
    config = RuleConfig()
    if not text.strip():
        return config
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")

    for key in raw:
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config key '{key}'")

    if "version" in raw:
        if not isinstance(raw["version"], int) or isinstance(raw["version"], bool):
            raise ConfigError("'version' must be an integer")
        config.version = raw["version"]

    if "levels" in raw:
        levels = raw["levels"]
        if not isinstance(levels, dict):
            raise ConfigError("'levels' must be an object of rule id to severity")
        for rule_id, value in levels.items():
            if rule_id not in DEFAULT_LEVELS:
                raise ConfigError(f"unknown rule id '{rule_id}' in levels")
            if not isinstance(value, str):
                raise ConfigError(f"severity for '{rule_id}' must be a string")
            try:
                config.levels[rule_id] = Severity.from_str(value)
            except ValueError:
                raise ConfigError(
                    f"unknown severity '{value}' for '{rule_id}'; "
                    "use 'error', 'warn', or 'off'"
                ) from None

    if "banned_identifier_prefixes" in raw:
        config.banned_identifier_prefixes = _string_list(
            raw["banned_identifier_prefixes"], "banned_identifier_prefixes"
        )
    if "allowed_identifiers" in raw:
        config.allowed_identifiers = _string_list(raw["allowed_identifiers"], "allowed_identifiers")
    if "banned_operators" in raw:
        config.banned_operators = _string_list(raw["banned_operators"], "banned_operators")

    if "proof_strategies" in raw:
        strategies = raw["proof_strategies"]
        if not isinstance(strategies, list):
            raise ConfigError("'proof_strategies' must be an array")
        parsed = []
        for entry in strategies:
            if not isinstance(entry, dict) or set(entry) != {"name", "markers"}:
                raise ConfigError("each proof strategy needs exactly 'name' and 'markers'")
            name = entry["name"]
            if not isinstance(name, str):
                raise ConfigError("proof strategy 'name' must be a string")
            markers = _string_list(entry["markers"], "markers")
            if not markers:
                raise ConfigError(f"proof strategy '{name}' has no markers")
            parsed.append(ProofStrategy(name, markers))
        config.proof_strategies = parsed

    if "required_sections" in raw:
        names = _string_list(raw["required_sections"], "required_sections")
        try:
            config.required_sections = [SectionKind.from_label(n) for n in names]
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    if "strict_if" in raw:
        if not isinstance(raw["strict_if"], bool):
            raise ConfigError("'strict_if' must be a boolean")
        config.strict_if = raw["strict_if"]

    return config


def load_config_file(path: str | Path) -> RuleConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file '{path}': {exc.strerror}") from exc
    return load_config(text)


def discover_config_path(start: str | Path) -> Path | None:
    """Locate ``boop.config.json`` next to ``start`` or in an ancestor.

    The ``BOOP_CONFIG`` environment variable overrides discovery entirely.
    """
    env = os.environ.get(CONFIG_ENV_VAR)
    if env:
        return Path(env)
    directory = Path(start).resolve()
    if not directory.is_dir():
        directory = directory.parent
    for candidate_dir in [directory, *directory.parents]:
        candidate = candidate_dir / CONFIG_FILE_NAME
        if candidate.is_file():
            return candidate
    return None


def resolve_config(path: str | Path) -> RuleConfig:
    """Config for checking ``path``: discovered file contents, or defaults."""
    found = discover_config_path(path)
    if found is None:
        return RuleConfig()
    return load_config_file(found)
