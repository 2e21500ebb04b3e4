from typing import Any, Dict, List, Mapping, Optional
from pathlib import Path
import json
import logging

from bounds import CONVENTIONS
from codes import HT_CONVENTIONS
from models import AnalysisSettings, ConfigItem, ConfigValue, ScopeType

ENV_PREFIX = "ALGIMM_"

DEFAULT_SCOPE_TYPES = [
    {"name": "cli", "priority": 10},
    {"name": "env", "priority": 20},
    {"name": "file", "priority": 30},
    {"name": "default", "priority": 50},
]

DEFAULT_CONFIG_ITEMS = [
    (ConfigItem(key="budget", description="Cap on rank tests and enumerated codewords", value_type="number"), 1 << 24),
    (ConfigItem(key="ht_coprime", description="Step coprimality for consecutive-root patterns",
                value_type="choice", choices=HT_CONVENTIONS), "order"),
    (ConfigItem(key="bound_convention", description="Binomial sum start for distance-based LDA bounds",
                value_type="choice", choices=CONVENTIONS), "strict"),
    (ConfigItem(key="output_format", description="Report rendering",
                value_type="choice", choices=("json", "table")), "json"),
    (ConfigItem(key="seed", description="Seed for sampled corpora and codewords", value_type="number"), 0),
    (ConfigItem(key="timings", description="Emit wall time per analysis stage", value_type="boolean"), False),
    (ConfigItem(key="database_url", description="SQLAlchemy URL of the result store", value_type="string"), None),
]


class ConfigManager:
    """Resolves analysis settings through scopes ordered from local to global"""

    def __init__(self):
        # Store config items by key
        self.config_items: Dict[str, ConfigItem] = {}

        # Store scope types by name
        self.scope_types: Dict[str, ScopeType] = {}

        # Store config values by a composite key: (config_item_key, scope_type)
        self.config_values: Dict[tuple, ConfigValue] = {}

    def add_scope_type(self, scope_type: ScopeType) -> None:
        self.scope_types[scope_type.name] = scope_type
        logging.debug(f"Added scope type: {scope_type.name} with priority {scope_type.priority}")

    def get_scope_types(self) -> List[ScopeType]:
        """Get all scope types sorted by priority (local to global)"""
        return sorted(self.scope_types.values(), key=lambda x: x.priority)

    def add_config_item(self, config_item: ConfigItem) -> None:
        self.config_items[config_item.key] = config_item
        logging.debug(f"Added config item: {config_item.key}")

    def get_config_items(self) -> List[ConfigItem]:
        return list(self.config_items.values())

    def set_config_value(self, config_value: ConfigValue) -> None:
        """Set a configuration value, validating the item, the scope and choice values"""
        if config_value.config_item_key not in self.config_items:
            raise ValueError(f"Config item '{config_value.config_item_key}' does not exist")

        if config_value.scope_type not in self.scope_types:
            raise ValueError(f"Scope type '{config_value.scope_type}' does not exist")

        config_item = self.config_items[config_value.config_item_key]
        if config_item.value_type == "choice" and config_value.value not in config_item.choices:
            raise ValueError(
                f"Value '{config_value.value}' for '{config_item.key}' is not one of {list(config_item.choices)}"
            )

        key = (config_value.config_item_key, config_value.scope_type)
        self.config_values[key] = config_value
        logging.debug(f"Set config value for {key}: {config_value.value}")

    def resolve_config_value(self, config_item_key: str) -> Optional[Any]:
        """
        Resolve a configuration value through the scope hierarchy.

        Args:
            config_item_key: The key of the configuration item

        Returns:
            The value of the most local scope holding one, converted to the
            item's type, or None if no scope holds a value
        """
        if config_item_key not in self.config_items:
            raise ValueError(f"Config item '{config_item_key}' does not exist")

        config_item = self.config_items[config_item_key]

        for scope_type in self.get_scope_types():
            key = (config_item_key, scope_type.name)
            if key in self.config_values:
                value = self.config_values[key].value
                logging.debug(f"Resolved config value for {config_item_key} using {scope_type.name} scope")
                return self._convert_value(value, config_item.value_type)

        logging.debug(f"No config value found for {config_item_key}")
        return None

    def _convert_value(self, value: Any, value_type: str) -> Any:
        """
        Convert a value to the appropriate type based on the config item's value_type.

        Args:
            value: The value to convert
            value_type: 'number', 'string', 'choice' or 'boolean'

        Returns:
            The converted value
        """
        if value is None:
            return None
        if value_type == 'number':
            try:
                float_val = float(value)
                if float_val.is_integer():
                    return int(float_val)
                return float_val
            except (ValueError, TypeError):
                raise ValueError(f"'{value}' is not a number")
        elif value_type == 'boolean':
            if isinstance(value, bool):
                return value
            text = str(value).strip().lower()
            if text in ("1", "true", "yes", "on"):
                return True
            if text in ("0", "false", "no", "off", ""):
                return False
            raise ValueError(f"'{value}' is not a boolean")
        return str(value)

    def load_environment(self, environ: Mapping[str, str]) -> int:
        """Copy ALGIMM_<KEY> variables into the env scope; returns how many were set"""
        loaded = 0
        for key in self.config_items:
            name = ENV_PREFIX + key.upper()
            if name in environ:
                self.set_config_value(ConfigValue(config_item_key=key, scope_type="env", value=environ[name]))
                loaded += 1
        return loaded

    def load_file(self, path: str) -> int:
        """Load a JSON object of settings into the file scope"""
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ValueError(f"Cannot read settings file {path}: {e}") from e
        if not isinstance(data, dict):
            raise ValueError(f"Settings file {path} must hold a JSON object")
        for key, value in data.items():
            self.set_config_value(ConfigValue(config_item_key=key, scope_type="file", value=value))
        return len(data)

    def resolve_settings(self) -> AnalysisSettings:
        values = {item.key: self.resolve_config_value(item.key) for item in self.get_config_items()}
        defaults = AnalysisSettings()
        resolved = {key: value for key, value in values.items()
                    if value is not None and hasattr(defaults, key)}
        settings = AnalysisSettings(**resolved)
        if settings.budget < 1:
            raise ValueError(f"budget must be positive, got {settings.budget}")
        return settings


def create_config_manager(environ: Optional[Mapping[str, str]] = None,
                          settings_file: Optional[str] = None,
                          cli_values: Optional[Dict[str, Any]] = None) -> ConfigManager:
    """Config manager with the default scopes and items, populated from every source"""
    config_manager = ConfigManager()
    for scope_data in DEFAULT_SCOPE_TYPES:
        config_manager.add_scope_type(ScopeType(name=scope_data["name"], priority=scope_data["priority"]))
    for item, default in DEFAULT_CONFIG_ITEMS:
        config_manager.add_config_item(item)
        if default is not None:
            config_manager.set_config_value(ConfigValue(config_item_key=item.key, scope_type="default", value=default))
    if settings_file:
        config_manager.load_file(settings_file)
    if environ is not None:
        config_manager.load_environment(environ)
    for key, value in (cli_values or {}).items():
        if value is not None:
            config_manager.set_config_value(ConfigValue(config_item_key=key, scope_type="cli", value=value))
    return config_manager
