import json
import os
import sys
import tempfile
import unittest

# Add the parent directory to sys.path to import the modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from config_manager import ConfigManager, create_config_manager
from models import AnalysisSettings, ConfigItem, ConfigValue, ScopeType


class TestConfigManager(unittest.TestCase):
    """Test case for the ConfigManager class"""

    def setUp(self):
        """Set up test fixtures before each test method is run"""
        self.config_manager = ConfigManager()

        # Create test scope types with different priorities (local to global)
        self.cli_scope = ScopeType(name="cli", priority=10)
        self.env_scope = ScopeType(name="env", priority=20)
        self.file_scope = ScopeType(name="file", priority=30)
        self.default_scope = ScopeType(name="default", priority=50)

        # Add them out of order; resolution must sort by priority
        self.config_manager.add_scope_type(self.default_scope)
        self.config_manager.add_scope_type(self.file_scope)
        self.config_manager.add_scope_type(self.cli_scope)
        self.config_manager.add_scope_type(self.env_scope)

        self.budget_config = ConfigItem(key="budget", description="Rank-test cap", value_type="number")
        self.coprime_config = ConfigItem(key="ht_coprime", description="Step coprimality",
                                         value_type="choice", choices=("order", "n"))
        self.timings_config = ConfigItem(key="timings", description="Stage timings", value_type="boolean")
        self.config_manager.add_config_item(self.budget_config)
        self.config_manager.add_config_item(self.coprime_config)
        self.config_manager.add_config_item(self.timings_config)

    def test_scope_type_resolution_order(self):
        """Test that scope types are resolved in the correct order (local to global)"""
        scope_types = self.config_manager.get_scope_types()

        self.assertEqual([s.name for s in scope_types], ["cli", "env", "file", "default"])

    def test_most_local_scope_wins(self):
        """Test that the cli value overshadows env and default values"""
        self.config_manager.set_config_value(ConfigValue("budget", "default", "16777216"))
        self.config_manager.set_config_value(ConfigValue("budget", "env", "1000"))
        self.config_manager.set_config_value(ConfigValue("budget", "cli", "42"))

        self.assertEqual(self.config_manager.resolve_config_value("budget"), 42)

    def test_fallback_to_global_scope(self):
        """Test resolving falls through to the default scope"""
        self.config_manager.set_config_value(ConfigValue("ht_coprime", "default", "order"))

        self.assertEqual(self.config_manager.resolve_config_value("ht_coprime"), "order")

    def test_no_value_resolves_to_none(self):
        """Test that an item with no value at any scope resolves to None"""
        self.assertIsNone(self.config_manager.resolve_config_value("budget"))

    def test_overwrite_within_scope(self):
        """Test that setting a value twice at one scope keeps the latest"""
        self.config_manager.set_config_value(ConfigValue("budget", "file", "7"))
        self.config_manager.set_config_value(ConfigValue("budget", "file", "9"))

        self.assertEqual(self.config_manager.resolve_config_value("budget"), 9)
        self.assertEqual(len(self.config_manager.config_values), 1)

    def test_value_type_conversion(self):
        """Test number and boolean conversion of string values"""
        self.assertEqual(self.config_manager._convert_value("42", "number"), 42)
        self.assertEqual(self.config_manager._convert_value("2.5", "number"), 2.5)
        self.assertTrue(self.config_manager._convert_value("yes", "boolean"))
        self.assertFalse(self.config_manager._convert_value("0", "boolean"))
        self.assertEqual(self.config_manager._convert_value(3, "string"), "3")
        with self.assertRaises(ValueError):
            self.config_manager._convert_value("many", "number")
        with self.assertRaises(ValueError):
            self.config_manager._convert_value("perhaps", "boolean")

    def test_invalid_config_value(self):
        """Test unknown items, unknown scopes and values outside a choice set"""
        with self.assertRaises(ValueError):
            self.config_manager.set_config_value(ConfigValue("nonexistent", "cli", "1"))
        with self.assertRaises(ValueError):
            self.config_manager.set_config_value(ConfigValue("budget", "nonexistent", "1"))
        with self.assertRaises(ValueError):
            self.config_manager.set_config_value(ConfigValue("ht_coprime", "cli", "prime"))
        with self.assertRaises(ValueError):
            self.config_manager.resolve_config_value("nonexistent")

    def test_items_resolve_independently(self):
        """Test that a value for one item never leaks into another"""
        self.config_manager.set_config_value(ConfigValue("budget", "cli", "1"))
        self.config_manager.set_config_value(ConfigValue("timings", "file", "true"))

        self.assertEqual(self.config_manager.resolve_config_value("budget"), 1)
        self.assertTrue(self.config_manager.resolve_config_value("timings"))
        self.assertIsNone(self.config_manager.resolve_config_value("ht_coprime"))


class TestSettingsResolution(unittest.TestCase):
    """Test case for create_config_manager and resolve_settings"""

    def test_defaults(self):
        """Test that no sources give the built-in settings"""
        settings = create_config_manager(environ={}).resolve_settings()

        self.assertEqual(settings, AnalysisSettings())
        self.assertEqual(settings.budget, 1 << 24)
        self.assertEqual(settings.bound_convention, "strict")

    def test_environment_overrides_file(self):
        """Test env scope beating the file scope, and cli beating both"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "settings.json")
            with open(path, "w", encoding="utf-8") as handle:
                json.dump({"budget": 100, "seed": 3, "ht_coprime": "n"}, handle)
            environ = {"ALGIMM_BUDGET": "200", "ALGIMM_TIMINGS": "true", "UNRELATED": "x"}
            manager = create_config_manager(environ, path, {"seed": 9})
            settings = manager.resolve_settings()

        self.assertEqual(settings.budget, 200)
        self.assertEqual(settings.seed, 9)
        self.assertEqual(settings.ht_coprime, "n")
        self.assertTrue(settings.timings)

    def test_load_environment_counts(self):
        """Test that only ALGIMM_ variables for known keys are loaded"""
        manager = create_config_manager()
        loaded = manager.load_environment({"ALGIMM_SEED": "5", "ALGIMM_UNKNOWN": "1", "SEED": "6"})

        self.assertEqual(loaded, 1)
        self.assertEqual(manager.resolve_config_value("seed"), 5)

    def test_bad_settings_file(self):
        """Test that unreadable and non-object settings files raise ValueError"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "settings.json")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("[1, 2]")
            with self.assertRaises(ValueError):
                create_config_manager(settings_file=path)
            with self.assertRaises(ValueError):
                create_config_manager(settings_file=os.path.join(tmp, "missing.json"))

    def test_non_positive_budget_rejected(self):
        """Test that a zero budget is refused at resolution time"""
        manager = create_config_manager(cli_values={"budget": 0})
        with self.assertRaises(ValueError):
            manager.resolve_settings()

    def test_report_dict_is_stable(self):
        """Test that report settings exclude presentation-only keys"""
        settings = AnalysisSettings(output_format="table", timings=True)

        self.assertEqual(list(settings.report_dict()), ["budget", "ht_coprime", "bound_convention", "seed"])


if __name__ == '__main__':
    unittest.main()
