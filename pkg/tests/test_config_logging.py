"""
Tests for the shared configuration and logging helpers.

Tests verify:
- Log level resolution (explicit > ORIGON_LOG_LEVEL > INFO)
- Loggers are cached, write to stderr and do not propagate
- YAML loading errors
- resolve_setting priority (CLI > ENV > YAML > default) and casting
"""

import logging
import os
from unittest.mock import patch

import pytest

from core.config_loader import load_config, load_project_config, resolve_setting
from core.logger import get_logger, resolve_level


# =============================================================================
# LOGGING
# =============================================================================

class TestResolveLevel:
    """Tests for log level resolution."""

    def test_explicit_level_wins(self):
        with patch.dict(os.environ, {"ORIGON_LOG_LEVEL": "ERROR"}):
            assert resolve_level(logging.DEBUG) == logging.DEBUG

    def test_level_from_env(self):
        with patch.dict(os.environ, {"ORIGON_LOG_LEVEL": " debug "}):
            assert resolve_level() == logging.DEBUG

    def test_unknown_name_falls_back(self):
        with patch.dict(os.environ, {"ORIGON_LOG_LEVEL": "LOUD"}):
            assert resolve_level() == logging.INFO

    def test_default_info(self):
        with patch.dict(os.environ, {}, clear=True):
            assert resolve_level() == logging.INFO


class TestGetLogger:
    """Tests for logger construction."""

    def test_cached(self):
        assert get_logger("origon.test.cache") is get_logger("origon.test.cache")

    def test_single_handler(self):
        logger = get_logger("origon.test.handlers")
        get_logger("origon.test.handlers")
        assert len(logger.handlers) == 1
        assert logger.propagate is False

    def test_level_override_on_cached_logger(self):
        logger = get_logger("origon.test.level", level=logging.INFO)
        get_logger("origon.test.level", level=logging.WARNING)
        assert logger.level == logging.WARNING


# =============================================================================
# YAML
# =============================================================================

class TestLoadConfig:
    """Tests for load_config and load_project_config."""

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError) as exc_info:
            load_config(tmp_path / "absent.yaml")
        assert "Config file not found" in str(exc_info.value)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert load_config(path) == {}

    def test_non_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ValueError) as exc_info:
            load_config(path)
        assert "must contain a mapping" in str(exc_info.value)

    def test_project_layout(self, tmp_path):
        (tmp_path / "demo").mkdir()
        (tmp_path / "demo" / "project.yaml").write_text("project_name: demo\n", encoding="utf-8")
        assert load_project_config("demo", tmp_path) == {"project_name": "demo"}


# =============================================================================
# LAYERED SETTINGS
# =============================================================================

class TestResolveSetting:
    """Tests for resolve_setting priority."""

    CONFIG = {"samples": 7}

    def test_cli_first(self):
        with patch.dict(os.environ, {"X_SAMPLES": "11"}):
            assert resolve_setting("samples", 5, "X_SAMPLES", self.CONFIG, 1, int) == 5

    def test_env_second(self):
        with patch.dict(os.environ, {"X_SAMPLES": "11"}):
            assert resolve_setting("samples", None, "X_SAMPLES", self.CONFIG, 1, int) == 11

    def test_blank_env_skipped(self):
        with patch.dict(os.environ, {"X_SAMPLES": "  "}):
            assert resolve_setting("samples", None, "X_SAMPLES", self.CONFIG, 1, int) == 7

    def test_default_last(self):
        with patch.dict(os.environ, {}, clear=True):
            assert resolve_setting("samples", None, "X_SAMPLES", {}, 1, int) == 1

    def test_none_not_cast(self):
        assert resolve_setting("seed", cast=int) is None

    def test_cast_error(self):
        with patch.dict(os.environ, {"X_SAMPLES": "many"}):
            with pytest.raises(ValueError) as exc_info:
                resolve_setting("samples", None, "X_SAMPLES", self.CONFIG, 1, int)
        assert "Invalid value for setting 'samples'" in str(exc_info.value)
