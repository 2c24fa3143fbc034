"""Unit tests for configuration module."""

import logging
import os
import sys
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from opacity_attack.core.config import Settings, setup_logging


class TestSettings:
    """Tests for Settings class."""

    def test_defaults(self):
        """Test quiet logging and the oracle guards by default."""
        with patch.dict(os.environ, {}, clear=True):
            settings = Settings()

        assert settings.log_level == "WARNING"
        assert settings.oracle_max_nodes == 200_000
        assert settings.oracle_max_horizon == 10

    def test_log_level_from_environment(self):
        """Test OPACITY_ATTACK_LOG_LEVEL overrides the level."""
        with patch.dict(os.environ, {"OPACITY_ATTACK_LOG_LEVEL": "DEBUG"}):
            assert Settings().log_level == "DEBUG"

    @pytest.mark.parametrize(
        ("variable", "field", "value"),
        [
            ("OPACITY_ATTACK_ORACLE_MAX_NODES", "oracle_max_nodes", 1000),
            ("OPACITY_ATTACK_ORACLE_MAX_HORIZON", "oracle_max_horizon", 0),
        ],
    )
    def test_oracle_guards_from_environment(self, variable, field, value):
        """Test oracle guards are read from the environment."""
        with patch.dict(os.environ, {variable: str(value)}):
            assert getattr(Settings(), field) == value

    @pytest.mark.parametrize(
        ("variable", "value"), [("OPACITY_ATTACK_ORACLE_MAX_NODES", "0"), ("OPACITY_ATTACK_ORACLE_MAX_HORIZON", "-1")]
    )
    def test_out_of_range_guards_rejected(self, variable, value):
        """Test the node budget must be positive and the horizon cap non-negative."""
        with patch.dict(os.environ, {variable: value}):
            with pytest.raises(ValidationError):
                Settings()

    def test_unprefixed_variables_ignored(self):
        """Test variables without the OPACITY_ATTACK_ prefix are not read."""
        with patch.dict(os.environ, {"LOG_LEVEL": "DEBUG", "ORACLE_MAX_NODES": "5"}, clear=True):
            settings = Settings()

        assert settings.log_level == "WARNING"
        assert settings.oracle_max_nodes == 200_000


class TestSetupLogging:
    """Tests for setup_logging function."""

    @pytest.mark.parametrize(
        ("name", "level"), [("DEBUG", logging.DEBUG), ("warning", logging.WARNING), ("INVALID", logging.INFO)]
    )
    def test_level(self, name, level):
        """Test level names are case insensitive and unknown names mean INFO."""
        with patch("logging.basicConfig") as basic_config:
            setup_logging(name)

        assert basic_config.call_args.kwargs["level"] == level

    def test_logs_go_to_stderr(self):
        """Test records never reach stdout."""
        with patch("logging.basicConfig") as basic_config:
            setup_logging()

        assert basic_config.call_args.kwargs["stream"] is sys.stderr
