"""
Unit tests for output directory discovery.

Precedence: --out, run.output_dir, DHC_OUT_DIR, .env, default.
"""

import os
from pathlib import Path
from unittest.mock import patch

from delay_heat_control.config.discovery import resolve_output_dir


class TestResolveOutputDir:
    """Each source and its priority."""

    def test_default(self, isolated_output):
        """Test the default directory when nothing is configured."""
        assert resolve_output_dir() == Path("dhc-output")

    def test_explicit_wins(self, isolated_output, monkeypatch):
        """Test --out beats every other source."""
        monkeypatch.setenv("DHC_OUT_DIR", "from-env")
        assert resolve_output_dir(explicit="cli", configured="file") == Path("cli")

    def test_configured_beats_environment(self, isolated_output, monkeypatch):
        """Test run.output_dir beats the environment."""
        monkeypatch.setenv("DHC_OUT_DIR", "from-env")
        assert resolve_output_dir(configured="file") == Path("file")

    @patch.dict(os.environ, {"DHC_OUT_DIR": "from-env"}, clear=False)
    def test_environment(self, isolated_output):
        """Test DHC_OUT_DIR is read from the process environment."""
        assert resolve_output_dir() == Path("from-env")

    def test_dotenv(self, isolated_output):
        """Test DHC_OUT_DIR is read from .env in the working directory."""
        (isolated_output / ".env").write_text("DHC_OUT_DIR=from-dotenv\n")
        assert resolve_output_dir() == Path("from-dotenv")

    def test_environment_beats_dotenv(self, isolated_output, monkeypatch):
        """Test the process environment takes precedence over .env."""
        (isolated_output / ".env").write_text("DHC_OUT_DIR=from-dotenv\n")
        monkeypatch.setenv("DHC_OUT_DIR", "from-env")
        assert resolve_output_dir() == Path("from-env")

    def test_empty_dotenv_value_ignored(self, isolated_output):
        """Test an empty .env entry falls back to the default."""
        (isolated_output / ".env").write_text("DHC_OUT_DIR=\n")
        assert resolve_output_dir() == Path("dhc-output")
